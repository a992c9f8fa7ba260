//! Stage-1 transfer engine and stage-2 resolver for an annotated
//! intermediate-language notation.
//!
//! Stage 1 (modules [`lexicon`], [`morph`], [`transfer`], [`construction`],
//! [`notation`]) uses language data only and is total: every input sentence
//! produces output, with unknown words passed through and missing information
//! made visible as `*` placeholders or `[a|b]` ambiguity sets. Stage 2
//! ([`stage2`]) refines that output with small knowledge tables and falls back
//! to the stage-1 rendering whenever it cannot decide consistently.
//!
//! The crate is `no_std` and only needs `alloc`; reading the tables from disk
//! and driving the pipeline from a terminal live in the companion `anusaaraka`
//! crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod construction;
pub mod error;
pub mod lexicon;
pub mod morph;
pub mod notation;
pub mod pipeline;
pub mod stage2;
pub mod transfer;
mod tsv;

pub use construction::{apply_rules, apply_rules_traced, parse_rules, ConstructionRule, RuleFiring};
pub use error::{KbError, ParseError, TableError};
pub use lexicon::{
    lookup_root, lookup_tam, LexEntry, Pos, SuffixCategory, SuffixEntry, TableSet, TableSources, TamEntry, Warning,
};
pub use morph::{analyze_sentence, analyze_token, tokenize, AnalyzedToken, MorphAnalysis, SourceToken};
pub use notation::{parse_sentence, render_sentence, Punct, SenseMark};
pub use pipeline::{run_stage1, Stage1};
pub use stage2::{refines, resolve_sentence, KnowledgeBase, Resolution, Resolver};
pub use transfer::{transfer_sentence, transfer_token, AnnotatedToken, Provenance, Unit, UnitBody};
