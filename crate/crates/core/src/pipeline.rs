//! Stage-1 driver for one sentence.

use alloc::vec::Vec;

use crate::construction::{apply_rules_traced, RuleFiring};
use crate::lexicon::TableSet;
use crate::morph::{analyze_sentence, tokenize, AnalyzedToken, MorphAnalysis};
use crate::transfer::{transfer_sentence, AnnotatedToken};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage1 {
    pub analyses: Vec<AnalyzedToken>,
    /// Token-by-token transfer, before construction rules.
    pub transferred: Vec<AnnotatedToken>,
    pub tokens: Vec<AnnotatedToken>,
    pub firings: Vec<RuleFiring>,
}

pub fn run_stage1(line: &str, tables: &TableSet) -> Stage1 {
    let source = tokenize(line);
    let analyses = analyze_sentence(&source, tables);
    let chosen: Vec<MorphAnalysis> = analyses.iter().map(|a| a.chosen.clone()).collect();
    let transferred = transfer_sentence(&chosen, tables);
    let (tokens, firings) = apply_rules_traced(&transferred, &chosen, tables.rules());
    Stage1 { analyses, transferred, tokens, firings }
}
