//! Filesystem, terminal and corpus tooling around [`anusaaraka_core`].
//!
//! - [`load`]: read the resource tables and stage-2 knowledge tables from
//!   directories.
//! - [`run`]: batch translation of a line stream in stage-1 or stage-2 mode,
//!   plain or aligned (`T:` / `@H:` / `!E:` blocks).
//! - [`interactive`]: a reader resolves placeholders and ambiguity sets.
//! - [`corpus`]: golden-file regression over `T:` / `@H:` pairs.

pub mod config;
pub mod corpus;
pub mod interactive;
pub mod load;
pub mod run;

pub use anusaaraka_core as engine;
pub use config::{Format, Mode, PipelineConfig};
pub use corpus::{corpus_check, parse_corpus, CorpusError, CorpusPair, CorpusReport};
pub use interactive::{interactive_session, SessionOutcome};
pub use load::{load_kb, load_tables, LoadError};
pub use run::{run_pipeline, RunSummary};
