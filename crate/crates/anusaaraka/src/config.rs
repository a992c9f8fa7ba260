use std::path::PathBuf;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Mode {
    /// Language-knowledge stage only.
    #[default]
    Stage1,
    /// Stage 1 refined by the knowledge tables.
    Stage2,
    /// Stage 1 refined by a human answering prompts.
    Interactive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    /// One output line per input line.
    #[default]
    Plain,
    /// `T:` / `@H:` (/ `!E:`) blocks separated by blank lines.
    Aligned,
}

#[derive(Debug, Clone, Default)]
pub struct PipelineConfig {
    pub tables_path: PathBuf,
    /// Directory holding `frames.tsv` / `freq.tsv`. Without it stage 2
    /// decides nothing and interactive mode offers no markers.
    pub kb_path: Option<PathBuf>,
    pub mode: Mode,
    pub format: Format,
    pub trace: bool,
}
