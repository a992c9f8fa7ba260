use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anusaaraka::{
    corpus_check, interactive_session, load_kb, load_tables, parse_corpus, run_pipeline, Format, Mode, PipelineConfig,
};
use anusaaraka_core::KnowledgeBase;
use anyhow::{Context, Result};
use clap::Parser;

/// Translate sentences into the annotated intermediate notation.
///
/// Sentences come from positional arguments, `--input`, or stdin (one per
/// line). Diagnostics go to stderr.
#[derive(Debug, Parser)]
#[command(version)]
struct Cli {
    /// Directory with roots.tsv, suffixes.tsv, tam.tsv, rules.txt (and
    /// optionally forms.tsv).
    #[arg(long)]
    tables: PathBuf,
    /// Directory with frames.tsv / freq.tsv for stage 2 and interactive mode.
    #[arg(long)]
    kb: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Print analyses, alternatives and rule firings to stderr.
    #[arg(long)]
    trace: bool,
    /// Check a golden corpus instead of translating; exits 1 on any FAIL.
    #[arg(long, conflicts_with_all = ["input", "sentences"])]
    corpus: Option<PathBuf>,
    /// Read sentences from this file. In interactive mode answers are then
    /// read from stdin.
    #[arg(long, conflicts_with = "sentences")]
    input: Option<PathBuf>,
    sentences: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let tables = load_tables(&cli.tables)?;
    for w in tables.warnings() {
        eprintln!("warning: {w}");
    }
    let kb = match &cli.kb {
        Some(dir) => load_kb(dir)?,
        None => KnowledgeBase::default(),
    };

    if let Some(path) = &cli.corpus {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let pairs = parse_corpus(&text)?;
        let report = corpus_check(&tables, &pairs);
        println!("{report}");
        return Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) });
    }

    let input: Box<dyn BufRead> = match (&cli.input, cli.sentences.is_empty()) {
        (Some(path), _) => {
            Box::new(BufReader::new(File::open(path).with_context(|| format!("reading {}", path.display()))?))
        }
        (None, false) => Box::new(io::Cursor::new(cli.sentences.join("\n"))),
        (None, true) => Box::new(io::stdin().lock()),
    };

    let stdout = io::stdout();
    let mut out = stdout.lock();
    if cli.mode == Mode::Interactive {
        if cli.input.is_none() && cli.sentences.is_empty() {
            anyhow::bail!("interactive mode reads answers from stdin; give sentences as arguments or with --input");
        }
        let mut answers = io::stdin().lock();
        let mut prompt = io::stderr();
        for line in input.lines() {
            let line = line?;
            let outcome = interactive_session(&tables, &kb, &line, &mut answers, &mut prompt)?;
            writeln!(out, "{}", outcome.rendered())?;
        }
        return Ok(ExitCode::SUCCESS);
    }

    let config = PipelineConfig {
        tables_path: cli.tables,
        kb_path: cli.kb,
        mode: cli.mode,
        format: cli.format,
        trace: cli.trace,
    };
    run_pipeline(&config, &tables, &kb, input, &mut out, &mut io::stderr().lock())?;
    Ok(ExitCode::SUCCESS)
}
