//! Batch driver: one sentence per input line.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use anusaaraka_core::morph::AnalyzedToken;
use anusaaraka_core::notation::render_sentence;
use anusaaraka_core::{lookup_root, resolve_sentence, run_stage1, KnowledgeBase, MorphAnalysis, TableSet};
use rayon::prelude::*;

use crate::config::{Format, Mode, PipelineConfig};

/// Version of the notation grammar written into aligned output and corpus
/// headers.
pub const NOTATION_GRAMMAR: u32 = 1;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunSummary {
    pub sentences: usize,
    pub unknown_tokens: usize,
    pub stage2_failures: usize,
}

struct Processed {
    output: String,
    diagnostics: String,
    unknown_tokens: usize,
    stage2_failed: bool,
}

/// Translates every line of `input`, writing results to `out` in input
/// order and diagnostics (unknown words, stage-2 decisions and failures,
/// traces) to `diag`. Sentences are processed in parallel.
///
/// Interactive mode needs an answer stream and goes through
/// [`crate::interactive`] instead; here it behaves like stage 1.
pub fn run_pipeline(
    config: &PipelineConfig,
    tables: &TableSet,
    kb: &KnowledgeBase,
    input: impl BufRead,
    out: &mut impl Write,
    diag: &mut impl Write,
) -> io::Result<RunSummary> {
    let lines: Vec<String> = input.lines().collect::<io::Result<_>>()?;
    let processed: Vec<Processed> =
        lines.par_iter().enumerate().map(|(i, line)| process_line(config, tables, kb, i + 1, line)).collect();

    if config.format == Format::Aligned {
        writeln!(out, "# notation-grammar: {NOTATION_GRAMMAR}")?;
    }
    let mut summary = RunSummary::default();
    for p in &processed {
        out.write_all(p.output.as_bytes())?;
        diag.write_all(p.diagnostics.as_bytes())?;
        summary.sentences += 1;
        summary.unknown_tokens += p.unknown_tokens;
        summary.stage2_failures += usize::from(p.stage2_failed);
    }
    out.flush()?;
    Ok(summary)
}

fn process_line(config: &PipelineConfig, tables: &TableSet, kb: &KnowledgeBase, n: usize, line: &str) -> Processed {
    let mut diagnostics = String::new();
    let stage1 = run_stage1(line, tables);

    let mut unknown_tokens = 0;
    for a in &stage1.analyses {
        if a.chosen.is_unknown {
            unknown_tokens += 1;
            let _ = writeln!(diagnostics, "line {n}: unknown token `{}` at {}", a.token.surface, a.token.index);
        }
    }
    if config.trace {
        trace(&mut diagnostics, n, &stage1.analyses);
        for f in &stage1.firings {
            let _ = writeln!(diagnostics, "line {n}: rule {} matched tokens {}..{}", f.rule, f.start, f.start + f.len);
        }
    }

    let mut stage2_failed = false;
    let tokens = if config.mode == Mode::Stage2 {
        let (resolved, res) = resolve_sentence(&stage1.tokens, kb);
        for d in &res.decisions {
            let _ = writeln!(
                diagnostics,
                "line {n}: stage2 {} token {} unit {} -> {} ({})",
                d.kind, d.token, d.unit, d.chosen, d.rationale
            );
        }
        if res.failed {
            stage2_failed = true;
            let _ = writeln!(
                diagnostics,
                "line {n}: stage2 failed: {}; stage-1 output kept",
                res.failure.as_deref().unwrap_or("unknown error")
            );
        }
        resolved
    } else {
        stage1.tokens
    };
    let rendered = render_sentence(&tokens);

    let output = match config.format {
        Format::Plain => format!("{rendered}\n"),
        Format::Aligned if line.trim().is_empty() => String::new(),
        Format::Aligned => {
            let mut block = format!("T: {}\n@H: {rendered}\n", line.trim());
            if tables.has_eng_glosses() {
                let _ = writeln!(block, "!E: {}", english_gloss(tables, &stage1.analyses));
            }
            block.push('\n');
            block
        }
    };
    Processed { output, diagnostics, unknown_tokens, stage2_failed }
}

/// Word-by-word English gloss of the chosen analyses; words without a
/// gloss appear as themselves.
pub fn english_gloss(tables: &TableSet, analyses: &[AnalyzedToken]) -> String {
    let words: Vec<String> = analyses
        .iter()
        .map(|a| {
            let m = &a.chosen;
            let gloss = if m.is_unknown {
                None
            } else {
                lookup_root(tables, &m.root, m.pos).first().and_then(|e| e.eng_gloss.clone())
            };
            let mut w = gloss.unwrap_or_else(|| m.token.surface.clone());
            if let Some(p) = m.token.trailing_punct {
                w.push(p.as_char());
            }
            w
        })
        .collect();
    words.join(" ")
}

fn describe(a: &MorphAnalysis) -> String {
    if a.is_unknown {
        return format!("{} (unknown)", a.root);
    }
    let mut s = a.root.clone();
    if let Some(pos) = a.pos {
        let _ = write!(s, "/{pos}");
    }
    for suffix in &a.suffixes {
        let _ = write!(s, " +{}({}:{})", suffix.surface, suffix.category, suffix.label);
    }
    if let Some(gnp) = &a.gnp {
        let _ = write!(s, " {{{gnp}}}");
    }
    s
}

fn trace(diagnostics: &mut String, n: usize, analyses: &[AnalyzedToken]) {
    for a in analyses {
        let _ = writeln!(diagnostics, "line {n}: [{}] {} -> {}", a.token.index, a.token.surface, describe(&a.chosen));
        for alt in &a.alternatives {
            let _ = writeln!(diagnostics, "line {n}:     alt {}", describe(alt));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::load::{load_kb, load_tables};
    use std::path::{Path, PathBuf};

    fn fixture() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/te-hi")
    }

    fn run(config: &PipelineConfig, input: &str) -> (String, String) {
        let tables = load_tables(&config.tables_path).unwrap();
        let kb = config.kb_path.as_ref().map(|p| load_kb(p).unwrap()).unwrap_or_default();
        let (mut out, mut diag) = (Vec::new(), Vec::new());
        run_pipeline(config, &tables, &kb, input.as_bytes(), &mut out, &mut diag).unwrap();
        (String::from_utf8(out).unwrap(), String::from_utf8(diag).unwrap())
    }

    fn config(mode: Mode, format: Format) -> PipelineConfig {
        PipelineConfig { tables_path: fixture(), kb_path: Some(fixture().join("kb")), mode, format, trace: false }
    }

    #[test]
    fn stage1_plain() {
        let (out, _) = run(&config(Mode::Stage1, Format::Plain), "mlru pustakaM caduvutunnArA?\n");
        assert_eq!(out, "Apa pustaka paDha_raHA_[HE|thA]_kyA{23_ba.}?\n");
    }

    #[test]
    fn empty_input() {
        let (out, diag) = run(&config(Mode::Stage1, Format::Plain), "");
        assert_eq!((out.as_str(), diag.as_str()), ("", ""));
    }

    #[test]
    fn stage2_records_decisions() {
        let (out, diag) = run(&config(Mode::Stage2, Format::Plain), "pani cesina rAmmUrti maMcivADu.\n");
        assert_eq!(out, "kAma kiyA_HE_jo_ne_vaHa rAmmUrti bhalA_AdamI.\n");
        assert_eq!(diag, "line 1: stage2 fill_star token 1 unit 2 -> ne (doer of transitive participial)\n");
    }

    #[test]
    fn stage2_failure_is_diagnosed_not_fatal() {
        let line = "UriniMci oVccina nalini mA ceVlleVlu.\n";
        let (stage1, _) = run(&config(Mode::Stage1, Format::Plain), line);
        let (stage2, diag) = run(&config(Mode::Stage2, Format::Plain), line);
        assert_eq!(stage1, stage2);
        assert!(diag.contains("line 1: stage2 failed: verb-frame: head noun `bImArI_ko`"), "{diag}");
    }

    #[test]
    fn aligned_blocks() {
        let (out, _) = run(&config(Mode::Stage1, Format::Aligned), "vADu shkUluku vellADu.\n\n");
        assert_eq!(
            out,
            "# notation-grammar: 1\nT: vADu shkUluku vellADu.\n@H: vaha` pAThshAlA_ko` gayA.\n!E: he school went.\n\n"
        );
    }

    #[test]
    fn unknowns_and_trace_go_to_diagnostics() {
        let mut c = config(Mode::Stage1, Format::Plain);
        c.trace = true;
        let (out, diag) = run(&c, "xyzzy nalini\n\nvADu\n");
        assert_eq!(out, "!xyzzy bImArI_ko\n\nvaha`\n");
        assert!(diag.contains("line 1: unknown token `xyzzy` at 0"));
        assert!(diag.contains("line 1: [1] nalini -> nali/noun +ni(case:acc)"));
        assert!(diag.contains("line 1:     alt nalini/noun"));
        assert!(diag.contains("line 3: [0] vADu -> vADu/pronoun"));
    }
}
