//! Golden corpus: `T:` source lines paired with expected `@H:` stage-1
//! output.
//!
//! ```text
//! # notation-grammar: 1
//! T: vADu shkUluku vellADu.
//! @H: vaha` pAThshAlA_ko` gayA.
//! !E: he school went.
//! ```
//!
//! `#` lines are comments, except a `# notation-grammar: N` header which
//! must name a supported version. `!E:` lines are informational.

use std::fmt;
use std::time::{Duration, Instant};

use anusaaraka_core::notation::{parse_sentence, render_sentence};
use anusaaraka_core::{run_stage1, ParseError, TableSet};
use thiserror::Error;

use crate::run::NOTATION_GRAMMAR;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusPair {
    /// Line number of the `T:` line.
    pub line: usize,
    pub source: String,
    pub expected: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("corpus line {line}: {reason}")]
    MalformedCorpus { line: usize, reason: String },
    #[error("corpus line {line}: expected output is not valid notation: {source}")]
    BadNotation { line: usize, source: ParseError },
    #[error("corpus uses notation grammar {found}, this build reads {NOTATION_GRAMMAR}")]
    UnsupportedGrammar { found: String },
}

fn malformed(line: usize, reason: &str) -> CorpusError {
    CorpusError::MalformedCorpus { line, reason: reason.to_owned() }
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusPair>, CorpusError> {
    let mut pairs = Vec::new();
    let mut pending: Option<(usize, String)> = None;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.trim_end();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(version) = comment.trim().strip_prefix("notation-grammar:") {
                let version = version.trim();
                if version.parse::<u32>() != Ok(NOTATION_GRAMMAR) {
                    return Err(CorpusError::UnsupportedGrammar { found: version.to_owned() });
                }
            }
            continue;
        }
        if line.trim().is_empty() || line.starts_with("!E:") {
            continue;
        }
        if let Some(source) = line.strip_prefix("T:") {
            if pending.is_some() {
                return Err(malformed(n, "`T:` line without a preceding `@H:` line"));
            }
            pending = Some((n, source.trim().to_owned()));
        } else if let Some(expected) = line.strip_prefix("@H:") {
            let Some((tline, source)) = pending.take() else {
                return Err(malformed(n, "`@H:` line without a preceding `T:` line"));
            };
            let expected = expected.trim().to_owned();
            parse_sentence(&expected).map_err(|source| CorpusError::BadNotation { line: n, source })?;
            pairs.push(CorpusPair { line: tline, source, expected });
        } else {
            return Err(malformed(n, "expected `T:`, `@H:`, `!E:` or a comment"));
        }
    }
    if let Some((n, _)) = pending {
        return Err(malformed(n, "`T:` line without a following `@H:` line"));
    }
    Ok(pairs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusResult {
    pub pair: CorpusPair,
    pub actual: String,
}

impl CorpusResult {
    pub fn passed(&self) -> bool {
        self.actual == self.pair.expected
    }
}

#[derive(Debug, Clone)]
pub struct CorpusReport {
    pub results: Vec<CorpusResult>,
    pub elapsed: Duration,
}

impl CorpusReport {
    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.results.len()
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            if r.passed() {
                writeln!(f, "PASS line {}: {}", r.pair.line, r.pair.source)?;
            } else {
                writeln!(f, "FAIL line {}: {}", r.pair.line, r.pair.source)?;
                writeln!(f, "  expected: {}", r.pair.expected)?;
                writeln!(f, "  actual:   {}", r.actual)?;
            }
        }
        write!(f, "{}/{} passed", self.passed(), self.results.len())
    }
}

pub fn corpus_check(tables: &TableSet, pairs: &[CorpusPair]) -> CorpusReport {
    let start = Instant::now();
    let results = pairs
        .iter()
        .map(|pair| CorpusResult {
            pair: pair.clone(),
            actual: render_sentence(&run_stage1(&pair.source, tables).tokens),
        })
        .collect();
    CorpusReport { results, elapsed: start.elapsed() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_skips_glosses() {
        let pairs =
            parse_corpus("# notation-grammar: 1\n# note\n\nT: a b\n@H: x y\n!E: p q\n\nT: c\n@H: !c\n").unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[1], CorpusPair { line: 8, source: "c".into(), expected: "!c".into() });
    }

    #[test]
    fn rejects_structure_errors() {
        assert_eq!(parse_corpus("@H: x\n").unwrap_err(), malformed(1, "`@H:` line without a preceding `T:` line"));
        assert!(matches!(parse_corpus("T: a\nT: b\n"), Err(CorpusError::MalformedCorpus { line: 2, .. })));
        assert!(matches!(parse_corpus("T: a\n"), Err(CorpusError::MalformedCorpus { line: 1, .. })));
        assert!(matches!(parse_corpus("hello\n"), Err(CorpusError::MalformedCorpus { line: 1, .. })));
        assert!(matches!(parse_corpus("T: a\n@H: x__y\n"), Err(CorpusError::BadNotation { line: 2, .. })));
    }

    #[test]
    fn rejects_other_grammar_versions() {
        assert_eq!(
            parse_corpus("# notation-grammar: 2\n").unwrap_err(),
            CorpusError::UnsupportedGrammar { found: "2".into() }
        );
    }
}
