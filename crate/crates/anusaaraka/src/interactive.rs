//! A reader resolves stage-1 placeholders and ambiguity sets by answering
//! prompts, one per target.

use std::io::{self, BufRead, Write};

use anusaaraka_core::notation::{render_sentence, render_single};
use anusaaraka_core::stage2::{apply_decisions, targets, Decision, DecisionKind, Target};
use anusaaraka_core::{refines, run_stage1, AnnotatedToken, KnowledgeBase, TableSet};

const SKIP: &str = "skip";
const KEEP_BOTH: &str = "keep both";

#[derive(Debug, Clone)]
pub struct SessionOutcome {
    /// Stage-1 output before any answers.
    pub stage1: Vec<AnnotatedToken>,
    pub tokens: Vec<AnnotatedToken>,
    pub decisions: Vec<Decision>,
    /// Targets left open by "skip", "keep both" or end of input.
    pub unresolved: usize,
}

impl SessionOutcome {
    pub fn rendered(&self) -> String {
        render_sentence(&self.tokens)
    }

    pub fn refines_stage1(&self) -> bool {
        refines(&self.tokens, &self.stage1)
    }
}

fn options(target: &Target, kb: &KnowledgeBase) -> Vec<String> {
    let (mut opts, last) = match target.kind {
        DecisionKind::FillStar => (kb.markers.clone(), SKIP),
        DecisionKind::ChooseAlt => (target.members.clone(), KEEP_BOTH),
    };
    opts.push(last.to_owned());
    opts
}

fn pick(answer: &str, opts: &[String]) -> Option<usize> {
    let answer = answer.trim();
    if let Ok(n) = answer.parse::<usize>() {
        return (1..=opts.len()).contains(&n).then(|| n - 1);
    }
    opts.iter().position(|o| o == answer)
}

/// Runs stage 1 on `sentence`, then asks about each target in order,
/// reading one answer per line. An answer is an option number or its text;
/// anything else re-prompts. End of input leaves remaining targets open.
pub fn interactive_session(
    tables: &TableSet,
    kb: &KnowledgeBase,
    sentence: &str,
    answers: &mut impl BufRead,
    prompt: &mut impl Write,
) -> io::Result<SessionOutcome> {
    let stage1 = run_stage1(sentence, tables).tokens;
    let all = targets(&stage1);
    if !all.is_empty() {
        writeln!(prompt, "{}", render_sentence(&stage1))?;
    }

    let mut decisions = Vec::new();
    let mut line = String::new();
    let mut exhausted = false;
    for target in &all {
        if exhausted {
            break;
        }
        let opts = options(target, kb);
        let what = match target.kind {
            DecisionKind::FillStar => "fill *",
            DecisionKind::ChooseAlt => "choose",
        };
        loop {
            writeln!(prompt, "word {} `{}`: {what}", target.token + 1, render_single(&stage1[target.token]))?;
            for (i, o) in opts.iter().enumerate() {
                writeln!(prompt, "  {}) {o}", i + 1)?;
            }
            write!(prompt, "> ")?;
            prompt.flush()?;
            line.clear();
            if answers.read_line(&mut line)? == 0 {
                writeln!(prompt)?;
                exhausted = true;
                break;
            }
            match pick(&line, &opts) {
                Some(i) if i + 1 == opts.len() => break,
                Some(i) => {
                    decisions.push(Decision {
                        token: target.token,
                        unit: target.unit,
                        kind: target.kind,
                        chosen: opts[i].clone(),
                        rationale: "reader".to_owned(),
                    });
                    break;
                }
                None => writeln!(prompt, "not an option: {}", line.trim())?,
            }
        }
    }

    let tokens = apply_decisions(&stage1, &decisions).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e.0))?;
    debug_assert!(refines(&tokens, &stage1));
    let unresolved = all.len() - decisions.len();
    Ok(SessionOutcome { stage1, tokens, decisions, unresolved })
}
