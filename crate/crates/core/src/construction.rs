//! Declarative sentence-level construction rules.
//!
//! One rule per line of `rules.txt`:
//!
//! ```text
//! name : PRED+ => EMIT+ @priority
//! PRED ::= TEST ('&' TEST)*          one per pattern slot
//! TEST ::= pos=X | cat=C | lex=ROOT | suf=LABEL | neg
//! EMIT ::= $i | ins(unit[,star]) | att($i, unit+)
//! ```
//!
//! Predicates test the source-side analysis of a token, so tokens inserted
//! by a rule never match. A rule must keep every slot exactly once and in
//! order: constructions add material, they never drop or reorder it.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::TableError;
use crate::lexicon::{Pos, SuffixCategory};
use crate::morph::MorphAnalysis;
use crate::notation;
use crate::transfer::{AnnotatedToken, Origin, Provenance, Unit};

/// Suffix label that marks a negated form for the `neg` predicate.
pub const NEGATION_LABEL: &str = "neg";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Predicate {
    Pos(Pos),
    Cat(SuffixCategory),
    Lex(String),
    Suffix(String),
    Neg,
}

impl Predicate {
    pub fn matches(&self, a: &MorphAnalysis) -> bool {
        match self {
            Predicate::Pos(p) => a.pos == Some(*p),
            Predicate::Cat(c) => a.has_category(*c),
            Predicate::Lex(w) => !a.is_unknown && a.root == *w,
            Predicate::Suffix(l) => a.has_label(l),
            Predicate::Neg => a.has_label(NEGATION_LABEL),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Emit {
    Keep(usize),
    Insert(Unit),
    Attach(usize, Vec<Unit>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionRule {
    pub name: String,
    /// Conjunction of tests per slot.
    pub pattern: Vec<Vec<Predicate>>,
    pub rewrite: Vec<Emit>,
    pub priority: i32,
}

impl ConstructionRule {
    fn matches_at(&self, window: &[(&AnnotatedToken, &MorphAnalysis)]) -> bool {
        window.len() == self.pattern.len()
            && self.pattern.iter().zip(window).all(|(slot, (_, a))| slot.iter().all(|p| p.matches(a)))
    }
}

/// A rule application: `rule` matched the input tokens `start..start + len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleFiring {
    pub rule: String,
    pub start: usize,
    pub len: usize,
}

pub fn parse_rules(text: &str) -> Result<Vec<ConstructionRule>, TableError> {
    let mut rules: Vec<ConstructionRule> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let rule = parse_rule(i + 1, line)?;
        if rules.iter().any(|r| r.name == rule.name) {
            return Err(TableError::DuplicateKey { file: "rules.txt".to_owned(), key: rule.name });
        }
        rules.push(rule);
    }
    Ok(rules)
}

fn malformed(line: usize, reason: impl Into<String>) -> TableError {
    TableError::MalformedRow { file: "rules.txt".to_owned(), line, reason: reason.into() }
}

fn reference(line: usize, reason: impl Into<String>) -> TableError {
    TableError::RuleReference { line, reason: reason.into() }
}

fn parse_rule(line: usize, text: &str) -> Result<ConstructionRule, TableError> {
    let (name, rest) = text.split_once(':').ok_or_else(|| malformed(line, "missing `:` after rule name"))?;
    let name = name.trim();
    if name.is_empty() || name.contains(char::is_whitespace) {
        return Err(malformed(line, "rule name must be one word"));
    }
    let (preds, rest) = rest.split_once("=>").ok_or_else(|| malformed(line, "missing `=>`"))?;
    let (emits, priority) = rest.rsplit_once('@').ok_or_else(|| malformed(line, "missing `@priority`"))?;
    let priority: i32 =
        priority.trim().parse().map_err(|_| malformed(line, format!("bad priority `{}`", priority.trim())))?;

    let pattern = preds
        .split_whitespace()
        .map(|slot| slot.split('&').map(|t| parse_test(line, t)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if pattern.is_empty() {
        return Err(malformed(line, "empty pattern"));
    }
    let rewrite = split_emits(emits).into_iter().map(|e| parse_emit(line, e)).collect::<Result<Vec<_>, _>>()?;
    if rewrite.is_empty() {
        return Err(malformed(line, "empty rewrite"));
    }

    let slots = pattern.len();
    let mut kept = Vec::new();
    for emit in &rewrite {
        match emit {
            Emit::Keep(i) | Emit::Attach(i, _) if *i >= slots => {
                return Err(reference(line, format!("${i} but the pattern has {slots} slot(s)")));
            }
            Emit::Keep(i) => kept.push(*i),
            _ => {}
        }
    }
    if kept != (0..slots).collect::<Vec<_>>() {
        return Err(reference(line, "every slot must be kept exactly once, in order"));
    }
    Ok(ConstructionRule { name: name.to_owned(), pattern, rewrite, priority })
}

fn parse_test(line: usize, test: &str) -> Result<Predicate, TableError> {
    if test == "neg" {
        return Ok(Predicate::Neg);
    }
    let (key, value) = test
        .split_once('=')
        .filter(|(_, v)| !v.is_empty())
        .ok_or_else(|| malformed(line, format!("bad predicate `{test}`")))?;
    match key {
        "pos" => value.parse().map(Predicate::Pos).map_err(|_| malformed(line, format!("unknown pos `{value}`"))),
        "cat" => value.parse().map(Predicate::Cat).map_err(|_| malformed(line, format!("unknown category `{value}`"))),
        "lex" => Ok(Predicate::Lex(value.to_owned())),
        "suf" => Ok(Predicate::Suffix(value.to_owned())),
        _ => Err(malformed(line, format!("unknown predicate `{key}`"))),
    }
}

/// Splits on whitespace outside parentheses.
fn split_emits(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = None;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            c if c.is_whitespace() && depth == 0 => {
                if let Some(s) = start.take() {
                    out.push(&text[s..i]);
                }
                continue;
            }
            _ => {}
        }
        start.get_or_insert(i);
    }
    if let Some(s) = start {
        out.push(&text[s..]);
    }
    out
}

fn parse_slot(line: usize, s: &str) -> Result<usize, TableError> {
    s.trim()
        .strip_prefix('$')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| malformed(line, format!("expected `$i`, found `{s}`")))
}

fn parse_emit_units(line: usize, s: &str) -> Result<Vec<Unit>, TableError> {
    notation::parse_units(s.trim())
        .map(|units| units.into_iter().map(|u| u.with_origin(Origin::Construction)).collect())
        .map_err(|e| malformed(line, format!("unit `{}`: {e}", s.trim())))
}

fn parse_emit(line: usize, emit: &str) -> Result<Emit, TableError> {
    if emit.starts_with('$') {
        return parse_slot(line, emit).map(Emit::Keep);
    }
    let (op, args) = emit
        .strip_suffix(')')
        .and_then(|e| e.split_once('('))
        .ok_or_else(|| malformed(line, format!("bad emit `{emit}`")))?;
    let args: Vec<&str> = args.split(',').collect();
    match op {
        "ins" => {
            let mut units = parse_emit_units(line, args[0])?;
            if units.len() != 1 {
                return Err(malformed(line, "ins() takes a single unit"));
            }
            let mut unit = units.remove(0);
            match args.get(1).map(|s| s.trim()) {
                None => {}
                Some("star") => unit.star = true,
                Some(other) => return Err(malformed(line, format!("unknown ins() flag `{other}`"))),
            }
            if args.len() > 2 {
                return Err(malformed(line, "too many ins() arguments"));
            }
            Ok(Emit::Insert(unit))
        }
        "att" => {
            if args.len() < 2 {
                return Err(malformed(line, "att() needs a slot and at least one unit"));
            }
            let slot = parse_slot(line, args[0])?;
            let mut units = Vec::new();
            for a in &args[1..] {
                units.extend(parse_emit_units(line, a)?);
            }
            Ok(Emit::Attach(slot, units))
        }
        _ => Err(malformed(line, format!("unknown emit `{op}`"))),
    }
}

pub fn apply_rules(
    tokens: &[AnnotatedToken],
    analyses: &[MorphAnalysis],
    rules: &[ConstructionRule],
) -> Vec<AnnotatedToken> {
    apply_rules_traced(tokens, analyses, rules).0
}

/// Single left-to-right pass. At each position the highest-priority rule
/// whose pattern matches there fires (file order breaks ties) and scanning
/// resumes after the matched window. `analyses[i]` is the analysis of the
/// token with source index `i`.
///
/// Tokens that were inserted, or already matched by some rule, are not
/// eligible, so applying the rules again changes nothing.
pub fn apply_rules_traced(
    tokens: &[AnnotatedToken],
    analyses: &[MorphAnalysis],
    rules: &[ConstructionRule],
) -> (Vec<AnnotatedToken>, Vec<RuleFiring>) {
    let mut ordered: Vec<&ConstructionRule> = rules.iter().collect();
    ordered.sort_by_key(|r| core::cmp::Reverse(r.priority));

    let eligible: Vec<Option<&MorphAnalysis>> = tokens
        .iter()
        .map(|t| {
            if t.construction.is_some() {
                return None;
            }
            t.source_index().and_then(|i| analyses.get(i))
        })
        .collect();

    let mut out = Vec::with_capacity(tokens.len());
    let mut firings = Vec::new();
    let mut i = 0;
    'scan: while i < tokens.len() {
        for rule in &ordered {
            let k = rule.pattern.len();
            if i + k > tokens.len() {
                continue;
            }
            let window: Option<Vec<(&AnnotatedToken, &MorphAnalysis)>> =
                (i..i + k).map(|j| eligible[j].map(|a| (&tokens[j], a))).collect();
            let Some(window) = window else { continue };
            if !rule.matches_at(&window) {
                continue;
            }
            emit(rule, &tokens[i..i + k], &mut out);
            firings.push(RuleFiring { rule: rule.name.clone(), start: i, len: k });
            i += k;
            continue 'scan;
        }
        out.push(tokens[i].clone());
        i += 1;
    }
    (out, firings)
}

fn emit(rule: &ConstructionRule, window: &[AnnotatedToken], out: &mut Vec<AnnotatedToken>) {
    let mut slots: Vec<AnnotatedToken> = window
        .iter()
        .cloned()
        .map(|mut t| {
            t.construction = Some(rule.name.clone());
            t
        })
        .collect();
    for e in &rule.rewrite {
        if let Emit::Attach(s, units) = e {
            slots[*s].units.extend(units.iter().cloned());
        }
    }
    for e in &rule.rewrite {
        match e {
            Emit::Keep(s) => out.push(slots[*s].clone()),
            Emit::Insert(unit) => out.push(AnnotatedToken {
                units: alloc::vec![unit.clone()],
                annotation: None,
                trailing_punct: None,
                provenance: Provenance::Inserted,
                unknown: false,
                construction: Some(rule.name.to_string()),
            }),
            Emit::Attach(..) => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parses_fixture_rules() {
        let rules = parse_rules(
            "# comment\nrel-clause : cat=participial pos=noun => $0 att($0, jo*, vaHa) $1 @20\n\
             comp-neg:suf=Alani neg=>$0   att($0,EsA) $1@10\n",
        )
        .unwrap();
        assert_eq!(rules.len(), 2);
        let rel = &rules[0];
        assert_eq!(
            rel.pattern,
            vec![vec![Predicate::Cat(SuffixCategory::Participial)], vec![Predicate::Pos(Pos::Noun)]]
        );
        assert_eq!(rel.priority, 20);
        match &rel.rewrite[1] {
            Emit::Attach(0, units) => {
                assert_eq!(units.len(), 2);
                assert!(units[0].star && !units[1].star);
                assert_eq!(units[0].origin, Origin::Construction);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(rules[1].pattern[1], vec![Predicate::Neg]);
    }

    #[test]
    fn conjunction_and_insert() {
        let rules = parse_rules("r : pos=verb&neg lex=x => ins(jo,star) $0 ins(vaHa) $1 @1").unwrap();
        assert_eq!(rules[0].pattern[0].len(), 2);
        assert!(matches!(&rules[0].rewrite[0], Emit::Insert(u) if u.star));
    }

    #[test]
    fn dangling_or_dropped_slots_are_rejected() {
        let dangling = parse_rules("r : pos=noun => $0 att($1, x) @1");
        assert!(matches!(dangling, Err(TableError::RuleReference { line: 1, .. })));
        let dropped = parse_rules("r : pos=noun pos=verb => $0 @1");
        assert!(matches!(dropped, Err(TableError::RuleReference { .. })));
        let reordered = parse_rules("r : pos=noun pos=verb => $1 $0 @1");
        assert!(matches!(reordered, Err(TableError::RuleReference { .. })));
        let twice = parse_rules("r : pos=noun => $0 $0 @1");
        assert!(matches!(twice, Err(TableError::RuleReference { .. })));
    }

    #[test]
    fn syntax_errors() {
        for bad in [
            "r pos=noun => $0 @1",
            "r : pos=noun $0 @1",
            "r : pos=noun => $0",
            "r : pos=thing => $0 @1",
            "r : => $0 @1",
            "r : pos=noun => $0 foo(x) @1",
            "r : pos=noun => $0 ins(a_b) @1",
        ] {
            assert!(matches!(parse_rules(bad), Err(TableError::MalformedRow { .. })), "{bad}");
        }
        assert!(matches!(parse_rules("r : neg => $0 @1\nr : neg => $0 @2"), Err(TableError::DuplicateKey { .. })));
    }
}
