//! Stage 2: knowledge-based refinement of stage-1 output.
//!
//! A [`Resolver`] runs pluggable [`Strategy`]s that propose [`Decision`]s:
//! fill a `*` with a case marker, or pick one member of an `[a|b]` set.
//! Decisions are applied by [`apply_decisions`], the single refinement path
//! also used for interactive choices. Anything that goes wrong (a strategy
//! error, an invalid decision, a result that does not [`refines`] its input)
//! makes the whole sentence fall back to its stage-1 form with
//! `failed = true`.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::KbError;
use crate::notation;
use crate::transfer::{AnnotatedToken, Origin, Unit, UnitBody};
use crate::tsv;

/// Case-marker frame of a target verb. `None` markers mean the role takes
/// no marker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbFrame {
    pub tgt_verb_root: String,
    pub doer_marker: Option<String>,
    pub object_marker: Option<String>,
    pub instrument_marker: Option<String>,
    /// Inflected or fused forms under which the verb shows up in stage-1
    /// output (`kiyA` for `kara`).
    pub forms: Vec<String>,
}

impl VerbFrame {
    pub fn matches(&self, lexeme: &str) -> bool {
        self.tgt_verb_root == lexeme || self.forms.iter().any(|f| f == lexeme)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    /// Closed marker vocabulary, in declaration order.
    pub markers: Vec<String>,
    pub frames: Vec<VerbFrame>,
    pub freq: BTreeMap<String, u64>,
}

impl KnowledgeBase {
    /// Parses `frames.tsv` and `freq.tsv`; either may be absent.
    ///
    /// `frames.tsv` may declare its marker vocabulary with a
    /// `@markers<TAB>ne<TAB>ko...` line; otherwise the vocabulary is every
    /// marker its rows use.
    pub fn parse(frames: Option<&str>, freq: Option<&str>) -> Result<KnowledgeBase, KbError> {
        let mut kb = KnowledgeBase::default();
        let mut declared: Option<Vec<String>> = None;
        if let Some(text) = frames {
            for (line, f) in tsv::rows(text) {
                if f[0] == "@markers" {
                    let list: Vec<String> = f[1..].iter().filter(|m| !m.is_empty()).map(|m| m.to_string()).collect();
                    for m in &list {
                        if !notation::is_lexeme(m) {
                            return Err(kb_malformed("frames.tsv", line, format!("bad marker `{m}`")));
                        }
                    }
                    declared = Some(list);
                    continue;
                }
                if f.len() < 4 || f.len() > 5 {
                    return Err(kb_malformed("frames.tsv", line, "expected 4 or 5 columns"));
                }
                if !notation::is_lexeme(f[0]) {
                    return Err(kb_malformed("frames.tsv", line, "bad verb root"));
                }
                let mut marker = |cell: &str| -> Result<Option<String>, KbError> {
                    if cell.is_empty() || cell == "-" {
                        return Ok(None);
                    }
                    match &declared {
                        Some(list) if !list.iter().any(|m| m == cell) => {
                            Err(KbError::UndeclaredMarker { line, marker: cell.to_owned() })
                        }
                        Some(_) => Ok(Some(cell.to_owned())),
                        None if notation::is_lexeme(cell) => {
                            if !kb.markers.iter().any(|m| m == cell) {
                                kb.markers.push(cell.to_owned());
                            }
                            Ok(Some(cell.to_owned()))
                        }
                        None => Err(kb_malformed("frames.tsv", line, format!("bad marker `{cell}`"))),
                    }
                };
                let doer_marker = marker(f[1])?;
                let object_marker = marker(f[2])?;
                let instrument_marker = marker(f[3])?;
                let forms = tsv::optional(&f, 4)
                    .map(|s| s.split(';').filter(|x| !x.is_empty()).map(str::to_owned).collect())
                    .unwrap_or_default();
                kb.frames.push(VerbFrame {
                    tgt_verb_root: f[0].to_owned(),
                    doer_marker,
                    object_marker,
                    instrument_marker,
                    forms,
                });
            }
        }
        if let Some(list) = declared {
            kb.markers = list;
        }
        if let Some(text) = freq {
            for (line, f) in tsv::rows(text) {
                if f.len() != 2 || !notation::is_lexeme(f[0]) {
                    return Err(kb_malformed("freq.tsv", line, "expected `lexeme<TAB>count`"));
                }
                let count: u64 =
                    f[1].parse().map_err(|_| kb_malformed("freq.tsv", line, format!("bad count `{}`", f[1])))?;
                kb.freq.insert(f[0].to_owned(), count);
            }
        }
        Ok(kb)
    }

    pub fn frame_for(&self, verb: &str) -> Option<&VerbFrame> {
        self.frames.iter().find(|f| f.matches(verb))
    }

    pub fn is_marker(&self, lexeme: &str) -> bool {
        self.markers.iter().any(|m| m == lexeme)
    }
}

fn kb_malformed(file: &str, line: usize, reason: impl Into<String>) -> KbError {
    KbError::MalformedRow { file: file.to_owned(), line, reason: reason.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DecisionKind {
    FillStar,
    ChooseAlt,
}

impl fmt::Display for DecisionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecisionKind::FillStar => "fill_star",
            DecisionKind::ChooseAlt => "choose_alt",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub token: usize,
    pub unit: usize,
    pub kind: DecisionKind,
    pub chosen: String,
    pub rationale: String,
}

impl Decision {
    pub fn target(&self) -> (usize, usize, DecisionKind) {
        (self.token, self.unit, self.kind)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Resolution {
    pub decisions: Vec<Decision>,
    pub failed: bool,
    /// Why the resolver gave up, when `failed`.
    pub failure: Option<String>,
}

/// Something stage 2 could decide: a `*` or an ambiguity set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Target {
    pub token: usize,
    pub unit: usize,
    pub kind: DecisionKind,
    /// Members of the ambiguity set; empty for `*` targets.
    pub members: Vec<String>,
}

/// All decidable targets, in token then unit order. A starred ambiguity set
/// yields two targets, the set first.
pub fn targets(tokens: &[AnnotatedToken]) -> Vec<Target> {
    let mut out = Vec::new();
    for (ti, tok) in tokens.iter().enumerate() {
        if tok.unknown {
            continue;
        }
        for (ui, unit) in tok.units.iter().enumerate() {
            if let UnitBody::AltSet(members) = &unit.body {
                out.push(Target { token: ti, unit: ui, kind: DecisionKind::ChooseAlt, members: members.clone() });
            }
            if unit.star {
                out.push(Target { token: ti, unit: ui, kind: DecisionKind::FillStar, members: Vec::new() });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyError(pub String);

impl fmt::Display for StrategyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A stage-2 knowledge source.
pub trait Strategy {
    fn name(&self) -> &str;

    fn propose(&self, tokens: &[AnnotatedToken], kb: &KnowledgeBase) -> Result<Vec<Decision>, StrategyError>;
}

/// Fills the `*` on a relative pronoun with the doer marker of the verb it
/// is attached to. The relativized noun is assumed to be the doer, and it
/// must be the next token and carry no case marker of its own; anything
/// else is a structure the strategy cannot handle.
#[derive(Debug, Clone, Copy, Default)]
pub struct FrameFill;

impl Strategy for FrameFill {
    fn name(&self) -> &str {
        "verb-frame"
    }

    fn propose(&self, tokens: &[AnnotatedToken], kb: &KnowledgeBase) -> Result<Vec<Decision>, StrategyError> {
        let mut out = Vec::new();
        for (ti, tok) in tokens.iter().enumerate() {
            if tok.unknown {
                continue;
            }
            for (ui, unit) in tok.units.iter().enumerate() {
                if !unit.star || !matches!(unit.body, UnitBody::Lexeme(_)) {
                    continue;
                }
                let Some(verb) = tok.units.first().and_then(Unit::lexeme_text) else { continue };
                let Some(frame) = kb.frame_for(verb) else { continue };
                let head = tokens
                    .get(ti + 1)
                    .ok_or_else(|| StrategyError(format!("no head noun after `{verb}` relative clause")))?;
                if head.unknown {
                    return Err(StrategyError("head noun of relative clause is unanalyzed".to_owned()));
                }
                if let Some(case) = head.units.iter().filter_map(Unit::lexeme_text).find(|l| kb.is_marker(l)) {
                    return Err(StrategyError(format!(
                        "head noun `{}` already carries case marker `{case}`",
                        notation::render_single(head)
                    )));
                }
                if let Some(marker) = &frame.doer_marker {
                    out.push(Decision {
                        token: ti,
                        unit: ui,
                        kind: DecisionKind::FillStar,
                        chosen: marker.clone(),
                        rationale: "doer of transitive participial".to_owned(),
                    });
                }
            }
        }
        Ok(out)
    }
}

/// Picks the strictly most frequent member of an ambiguity set. Ties and
/// unseen sets stay ambiguous.
#[derive(Debug, Clone, Copy, Default)]
pub struct MajorityChoice;

impl Strategy for MajorityChoice {
    fn name(&self) -> &str {
        "frequency"
    }

    fn propose(&self, tokens: &[AnnotatedToken], kb: &KnowledgeBase) -> Result<Vec<Decision>, StrategyError> {
        let mut out = Vec::new();
        for target in targets(tokens).into_iter().filter(|t| t.kind == DecisionKind::ChooseAlt) {
            let mut counts: Vec<(u64, &String)> =
                target.members.iter().map(|m| (kb.freq.get(m).copied().unwrap_or(0), m)).collect();
            counts.sort_by_key(|c| core::cmp::Reverse(c.0));
            let (best, member) = counts[0];
            if best > 0 && counts.get(1).is_none_or(|second| second.0 < best) {
                out.push(Decision {
                    token: target.token,
                    unit: target.unit,
                    kind: DecisionKind::ChooseAlt,
                    chosen: member.clone(),
                    rationale: format!("most frequent member (count {best})"),
                });
            }
        }
        Ok(out)
    }
}

pub struct Resolver {
    strategies: Vec<Box<dyn Strategy + Send + Sync>>,
}

impl Default for Resolver {
    fn default() -> Resolver {
        Resolver::new(alloc::vec![Box::new(FrameFill), Box::new(MajorityChoice)])
    }
}

impl fmt::Debug for Resolver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.strategies.iter().map(|s| s.name())).finish()
    }
}

impl Resolver {
    pub fn new(strategies: Vec<Box<dyn Strategy + Send + Sync>>) -> Resolver {
        Resolver { strategies }
    }

    pub fn resolve(&self, tokens: &[AnnotatedToken], kb: &KnowledgeBase) -> (Vec<AnnotatedToken>, Resolution) {
        let fail =
            |why: String| (tokens.to_vec(), Resolution { decisions: Vec::new(), failed: true, failure: Some(why) });
        let mut decisions: Vec<Decision> = Vec::new();
        for strategy in &self.strategies {
            match strategy.propose(tokens, kb) {
                Ok(proposed) => {
                    for d in proposed {
                        if !decisions.iter().any(|e| e.target() == d.target()) {
                            decisions.push(d);
                        }
                    }
                }
                Err(e) => return fail(format!("{}: {e}", strategy.name())),
            }
        }
        if let Some(d) = decisions.iter().find(|d| d.kind == DecisionKind::FillStar && !kb.is_marker(&d.chosen)) {
            return fail(format!("marker `{}` is outside the declared vocabulary", d.chosen));
        }
        match apply_decisions(tokens, &decisions) {
            Ok(resolved) if refines(&resolved, tokens) => {
                (resolved, Resolution { decisions, failed: false, failure: None })
            }
            Ok(_) => fail("resolved sentence does not refine its input".to_owned()),
            Err(e) => fail(e.0),
        }
    }
}

pub fn resolve_sentence(tokens: &[AnnotatedToken], kb: &KnowledgeBase) -> (Vec<AnnotatedToken>, Resolution) {
    Resolver::default().resolve(tokens, kb)
}

/// Applies decisions to a stage-1 sentence.
///
/// A chosen alternative replaces its set in place. A filled star loses its
/// `*` and gains the marker as a new unit right after it (`jo*` becomes
/// `jo_ne`); a bare placeholder becomes the marker itself.
pub fn apply_decisions(
    tokens: &[AnnotatedToken],
    decisions: &[Decision],
) -> Result<Vec<AnnotatedToken>, StrategyError> {
    let valid = targets(tokens);
    for (i, d) in decisions.iter().enumerate() {
        if decisions[..i].iter().any(|e| e.target() == d.target()) {
            return Err(StrategyError(format!("two decisions for token {} unit {}", d.token, d.unit)));
        }
        let Some(target) = valid.iter().find(|t| (t.token, t.unit, t.kind) == d.target()) else {
            return Err(StrategyError(format!("no {} target at token {} unit {}", d.kind, d.token, d.unit)));
        };
        let ok = match d.kind {
            DecisionKind::ChooseAlt => target.members.contains(&d.chosen),
            DecisionKind::FillStar => notation::is_lexeme(&d.chosen),
        };
        if !ok {
            return Err(StrategyError(format!("`{}` is not a valid {} choice", d.chosen, d.kind)));
        }
    }

    let mut out = tokens.to_vec();
    for (ti, tok) in out.iter_mut().enumerate() {
        if !decisions.iter().any(|d| d.token == ti) {
            continue;
        }
        let mut units = Vec::with_capacity(tok.units.len() + 1);
        for (ui, unit) in tok.units.iter().enumerate() {
            let choose = decisions.iter().find(|d| d.target() == (ti, ui, DecisionKind::ChooseAlt));
            let fill = decisions.iter().find(|d| d.target() == (ti, ui, DecisionKind::FillStar));
            let mut unit = unit.clone();
            if let Some(d) = choose {
                unit.body = UnitBody::Lexeme(d.chosen.clone());
                unit.origin = Origin::Resolved;
            }
            match fill {
                Some(d) if unit.body == UnitBody::Placeholder => {
                    units.push(Unit::lexeme(&d.chosen).with_origin(Origin::Resolved));
                }
                Some(d) => {
                    unit.star = false;
                    units.push(unit);
                    units.push(Unit::lexeme(&d.chosen).with_origin(Origin::Resolved));
                }
                None => units.push(unit),
            }
        }
        tok.units = units;
    }
    Ok(out)
}

/// Whether `resolved` differs from `original` only by stage-2 refinements:
/// ambiguity sets narrowed to one of their own members, and `*`s replaced
/// by a marker unit. Token count, order, lexemes, marks, annotations and
/// punctuation must all be unchanged.
pub fn refines(resolved: &[AnnotatedToken], original: &[AnnotatedToken]) -> bool {
    resolved.len() == original.len() && resolved.iter().zip(original).all(|(r, o)| token_refines(r, o))
}

fn token_refines(r: &AnnotatedToken, o: &AnnotatedToken) -> bool {
    if r.annotation != o.annotation || r.trailing_punct != o.trailing_punct || r.unknown != o.unknown {
        return false;
    }
    if o.unknown {
        return r.structure() == o.structure();
    }
    let mut j = 0;
    for ou in &o.units {
        let Some(ru) = r.units.get(j) else { return false };
        if ou.body == UnitBody::Placeholder {
            // untouched, or replaced by a single marker lexeme
            if ru.body == UnitBody::Placeholder && ru.star {
                j += 1;
                continue;
            }
            if !ru.is_bare_lexeme() {
                return false;
            }
            j += 1;
            continue;
        }
        let body_ok = match (&ou.body, &ru.body) {
            (a, b) if a == b => true,
            (UnitBody::AltSet(members), UnitBody::Lexeme(chosen)) => members.contains(chosen),
            _ => false,
        };
        if !body_ok || ru.mark != ou.mark {
            return false;
        }
        if ru.star == ou.star {
            j += 1;
        } else if ou.star && !ru.star {
            match r.units.get(j + 1) {
                Some(marker) if marker.is_bare_lexeme() => j += 2,
                _ => return false,
            }
        } else {
            return false;
        }
    }
    j == r.units.len()
}
