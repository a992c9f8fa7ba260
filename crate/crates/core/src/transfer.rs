//! Morpheme-by-morpheme transfer into annotated target tokens.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;

use crate::lexicon::{lookup_root, lookup_tam, SuffixCategory, TableSet, TamEntry};
use crate::morph::MorphAnalysis;
use crate::notation::{Punct, SenseMark};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum UnitBody {
    Lexeme(String),
    /// Alternatives the source leaves open, rendered `[a|b]`.
    AltSet(Vec<String>),
    /// Information the target needs but the source lacks, rendered `*`.
    Placeholder,
}

/// Where a unit came from. Not part of the rendered notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Lexicon,
    /// Placeholder standing in for a label missing from the tables.
    Gap,
    Construction,
    Resolved,
    Parsed,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Unit {
    pub body: UnitBody,
    pub mark: Option<SenseMark>,
    pub star: bool,
    pub origin: Origin,
}

impl Unit {
    pub fn lexeme(text: &str) -> Unit {
        Unit { body: UnitBody::Lexeme(text.to_owned()), mark: None, star: false, origin: Origin::Lexicon }
    }

    pub fn altset(members: Vec<String>) -> Unit {
        Unit { body: UnitBody::AltSet(members), mark: None, star: false, origin: Origin::Lexicon }
    }

    pub fn placeholder(origin: Origin) -> Unit {
        Unit { body: UnitBody::Placeholder, mark: None, star: true, origin }
    }

    pub fn with_mark(mut self, mark: SenseMark) -> Unit {
        self.mark = Some(mark);
        self
    }

    pub fn with_star(mut self) -> Unit {
        self.star = true;
        self
    }

    pub fn with_origin(mut self, origin: Origin) -> Unit {
        self.origin = origin;
        self
    }

    pub fn lexeme_text(&self) -> Option<&str> {
        match &self.body {
            UnitBody::Lexeme(t) => Some(t),
            _ => None,
        }
    }

    /// Plain lexeme: no mark, no star.
    pub fn is_bare_lexeme(&self) -> bool {
        matches!(self.body, UnitBody::Lexeme(_)) && self.mark.is_none() && !self.star
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Position of the source token this was transferred from.
    Source(usize),
    /// Added by a construction rule.
    Inserted,
    /// Reconstructed from notation text; provenance unknown.
    Parsed,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnnotatedToken {
    pub units: Vec<Unit>,
    /// Feature text rendered in braces after the last unit.
    pub annotation: Option<String>,
    pub trailing_punct: Option<Punct>,
    pub provenance: Provenance,
    /// Verbatim passthrough of an unanalyzable source word.
    pub unknown: bool,
    /// Construction rule that matched this token, if any.
    pub construction: Option<String>,
}

impl AnnotatedToken {
    pub fn unknown_token(surface: &str, trailing_punct: Option<Punct>, index: usize) -> AnnotatedToken {
        AnnotatedToken {
            units: alloc::vec![Unit::lexeme(surface)],
            annotation: None,
            trailing_punct,
            provenance: Provenance::Source(index),
            unknown: true,
            construction: None,
        }
    }

    pub fn source_index(&self) -> Option<usize> {
        match self.provenance {
            Provenance::Source(i) => Some(i),
            _ => None,
        }
    }

    pub fn is_inserted(&self) -> bool {
        self.provenance == Provenance::Inserted
    }

    /// The token with all provenance erased, as parsing would produce it.
    pub fn structure(&self) -> AnnotatedToken {
        AnnotatedToken {
            units: self.units.iter().cloned().map(|u| u.with_origin(Origin::Parsed)).collect(),
            annotation: self.annotation.clone(),
            trailing_punct: self.trailing_punct,
            provenance: Provenance::Parsed,
            unknown: self.unknown,
            construction: None,
        }
    }
}

pub fn structure_of(tokens: &[AnnotatedToken]) -> Vec<AnnotatedToken> {
    tokens.iter().map(AnnotatedToken::structure).collect()
}

/// Maps one analysis to a target token: root gloss units (sense mark on the
/// last one), then the units of each suffix label, then clitics.
///
/// Labels the tables do not cover become `*` placeholders, so a gap in the
/// data shows up in the output instead of vanishing.
pub fn transfer_token(analysis: &MorphAnalysis, tables: &TableSet) -> AnnotatedToken {
    let token = &analysis.token;
    if analysis.is_unknown {
        return AnnotatedToken::unknown_token(&token.surface, token.trailing_punct, token.index);
    }
    let Some(entry) = lookup_root(tables, &analysis.root, analysis.pos).into_iter().next() else {
        return AnnotatedToken::unknown_token(&token.surface, token.trailing_punct, token.index);
    };

    let mut units: Vec<Unit> = entry.tgt_gloss.iter().map(|g| Unit::lexeme(g)).collect();
    if let (Some(mark), Some(last)) = (entry.sense_mark, units.last_mut()) {
        last.mark = Some(mark);
    }
    let root_len = units.len();

    let mut verbal: Option<&TamEntry> = None;
    for suffix in &analysis.suffixes {
        match suffix.category {
            SuffixCategory::Clitic => {
                let mapped = verbal.and_then(|t| t.clitic_map.get(&suffix.label));
                match mapped {
                    Some(lexeme) => units.push(Unit::lexeme(lexeme)),
                    None => push_label_units(tables, &suffix.label, &mut units),
                }
            }
            SuffixCategory::Tam | SuffixCategory::Participial => {
                verbal = lookup_tam(tables, &suffix.label);
                push_label_units(tables, &suffix.label, &mut units);
            }
            SuffixCategory::Case | SuffixCategory::Plural => {
                push_label_units(tables, &suffix.label, &mut units);
            }
        }
    }
    fuse_at(tables, &mut units, root_len);

    let slot = verbal.and_then(|t| t.gnp_slot.as_deref());
    let annotation = match (slot, analysis.gnp.as_deref()) {
        (Some(template), Some(gnp)) => Some(template.replace('%', gnp)),
        (Some(template), None) if !template.contains('%') => Some(template.to_owned()),
        (Some(_), None) => None,
        (None, gnp) => gnp.map(str::to_owned),
    };

    AnnotatedToken {
        units,
        annotation,
        trailing_punct: token.trailing_punct,
        provenance: crate::transfer::Provenance::Source(token.index),
        unknown: false,
        construction: None,
    }
}

fn push_label_units(tables: &TableSet, label: &str, units: &mut Vec<Unit>) {
    match lookup_tam(tables, label) {
        Some(entry) => units.extend(entry.tgt_units.iter().cloned()),
        None => units.push(Unit::placeholder(Origin::Gap)),
    }
}

/// Merges the last root unit with the first suffix unit when the tables list
/// a fused target form for the pair (`kara` + `yA` -> `kiyA`).
fn fuse_at(tables: &TableSet, units: &mut Vec<Unit>, root_len: usize) {
    if root_len == 0 || root_len >= units.len() {
        return;
    }
    let (stem, suffix) = (&units[root_len - 1], &units[root_len]);
    if !stem.is_bare_lexeme() {
        return;
    }
    let (Some(stem_text), Some(suffix_text)) = (stem.lexeme_text(), suffix.lexeme_text()) else {
        return;
    };
    if let Some(fused) = tables.fused_form(stem_text, suffix_text) {
        let mut merged = Unit::lexeme(fused);
        merged.mark = suffix.mark;
        merged.star = suffix.star;
        units.splice(root_len - 1..=root_len, [merged]);
    }
}

/// One target token per analysis, same order, `source_index == i`.
pub fn transfer_sentence(analyses: &[MorphAnalysis], tables: &TableSet) -> Vec<AnnotatedToken> {
    analyses.iter().map(|a| transfer_token(a, tables)).collect()
}
