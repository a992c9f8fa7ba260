//! Suffix-stripping morphological analysis.
//!
//! Suffixes are stripped right to left, longest surface first, up to
//! [`MAX_SUFFIXES`] deep; a segmentation is kept only if the remaining stem
//! is a root in the lexicon whose part of speech accepts every stripped
//! suffix. Every consistent analysis is returned; choosing one is left to
//! [`analyze_sentence`], which takes the first.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;

use crate::lexicon::{Pos, Sandhi, SuffixCategory, SuffixEntry, TableSet};
use crate::notation::{split_trailing_punct, Punct};

pub const MAX_SUFFIXES: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SourceToken {
    pub surface: String,
    pub index: usize,
    pub trailing_punct: Option<Punct>,
}

/// Whitespace split with one trailing `?`, `.` or `,` detached per token.
pub fn tokenize(line: &str) -> Vec<SourceToken> {
    line.split_whitespace()
        .enumerate()
        .map(|(index, raw)| {
            let (surface, trailing_punct) = split_trailing_punct(raw);
            SourceToken { surface: surface.to_owned(), index, trailing_punct }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorphSuffix {
    pub surface: String,
    pub category: SuffixCategory,
    pub label: String,
    pub sandhi: Option<Sandhi>,
    pub gnp: Option<String>,
}

impl MorphSuffix {
    fn from_entry(e: &SuffixEntry) -> MorphSuffix {
        MorphSuffix {
            surface: e.surface.clone(),
            category: e.category,
            label: e.label.clone(),
            sandhi: e.sandhi_strip.clone(),
            gnp: e.gnp.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorphAnalysis {
    pub token: SourceToken,
    pub root: String,
    /// Part of speech of the lexicon entry the root was validated against.
    pub pos: Option<Pos>,
    /// Suffixes in surface order (innermost first).
    pub suffixes: Vec<MorphSuffix>,
    pub gnp: Option<String>,
    pub is_unknown: bool,
}

impl MorphAnalysis {
    pub fn unknown(token: &SourceToken) -> MorphAnalysis {
        MorphAnalysis {
            token: token.clone(),
            root: token.surface.clone(),
            pos: None,
            suffixes: Vec::new(),
            gnp: None,
            is_unknown: true,
        }
    }

    /// Rebuilds the surface form by re-applying each suffix's sandhi to the
    /// stem built so far. `None` if a sandhi precondition fails, which never
    /// happens for analyses produced by [`analyze_token`].
    pub fn reconstruct(&self) -> Option<String> {
        let mut built = self.root.clone();
        for s in &self.suffixes {
            if let Some(sandhi) = &s.sandhi {
                built = sandhi.apply(&built)?;
            }
            built.push_str(&s.surface);
        }
        Some(built)
    }

    pub fn stripped_len(&self) -> usize {
        self.suffixes.iter().map(|s| s.surface.chars().count()).sum()
    }

    pub fn has_category(&self, category: SuffixCategory) -> bool {
        self.suffixes.iter().any(|s| s.category == category)
    }

    pub fn has_label(&self, label: &str) -> bool {
        self.suffixes.iter().any(|s| s.label == label)
    }
}

/// Parts of speech compatible with every suffix category in `categories`.
pub fn compatible_pos(categories: impl IntoIterator<Item = SuffixCategory>, pos: Pos) -> bool {
    categories.into_iter().all(|c| c.required_pos().is_none_or(|allowed| allowed.contains(&pos)))
}

/// Part of speech of the first lexicon entry for `root` that can carry all
/// of `suffixes`.
pub fn validate_root(tables: &TableSet, root: &str, suffixes: &[MorphSuffix]) -> Option<Pos> {
    tables.entries_for(root).find(|e| compatible_pos(suffixes.iter().map(|s| s.category), e.pos)).map(|e| e.pos)
}

/// All analyses of `token`; never empty.
///
/// Known-root analyses come first, ordered by total stripped suffix length
/// (longest first), then by suffix count and root. If none exists the result
/// is a single unknown analysis with the whole surface as root.
pub fn analyze_token(token: &SourceToken, tables: &TableSet) -> Vec<MorphAnalysis> {
    let mut by_length: Vec<&SuffixEntry> = tables.suffixes().iter().collect();
    by_length.sort_by_key(|s| core::cmp::Reverse(s.surface.len()));

    let mut found = Vec::new();
    let mut outer = Vec::new();
    strip(token, tables, &by_length, &token.surface, u8::MAX, &mut outer, &mut found);

    found.sort_by(|a: &MorphAnalysis, b: &MorphAnalysis| {
        b.stripped_len()
            .cmp(&a.stripped_len())
            .then(a.suffixes.len().cmp(&b.suffixes.len()))
            .then_with(|| a.root.cmp(&b.root))
    });
    found.dedup();
    if found.is_empty() {
        found.push(MorphAnalysis::unknown(token));
    }
    found
}

/// `outer` holds the suffixes stripped so far, outermost first.
fn strip(
    token: &SourceToken,
    tables: &TableSet,
    suffixes: &[&SuffixEntry],
    stem: &str,
    outer_rank: u8,
    outer: &mut Vec<MorphSuffix>,
    found: &mut Vec<MorphAnalysis>,
) {
    let in_order: Vec<MorphSuffix> = outer.iter().rev().cloned().collect();
    if let Some(pos) = validate_root(tables, stem, &in_order) {
        let gnp = in_order.iter().rev().find_map(|s| s.gnp.clone());
        found.push(MorphAnalysis {
            token: token.clone(),
            root: stem.to_owned(),
            pos: Some(pos),
            suffixes: in_order,
            gnp,
            is_unknown: false,
        });
    }
    if outer.len() == MAX_SUFFIXES {
        return;
    }
    for entry in suffixes {
        if entry.category.rank() >= outer_rank {
            continue;
        }
        let Some(rest) = stem.strip_suffix(entry.surface.as_str()) else { continue };
        if rest.is_empty() {
            continue;
        }
        let inner = match &entry.sandhi_strip {
            Some(sandhi) => match sandhi.undo(rest) {
                Some(s) => s,
                None => continue,
            },
            None => rest.to_owned(),
        };
        outer.push(MorphSuffix::from_entry(entry));
        strip(token, tables, suffixes, &inner, entry.category.rank(), outer, found);
        outer.pop();
    }
}

/// One token's chosen analysis plus the ones it outranked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalyzedToken {
    pub token: SourceToken,
    pub chosen: MorphAnalysis,
    pub alternatives: Vec<MorphAnalysis>,
}

pub fn analyze_sentence(tokens: &[SourceToken], tables: &TableSet) -> Vec<AnalyzedToken> {
    tokens
        .iter()
        .map(|token| {
            let mut analyses = analyze_token(token, tables);
            let chosen = analyses.remove(0);
            AnalyzedToken { token: token.clone(), chosen, alternatives: analyses }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::TableSources;
    use alloc::string::ToString;
    use alloc::vec;

    const ROOTS: &str = "caduvu\tverb\ts1\tpaDha\t\t0\nceyu\tverb\ts1\tkara\t\t0\nUru\tnoun\ts1\tgAzva\t\t0\n\
nali\tnoun\ts1\tbImArI\t\t0\nnalini\tnoun\tprop\tnalinI\t\t1\nkaru\tnoun\ts1\tx\t\t0\nkaruni\tnoun\ts1\ty\t\t0\n";
    const SUFFIXES: &str = "tunnA\ttam\ttunnA\nrA\tclitic\tA\t\t23_ba.\nina\tparticipial\tina\t>u\n\
sina\tparticipial\tina\t>yu\nni\tcase\tacc\nniMci\tcase\tabl\ti>u\n";

    fn tables() -> TableSet {
        TableSet::parse(TableSources { roots: ROOTS, suffixes: SUFFIXES, ..Default::default() }).unwrap()
    }

    fn tok(s: &str) -> SourceToken {
        SourceToken { surface: s.to_string(), index: 0, trailing_punct: None }
    }

    fn labels(a: &MorphAnalysis) -> Vec<(&str, SuffixCategory)> {
        a.suffixes.iter().map(|s| (s.label.as_str(), s.category)).collect()
    }

    #[test]
    fn tokenizer_detaches_punctuation() {
        let toks = tokenize("  mlru pustakaM caduvutunnArA? ");
        assert_eq!(toks.len(), 3);
        assert_eq!(toks[2].surface, "caduvutunnArA");
        assert_eq!(toks[2].trailing_punct, Some(Punct::Question));
        assert_eq!(toks[2].index, 2);
        let lone = tokenize("? ab..");
        assert_eq!(lone[0].surface, "?");
        assert_eq!(lone[0].trailing_punct, None);
        assert_eq!(lone[1].surface, "ab.");
    }

    #[test]
    fn question_verb() {
        let a = analyze_token(&tok("caduvutunnArA"), &tables());
        assert_eq!(a[0].root, "caduvu");
        assert_eq!(labels(&a[0]), vec![("tunnA", SuffixCategory::Tam), ("A", SuffixCategory::Clitic)]);
        assert_eq!(a[0].suffixes[1].surface, "rA");
        assert_eq!(a[0].gnp.as_deref(), Some("23_ba."));
        assert_eq!(a[0].pos, Some(Pos::Verb));
    }

    #[test]
    fn participial_with_sandhi() {
        let a = analyze_token(&tok("cesina"), &tables());
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].root, "ceyu");
        assert_eq!(labels(&a[0]), vec![("ina", SuffixCategory::Participial)]);
        assert_eq!(a[0].reconstruct().as_deref(), Some("cesina"));

        let u = analyze_token(&tok("UriniMci"), &tables());
        assert_eq!(u[0].root, "Uru");
        assert_eq!(u[0].reconstruct().as_deref(), Some("UriniMci"));
    }

    #[test]
    fn unknown_passthrough() {
        let a = analyze_token(&tok("xyzzy"), &tables());
        assert_eq!(a, vec![MorphAnalysis::unknown(&tok("xyzzy"))]);
        assert!(a[0].is_unknown && a[0].suffixes.is_empty() && a[0].root == "xyzzy");
    }

    #[test]
    fn longest_suffix_first() {
        // `nalini` is both nali+ni and a proper noun; the segmented reading wins.
        let a = analyze_token(&tok("nalini"), &tables());
        assert_eq!(a.len(), 2);
        assert_eq!((a[0].root.as_str(), a[0].stripped_len()), ("nali", 2));
        assert_eq!((a[1].root.as_str(), a[1].stripped_len()), ("nalini", 0));

        let b = analyze_token(&tok("karuni"), &tables());
        assert_eq!(b.iter().map(|a| a.root.as_str()).collect::<Vec<_>>(), vec!["karu", "karuni"]);
    }

    #[test]
    fn pos_must_accept_suffixes() {
        // a case suffix cannot attach to a verb root
        let a = analyze_token(&tok("ceyuni"), &tables());
        assert!(a[0].is_unknown);
    }

    #[test]
    fn sentence_preserves_length() {
        let toks = tokenize("pani cesina xyzzy nalini.");
        let out = analyze_sentence(&toks, &tables());
        assert_eq!(out.len(), 4);
        assert_eq!(out[3].chosen.root, "nali");
        assert_eq!(out[3].alternatives[0].root, "nalini");
        assert!(out[2].chosen.is_unknown && out[2].alternatives.is_empty());
    }
}
