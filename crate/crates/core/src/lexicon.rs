//! Resource tables: bilingual roots, TAM/case labels, suffix paradigms,
//! construction rules and (optionally) fused target forms.
//!
//! Tables are parsed from text so this module stays free of IO; the
//! companion crate reads them from a directory.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::construction::{parse_rules, ConstructionRule};
use crate::error::TableError;
use crate::notation::{self, SenseMark};
use crate::transfer::{Origin, Unit, UnitBody};
use crate::tsv;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pos {
    Noun,
    Verb,
    Pronoun,
    Adjective,
    Indeclinable,
}

impl FromStr for Pos {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Ok(match s {
            "noun" => Pos::Noun,
            "verb" => Pos::Verb,
            "pronoun" => Pos::Pronoun,
            "adjective" => Pos::Adjective,
            "indeclinable" => Pos::Indeclinable,
            _ => return Err(()),
        })
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pos::Noun => "noun",
            Pos::Verb => "verb",
            Pos::Pronoun => "pronoun",
            Pos::Adjective => "adjective",
            Pos::Indeclinable => "indeclinable",
        })
    }
}

/// A row of `roots.tsv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexEntry {
    pub src_root: String,
    pub pos: Pos,
    pub sense_id: String,
    pub tgt_gloss: Vec<String>,
    pub sense_mark: Option<SenseMark>,
    pub is_proper: bool,
    /// Optional English gloss, used only for `!E:` lines.
    pub eng_gloss: Option<String>,
}

/// A row of `tam.tsv`. Case labels (`dat`, `acc`, ...) use the same rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TamEntry {
    pub src_label: String,
    pub tgt_units: Vec<Unit>,
    /// Feature template for the brace annotation; `%` is replaced by the
    /// analysis' GNP features.
    pub gnp_slot: Option<String>,
    pub clitic_map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuffixCategory {
    Tam,
    Case,
    Plural,
    Clitic,
    Participial,
}

impl SuffixCategory {
    /// Position class in the suffix template. Suffixes of a valid analysis
    /// have strictly increasing rank left to right, so there is at most one
    /// tam-or-participial and clitics come last.
    pub fn rank(self) -> u8 {
        match self {
            SuffixCategory::Plural => 0,
            SuffixCategory::Tam | SuffixCategory::Participial => 1,
            SuffixCategory::Case => 2,
            SuffixCategory::Clitic => 3,
        }
    }

    /// Parts of speech a root may have to carry this suffix, or `None` when
    /// any will do.
    pub fn required_pos(self) -> Option<&'static [Pos]> {
        match self {
            SuffixCategory::Tam | SuffixCategory::Participial => Some(&[Pos::Verb]),
            SuffixCategory::Case | SuffixCategory::Plural => Some(&[Pos::Noun, Pos::Pronoun]),
            SuffixCategory::Clitic => None,
        }
    }
}

impl FromStr for SuffixCategory {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Ok(match s {
            "tam" => SuffixCategory::Tam,
            "case" => SuffixCategory::Case,
            "plural" => SuffixCategory::Plural,
            "clitic" => SuffixCategory::Clitic,
            "participial" => SuffixCategory::Participial,
            _ => return Err(()),
        })
    }
}

impl fmt::Display for SuffixCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuffixCategory::Tam => "tam",
            SuffixCategory::Case => "case",
            SuffixCategory::Plural => "plural",
            SuffixCategory::Clitic => "clitic",
            SuffixCategory::Participial => "participial",
        })
    }
}

/// Stem rewrite applied after stripping a suffix: a stem ending in `old`
/// has that ending replaced by `new` (`Uri` + `niMci` with `i>u` gives root
/// `Uru`). The suffix only matches stems that end in `old`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sandhi {
    pub old: String,
    pub new: String,
}

impl Sandhi {
    pub const MAX_GROWTH: usize = 2;

    /// Stripping direction: surface stem to underlying stem.
    pub fn undo(&self, stem: &str) -> Option<String> {
        let head = stem.strip_suffix(self.old.as_str())?;
        let out = format!("{head}{}", self.new);
        (!out.is_empty()).then_some(out)
    }

    /// Generation direction: underlying stem to surface stem.
    pub fn apply(&self, stem: &str) -> Option<String> {
        let head = stem.strip_suffix(self.new.as_str())?;
        Some(format!("{head}{}", self.old))
    }
}

impl fmt::Display for Sandhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}>{}", self.old, self.new)
    }
}

/// A row of `suffixes.tsv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixEntry {
    pub surface: String,
    pub category: SuffixCategory,
    pub label: String,
    pub sandhi_strip: Option<Sandhi>,
    /// GNP features contributed by the suffix (agreement endings).
    pub gnp: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// Entries sharing `(root, pos)` that neither a proper-noun flag nor a
    /// sense mark tells apart. Allowed, since it is how dictionary
    /// mistranslations arise, but worth a lexicographer's look.
    BareHomograph { root: String, pos: Pos },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::BareHomograph { root, pos } => {
                write!(f, "roots.tsv: homographs of ({root}, {pos}) are not distinguishable")
            }
        }
    }
}

/// Raw table texts, keyed by the file they came from.
#[derive(Debug, Clone, Copy, Default)]
pub struct TableSources<'a> {
    pub roots: &'a str,
    pub tam: &'a str,
    pub suffixes: &'a str,
    pub rules: &'a str,
    /// `forms.tsv`: fused target forms (`kara` + `yA` -> `kiyA`).
    pub forms: Option<&'a str>,
}

/// Indexed, immutable resource tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSet {
    roots: Vec<LexEntry>,
    tam: Vec<TamEntry>,
    suffixes: Vec<SuffixEntry>,
    rules: Vec<ConstructionRule>,
    forms: BTreeMap<(String, String), String>,
    root_index: BTreeMap<String, Vec<usize>>,
    tam_index: BTreeMap<String, usize>,
    warnings: Vec<Warning>,
}

impl TableSet {
    pub fn parse(src: TableSources<'_>) -> Result<TableSet, TableError> {
        let roots = parse_roots(src.roots)?;
        let tam = parse_tam(src.tam)?;
        let suffixes = parse_suffixes(src.suffixes)?;
        let rules = parse_rules(src.rules)?;
        let forms = match src.forms {
            Some(text) => parse_forms(text)?,
            None => BTreeMap::new(),
        };

        let mut root_index: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (i, e) in roots.iter().enumerate() {
            root_index.entry(e.src_root.clone()).or_default().push(i);
        }
        let tam_index = tam.iter().enumerate().map(|(i, e)| (e.src_label.clone(), i)).collect();
        let warnings = homograph_warnings(&roots, &root_index);

        Ok(TableSet { roots, tam, suffixes, rules, forms, root_index, tam_index, warnings })
    }

    pub fn roots(&self) -> &[LexEntry] {
        &self.roots
    }

    pub fn tam(&self) -> &[TamEntry] {
        &self.tam
    }

    pub fn suffixes(&self) -> &[SuffixEntry] {
        &self.suffixes
    }

    pub fn rules(&self) -> &[ConstructionRule] {
        &self.rules
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    /// Whether any root row carries an English gloss.
    pub fn has_eng_glosses(&self) -> bool {
        self.roots.iter().any(|e| e.eng_gloss.is_some())
    }

    pub fn fused_form(&self, stem: &str, suffix: &str) -> Option<&str> {
        self.forms.get(&(stem.to_owned(), suffix.to_owned())).map(String::as_str)
    }

    pub(crate) fn entries_for(&self, root: &str) -> impl Iterator<Item = &LexEntry> {
        self.root_index.get(root).into_iter().flat_map(move |ids| ids.iter().map(move |&i| &self.roots[i]))
    }
}

/// All entries for `root` (restricted to `pos` when given), in table order.
pub fn lookup_root<'t>(tables: &'t TableSet, root: &str, pos: Option<Pos>) -> Vec<&'t LexEntry> {
    tables.entries_for(root).filter(|e| pos.is_none_or(|p| e.pos == p)).collect()
}

pub fn lookup_tam<'t>(tables: &'t TableSet, label: &str) -> Option<&'t TamEntry> {
    tables.tam_index.get(label).map(|&i| &tables.tam[i])
}

fn malformed(file: &str, line: usize, reason: impl Into<String>) -> TableError {
    TableError::MalformedRow { file: file.to_owned(), line, reason: reason.into() }
}

fn check_columns(file: &str, line: usize, fields: &[&str], min: usize, max: usize) -> Result<(), TableError> {
    if fields.len() < min || fields.len() > max {
        return Err(malformed(file, line, format!("expected {min}..={max} columns, found {}", fields.len())));
    }
    Ok(())
}

/// Validates a single target lexeme from a table cell.
fn target_lexeme(file: &str, line: usize, s: &str) -> Result<String, TableError> {
    if s.is_empty() {
        return Err(malformed(file, line, "empty target lexeme"));
    }
    if !notation::is_lexeme(s) {
        return Err(TableError::ReservedCharInGloss { file: file.to_owned(), line });
    }
    Ok(s.to_owned())
}

fn features(file: &str, line: usize, s: Option<&str>) -> Result<Option<String>, TableError> {
    match s {
        None => Ok(None),
        Some(s) if notation::is_feature_text(s) => Ok(Some(s.to_owned())),
        Some(_) => Err(malformed(file, line, "feature text may not contain braces or spaces")),
    }
}

fn parse_roots(text: &str) -> Result<Vec<LexEntry>, TableError> {
    const FILE: &str = "roots.tsv";
    let mut out: Vec<LexEntry> = Vec::new();
    let mut keys: BTreeMap<(String, Pos, String), ()> = BTreeMap::new();
    for (line, f) in tsv::rows(text) {
        check_columns(FILE, line, &f, 6, 7)?;
        let src_root = f[0];
        if src_root.is_empty() || src_root.chars().any(char::is_whitespace) {
            return Err(malformed(FILE, line, "empty or spaced source root"));
        }
        let pos: Pos = f[1].parse().map_err(|_| malformed(FILE, line, format!("unknown pos `{}`", f[1])))?;
        let sense_id = f[2];
        let tgt_gloss =
            f[3].split('_').map(|lexeme| target_lexeme(FILE, line, lexeme)).collect::<Result<Vec<_>, _>>()?;
        let sense_mark = match f[4] {
            "" => None,
            s => {
                let mut chars = s.chars();
                match (chars.next().and_then(SenseMark::from_char), chars.next()) {
                    (Some(m), None) => Some(m),
                    _ => return Err(malformed(FILE, line, format!("bad sense mark `{s}`"))),
                }
            }
        };
        let is_proper = match f[5] {
            "0" => false,
            "1" => true,
            s => return Err(malformed(FILE, line, format!("is_proper must be 0 or 1, found `{s}`"))),
        };
        let key = (src_root.to_owned(), pos, sense_id.to_owned());
        if keys.insert(key, ()).is_some() {
            return Err(TableError::DuplicateKey {
                file: FILE.to_owned(),
                key: format!("({src_root}, {pos}, {sense_id})"),
            });
        }
        out.push(LexEntry {
            src_root: src_root.to_owned(),
            pos,
            sense_id: sense_id.to_owned(),
            tgt_gloss,
            sense_mark,
            is_proper,
            eng_gloss: tsv::optional(&f, 6).map(ToString::to_string),
        });
    }
    Ok(out)
}

fn homograph_warnings(roots: &[LexEntry], index: &BTreeMap<String, Vec<usize>>) -> Vec<Warning> {
    let mut warnings = Vec::new();
    for (root, ids) in index {
        let mut by_pos: BTreeMap<Pos, Vec<&LexEntry>> = BTreeMap::new();
        for &i in ids {
            by_pos.entry(roots[i].pos).or_default().push(&roots[i]);
        }
        for (pos, group) in by_pos {
            if group.len() < 2 || group.iter().any(|e| e.is_proper) {
                continue;
            }
            let bare = group.iter().enumerate().any(|(i, a)| group[..i].iter().any(|b| b.sense_mark == a.sense_mark));
            if bare {
                warnings.push(Warning::BareHomograph { root: root.clone(), pos });
            }
        }
    }
    warnings
}

fn parse_tam(text: &str) -> Result<Vec<TamEntry>, TableError> {
    const FILE: &str = "tam.tsv";
    let mut out: Vec<TamEntry> = Vec::new();
    for (line, f) in tsv::rows(text) {
        check_columns(FILE, line, &f, 2, 4)?;
        let src_label = f[0];
        if src_label.is_empty() {
            return Err(malformed(FILE, line, "empty label"));
        }
        if out.iter().any(|e| e.src_label == src_label) {
            return Err(TableError::DuplicateKey { file: FILE.to_owned(), key: src_label.to_owned() });
        }
        let tgt_units = tam_units(line, f[1])?;
        let gnp_slot = features(FILE, line, tsv::optional(&f, 2))?;
        let mut clitic_map = BTreeMap::new();
        if let Some(map) = tsv::optional(&f, 3) {
            for pair in map.split(';').filter(|p| !p.is_empty()) {
                let (clitic, lexeme) = pair
                    .split_once('=')
                    .ok_or_else(|| malformed(FILE, line, format!("clitic pair `{pair}` lacks `=`")))?;
                clitic_map.insert(clitic.to_owned(), target_lexeme(FILE, line, lexeme)?);
            }
        }
        out.push(TamEntry { src_label: src_label.to_owned(), tgt_units, gnp_slot, clitic_map });
    }
    Ok(out)
}

/// TAM target units use the notation's unit syntax, restricted to lexemes
/// and ambiguity sets with optional sense marks.
fn tam_units(line: usize, cell: &str) -> Result<Vec<Unit>, TableError> {
    const FILE: &str = "tam.tsv";
    let units = notation::parse_units(cell).map_err(|e| {
        if cell.chars().any(|c| matches!(c, '{' | '}' | '!' | '?' | '.' | ',')) {
            TableError::ReservedCharInGloss { file: FILE.to_owned(), line }
        } else {
            malformed(FILE, line, format!("target units: {e}"))
        }
    })?;
    if units.iter().any(|u| u.star || matches!(u.body, UnitBody::Placeholder)) {
        return Err(malformed(FILE, line, "placeholders are not allowed in table units"));
    }
    Ok(units.into_iter().map(|u| u.with_origin(Origin::Lexicon)).collect())
}

fn parse_suffixes(text: &str) -> Result<Vec<SuffixEntry>, TableError> {
    const FILE: &str = "suffixes.tsv";
    let mut out: Vec<SuffixEntry> = Vec::new();
    for (line, f) in tsv::rows(text) {
        check_columns(FILE, line, &f, 3, 5)?;
        let surface = f[0];
        if surface.is_empty() || surface.chars().any(char::is_whitespace) {
            return Err(malformed(FILE, line, "empty or spaced surface"));
        }
        let category: SuffixCategory =
            f[1].parse().map_err(|_| malformed(FILE, line, format!("unknown category `{}`", f[1])))?;
        if out.iter().any(|e| e.surface == surface && e.category == category) {
            return Err(TableError::DuplicateKey { file: FILE.to_owned(), key: format!("({surface}, {category})") });
        }
        let label = f[2];
        if label.is_empty() {
            return Err(malformed(FILE, line, "empty label"));
        }
        let sandhi_strip = match tsv::optional(&f, 3) {
            None => None,
            Some(rule) => {
                let (old, new) = rule
                    .split_once('>')
                    .ok_or_else(|| malformed(FILE, line, format!("sandhi `{rule}` is not `old>new`")))?;
                if new.chars().count() > old.chars().count() + Sandhi::MAX_GROWTH {
                    return Err(malformed(FILE, line, "sandhi lengthens the stem by more than 2"));
                }
                Some(Sandhi { old: old.to_owned(), new: new.to_owned() })
            }
        };
        let gnp = features(FILE, line, tsv::optional(&f, 4))?;
        out.push(SuffixEntry { surface: surface.to_owned(), category, label: label.to_owned(), sandhi_strip, gnp });
    }
    Ok(out)
}

fn parse_forms(text: &str) -> Result<BTreeMap<(String, String), String>, TableError> {
    const FILE: &str = "forms.tsv";
    let mut out = BTreeMap::new();
    for (line, f) in tsv::rows(text) {
        check_columns(FILE, line, &f, 3, 3)?;
        let stem = target_lexeme(FILE, line, f[0])?;
        let suffix = target_lexeme(FILE, line, f[1])?;
        let fused = target_lexeme(FILE, line, f[2])?;
        let key = format!("({stem}, {suffix})");
        if out.insert((stem, suffix), fused).is_some() {
            return Err(TableError::DuplicateKey { file: FILE.to_owned(), key });
        }
    }
    Ok(out)
}
