use anusaaraka_core::{KnowledgeBase, TableSet, TableSources};

macro_rules! fixture {
    ($name:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/te-hi/", $name))
    };
}

pub fn tables() -> TableSet {
    TableSet::parse(TableSources {
        roots: fixture!("roots.tsv"),
        tam: fixture!("tam.tsv"),
        suffixes: fixture!("suffixes.tsv"),
        rules: fixture!("rules.txt"),
        forms: Some(fixture!("forms.tsv")),
    })
    .expect("fixture tables load")
}

#[allow(dead_code)]
pub fn kb() -> KnowledgeBase {
    KnowledgeBase::parse(Some(fixture!("kb/frames.tsv")), Some(fixture!("kb/freq.tsv"))).expect("fixture kb loads")
}

#[allow(dead_code)]
pub const CORPUS: &str = fixture!("corpus.txt");

/// A word built forward from a root and a suffix sequence.
#[allow(dead_code)]
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Composed {
    pub surface: String,
    pub root: String,
    /// (surface, category, label) per suffix, innermost first.
    pub suffixes: Vec<(String, String, String)>,
}

/// Every word the tables can generate with up to three suffixes: roots in
/// table order, suffix sequences with strictly increasing slot rank and a
/// part of speech that accepts each suffix. Generation runs forwards,
/// independently of the stripping analyzer.
#[allow(dead_code)]
pub fn compose_all(tables: &TableSet) -> Vec<Composed> {
    fn rank(cat: &str) -> u8 {
        match cat {
            "plural" => 0,
            "tam" | "participial" => 1,
            "case" => 2,
            _ => 3,
        }
    }
    fn accepts(pos: &str, cat: &str) -> bool {
        match cat {
            "tam" | "participial" => pos == "verb",
            "case" | "plural" => pos == "noun" || pos == "pronoun",
            _ => true,
        }
    }
    type Row = (String, String, String, Option<(String, String)>);
    let suffixes: Vec<Row> = tables
        .suffixes()
        .iter()
        .map(|s| {
            (
                s.surface.clone(),
                s.category.to_string(),
                s.label.clone(),
                s.sandhi_strip.as_ref().map(|x| (x.old.clone(), x.new.clone())),
            )
        })
        .collect();
    let mut out = Vec::new();
    for entry in tables.roots() {
        let pos = entry.pos.to_string();
        let mut frontier: Vec<(String, Vec<usize>)> = vec![(entry.src_root.clone(), Vec::new())];
        for _ in 0..=3 {
            let mut next = Vec::new();
            for (built, seq) in &frontier {
                out.push(Composed {
                    surface: built.clone(),
                    root: entry.src_root.clone(),
                    suffixes: seq
                        .iter()
                        .map(|&i| (suffixes[i].0.clone(), suffixes[i].1.clone(), suffixes[i].2.clone()))
                        .collect(),
                });
                let last_rank = seq.last().map(|&i| rank(&suffixes[i].1));
                for (i, (surface, cat, _, sandhi)) in suffixes.iter().enumerate() {
                    if last_rank.is_some_and(|r| rank(cat) <= r) || !accepts(&pos, cat) {
                        continue;
                    }
                    let stem = match sandhi {
                        None => built.clone(),
                        Some((old, new)) => match built.strip_suffix(new.as_str()) {
                            Some(head) => format!("{head}{old}"),
                            None => continue,
                        },
                    };
                    if stem.is_empty() {
                        continue;
                    }
                    let mut s2 = seq.clone();
                    s2.push(i);
                    next.push((format!("{stem}{surface}"), s2));
                }
            }
            frontier = next;
        }
    }
    out.sort();
    out.dedup();
    out
}
