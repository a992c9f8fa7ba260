use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use anusaaraka_core::{KbError, KnowledgeBase, TableError, TableSet, TableSources};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Kb(#[from] KbError),
    #[error("reading {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

fn read(dir: &Path, name: &str) -> Result<Option<String>, LoadError> {
    let path = dir.join(name);
    match fs::read_to_string(&path) {
        Ok(text) => Ok(Some(text)),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(source) => Err(LoadError::Io { path, source }),
    }
}

fn require(dir: &Path, name: &str) -> Result<String, LoadError> {
    read(dir, name)?.ok_or_else(|| TableError::MissingFile { file: name.to_owned() }.into())
}

/// Loads `roots.tsv`, `tam.tsv`, `suffixes.tsv` and `rules.txt` (required)
/// plus `forms.tsv` (optional) from `dir`.
pub fn load_tables(dir: impl AsRef<Path>) -> Result<TableSet, LoadError> {
    let dir = dir.as_ref();
    let roots = require(dir, "roots.tsv")?;
    let tam = require(dir, "tam.tsv")?;
    let suffixes = require(dir, "suffixes.tsv")?;
    let rules = require(dir, "rules.txt")?;
    let forms = read(dir, "forms.tsv")?;
    Ok(TableSet::parse(TableSources {
        roots: &roots,
        tam: &tam,
        suffixes: &suffixes,
        rules: &rules,
        forms: forms.as_deref(),
    })?)
}

/// Loads `frames.tsv` and `freq.tsv` from `dir`; both are optional.
pub fn load_kb(dir: impl AsRef<Path>) -> Result<KnowledgeBase, LoadError> {
    let dir = dir.as_ref();
    let frames = read(dir, "frames.tsv")?;
    let freq = read(dir, "freq.tsv")?;
    Ok(KnowledgeBase::parse(frames.as_deref(), freq.as_deref())?)
}
