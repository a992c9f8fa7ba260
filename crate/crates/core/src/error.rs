use alloc::string::String;
use core::fmt;

/// Errors raised while loading the resource tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableError {
    MissingFile {
        file: String,
    },
    MalformedRow {
        file: String,
        line: usize,
        reason: String,
    },
    DuplicateKey {
        file: String,
        key: String,
    },
    ReservedCharInGloss {
        file: String,
        line: usize,
    },
    /// A construction rule references a pattern slot it does not have, or
    /// fails to keep every slot exactly once.
    RuleReference {
        line: usize,
        reason: String,
    },
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableError::MissingFile { file } => write!(f, "missing table file `{file}`"),
            TableError::MalformedRow { file, line, reason } => {
                write!(f, "{file}:{line}: malformed row: {reason}")
            }
            TableError::DuplicateKey { file, key } => write!(f, "{file}: duplicate key {key}"),
            TableError::ReservedCharInGloss { file, line } => {
                write!(f, "{file}:{line}: gloss contains a reserved notation character")
            }
            TableError::RuleReference { line, reason } => {
                write!(f, "rules.txt:{line}: bad slot reference: {reason}")
            }
        }
    }
}

impl core::error::Error for TableError {}

/// Errors raised while loading the stage-2 knowledge tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KbError {
    MalformedRow { file: String, line: usize, reason: String },
    UndeclaredMarker { line: usize, marker: String },
}

impl fmt::Display for KbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KbError::MalformedRow { file, line, reason } => {
                write!(f, "{file}:{line}: malformed row: {reason}")
            }
            KbError::UndeclaredMarker { line, marker } => {
                write!(f, "frames.tsv:{line}: marker `{marker}` is not in the declared marker set")
            }
        }
    }
}

impl core::error::Error for KbError {}

/// Ill-formed notation. `position` is a byte offset into the parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub expected: &'static str,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: expected {}", self.position, self.expected)
    }
}

impl core::error::Error for ParseError {}
