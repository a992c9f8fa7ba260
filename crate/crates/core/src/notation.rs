//! Renderer and parser for the intermediate-language notation.
//!
//! ```text
//! sentence   := token (' ' token)*
//! token      := '!' opaque            unknown word, passed through verbatim
//!             | unit ('_' unit)* ('{' features '}')? punct?
//! unit       := lexeme mark? '*'?
//!             | '[' lexeme ('|' lexeme)+ ']' mark? '*'?
//!             | '*'                   placeholder
//! mark       := '`' | '-'
//! punct      := '?' | '.' | ','
//! ```
//!
//! Lexemes never contain a reserved character, so every reserved character in
//! a rendered string is syntax. The body of an unknown token is opaque: it is
//! everything after `!` up to the token's final punctuation character.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::ParseError;
use crate::transfer::{AnnotatedToken, Origin, Provenance, Unit, UnitBody};

/// Characters that may never appear inside a lexeme.
pub const RESERVED: &[char] = &['_', '[', ']', '{', '}', '|', '*', '`', '-', '!', '?', '.', ','];

/// Unit-final marks that keep apart source distinctions a target lexeme
/// would otherwise merge (`vaha`` "he" vs `vaha-` "that").
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SenseMark {
    Backtick,
    Hyphen,
}

impl SenseMark {
    pub fn as_char(self) -> char {
        match self {
            SenseMark::Backtick => '`',
            SenseMark::Hyphen => '-',
        }
    }

    pub fn from_char(c: char) -> Option<SenseMark> {
        match c {
            '`' => Some(SenseMark::Backtick),
            '-' => Some(SenseMark::Hyphen),
            _ => None,
        }
    }
}

/// Token-final punctuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Punct {
    Question,
    Period,
    Comma,
}

impl Punct {
    pub fn as_char(self) -> char {
        match self {
            Punct::Question => '?',
            Punct::Period => '.',
            Punct::Comma => ',',
        }
    }

    pub fn from_char(c: char) -> Option<Punct> {
        match c {
            '?' => Some(Punct::Question),
            '.' => Some(Punct::Period),
            ',' => Some(Punct::Comma),
            _ => None,
        }
    }
}

pub fn is_lexeme_char(c: char) -> bool {
    !c.is_whitespace() && !c.is_control() && !RESERVED.contains(&c)
}

pub fn is_lexeme(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_lexeme_char)
}

/// Feature text inside `{...}`: opaque, but must not close early or split
/// the token.
pub fn is_feature_text(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c != '{' && c != '}' && !c.is_whitespace() && !c.is_control())
}

pub fn render_unit(unit: &Unit, out: &mut String) {
    match &unit.body {
        UnitBody::Lexeme(text) => out.push_str(text),
        UnitBody::AltSet(members) => {
            out.push('[');
            for (i, m) in members.iter().enumerate() {
                if i > 0 {
                    out.push('|');
                }
                out.push_str(m);
            }
            out.push(']');
        }
        UnitBody::Placeholder => {}
    }
    if let Some(mark) = unit.mark {
        out.push(mark.as_char());
    }
    if unit.star {
        out.push('*');
    }
}

pub fn render_token(token: &AnnotatedToken, out: &mut String) {
    if token.unknown {
        out.push('!');
        if let Some(UnitBody::Lexeme(surface)) = token.units.first().map(|u| &u.body) {
            out.push_str(surface);
        }
    } else {
        for (i, unit) in token.units.iter().enumerate() {
            if i > 0 {
                out.push('_');
            }
            render_unit(unit, out);
        }
        if let Some(features) = &token.annotation {
            out.push('{');
            out.push_str(features);
            out.push('}');
        }
    }
    if let Some(p) = token.trailing_punct {
        out.push(p.as_char());
    }
}

pub fn render_sentence(tokens: &[AnnotatedToken]) -> String {
    let mut out = String::new();
    for (i, token) in tokens.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        render_token(token, &mut out);
    }
    out
}

pub fn render_single(token: &AnnotatedToken) -> String {
    let mut out = String::new();
    render_token(token, &mut out);
    out
}

/// Parses one line of notation. Tokens come back with [`Provenance::Parsed`]
/// and unit origin [`Origin::Parsed`]: parsing recovers structure only.
pub fn parse_sentence(text: &str) -> Result<Vec<AnnotatedToken>, ParseError> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut tokens = Vec::new();
    let mut offset = 0;
    for piece in text.split(' ') {
        tokens.push(parse_token_at(piece, offset)?);
        offset += piece.len() + 1;
    }
    Ok(tokens)
}

pub fn parse_token(text: &str) -> Result<AnnotatedToken, ParseError> {
    parse_token_at(text, 0)
}

/// Parses a `_`-joined unit sequence with no annotation or punctuation, as
/// used in `tam.tsv` and in construction-rule emit lists.
pub fn parse_units(text: &str) -> Result<Vec<Unit>, ParseError> {
    let mut cursor = Cursor { text, pos: 0, base: 0 };
    let units = cursor.units()?;
    if cursor.pos != text.len() {
        return Err(cursor.error("end of units"));
    }
    Ok(units)
}

fn parse_token_at(text: &str, base: usize) -> Result<AnnotatedToken, ParseError> {
    if text.is_empty() {
        return Err(ParseError { position: base, expected: "token" });
    }
    if text.chars().any(|c| c.is_whitespace()) {
        return Err(ParseError { position: base, expected: "single-space token separator" });
    }
    if let Some(body) = text.strip_prefix('!') {
        let (surface, punct) = split_trailing_punct(body);
        if surface.is_empty() {
            return Err(ParseError { position: base + 1, expected: "unknown-token body" });
        }
        return Ok(AnnotatedToken {
            units: alloc::vec![Unit::lexeme(surface).with_origin(Origin::Parsed)],
            annotation: None,
            trailing_punct: punct,
            provenance: Provenance::Parsed,
            unknown: true,
            construction: None,
        });
    }

    let mut cursor = Cursor { text, pos: 0, base };
    let units = cursor.units()?;
    let annotation = if cursor.peek() == Some('{') {
        cursor.bump();
        let start = cursor.pos;
        let end = text[start..].find('}').map(|i| start + i).ok_or_else(|| cursor.error("`}`"))?;
        let features = &text[start..end];
        if !is_feature_text(features) {
            return Err(ParseError { position: base + start, expected: "feature text" });
        }
        cursor.pos = end + 1;
        Some(features.to_owned())
    } else {
        None
    };
    let trailing_punct = match cursor.peek().and_then(Punct::from_char) {
        Some(p) => {
            cursor.bump();
            Some(p)
        }
        None => None,
    };
    if cursor.pos != text.len() {
        return Err(cursor.error("end of token"));
    }
    Ok(AnnotatedToken {
        units,
        annotation,
        trailing_punct,
        provenance: Provenance::Parsed,
        unknown: false,
        construction: None,
    })
}

/// Strips one final punctuation character, unless that would leave nothing.
/// The tokenizer applies the same rule, so unknown tokens round-trip.
pub fn split_trailing_punct(s: &str) -> (&str, Option<Punct>) {
    if let Some(last) = s.chars().last() {
        if let Some(p) = Punct::from_char(last) {
            let rest = &s[..s.len() - last.len_utf8()];
            if !rest.is_empty() {
                return (rest, Some(p));
            }
        }
    }
    (s, None)
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    base: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn error(&self, expected: &'static str) -> ParseError {
        ParseError { position: self.base + self.pos, expected }
    }

    fn lexeme(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if is_lexeme_char(c)) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error("lexeme"));
        }
        Ok(self.text[start..self.pos].to_owned())
    }

    fn units(&mut self) -> Result<Vec<Unit>, ParseError> {
        let mut units = Vec::new();
        loop {
            units.push(self.unit()?);
            if self.peek() == Some('_') {
                self.bump();
            } else {
                return Ok(units);
            }
        }
    }

    fn unit(&mut self) -> Result<Unit, ParseError> {
        let body = match self.peek() {
            Some('*') => {
                self.bump();
                return Ok(Unit::placeholder(Origin::Parsed));
            }
            Some('[') => {
                let open = self.pos;
                self.bump();
                let mut members = alloc::vec![self.lexeme()?];
                while self.peek() == Some('|') {
                    self.bump();
                    members.push(self.lexeme()?);
                }
                if self.peek() != Some(']') {
                    return Err(self.error("`|` or `]`"));
                }
                self.bump();
                if members.len() < 2 || has_duplicates(&members) {
                    return Err(ParseError {
                        position: self.base + open,
                        expected: "at least two distinct alternatives",
                    });
                }
                UnitBody::AltSet(members)
            }
            _ => UnitBody::Lexeme(self.lexeme()?),
        };
        let mark = match self.peek().and_then(SenseMark::from_char) {
            Some(m) => {
                self.bump();
                Some(m)
            }
            None => None,
        };
        let star = if self.peek() == Some('*') {
            self.bump();
            true
        } else {
            false
        };
        Ok(Unit { body, mark, star, origin: Origin::Parsed })
    }
}

pub(crate) fn has_duplicates(items: &[String]) -> bool {
    items.iter().enumerate().any(|(i, a)| items[..i].contains(a))
}
