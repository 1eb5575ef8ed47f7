//! Line-oriented text formats for manifolds, wallspaces and cube complexes.
//!
//! All formats use one record per line, whitespace-separated tokens and `#`
//! comments. Errors carry the 1-based line and column of the offending token
//! and a short stable code.

mod complex;
mod manifold;
mod walls;

use std::fmt;

use thiserror::Error;

pub use complex::{parse_complex, serialize_complex};
pub use manifold::{parse_manifold, serialize_manifold};
pub use walls::{parse_wallspace, serialize_wallspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown record type {0}")]
    UnknownRecord(String),
    #[error("unknown key {0}")]
    UnknownKey(String),
    #[error("key {0} given twice")]
    DuplicateKey(String),
    #[error("missing {0}")]
    MissingField(&'static str),
    #[error("unexpected token {0}")]
    Unexpected(String),
    #[error("not an integer: {0}")]
    BadInteger(String),
    #[error("malformed {what}: {token}")]
    Malformed { what: &'static str, token: String },
    #[error("block {0} declared twice")]
    DuplicateBlock(String),
    #[error("torus {0} declared twice")]
    DuplicateTorus(String),
    #[error("unknown block {0}")]
    UnknownBlock(String),
    #[error("end {end} out of range; block has {num_boundary} boundary tori")]
    EndOutOfRange { end: String, num_boundary: usize },
    #[error("end {0} used more than once")]
    RepeatedEnd(String),
    #[error("gluing determinant {0} is not +1 or -1")]
    Determinant(i64),
    #[error("unknown geometry {0}")]
    UnknownGeometry(String),
    #[error("{0}")]
    Invalid(String),
    #[error("vertex {0} declared twice")]
    DuplicateVertex(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("a {dim}-cube needs {expected} corners, found {found}")]
    CornerCount { dim: usize, expected: usize, found: usize },
}

impl ParseErrorKind {
    /// Stable short code, used by the negative catalog.
    pub fn code(&self) -> &'static str {
        match self {
            ParseErrorKind::UnknownRecord(_) => "unknown-record",
            ParseErrorKind::UnknownKey(_) => "unknown-key",
            ParseErrorKind::DuplicateKey(_) => "duplicate-key",
            ParseErrorKind::MissingField(_) => "missing-field",
            ParseErrorKind::Unexpected(_) => "unexpected-token",
            ParseErrorKind::BadInteger(_) => "bad-integer",
            ParseErrorKind::Malformed { .. } => "malformed",
            ParseErrorKind::DuplicateBlock(_) => "duplicate-block",
            ParseErrorKind::DuplicateTorus(_) => "duplicate-torus",
            ParseErrorKind::UnknownBlock(_) => "unknown-block",
            ParseErrorKind::EndOutOfRange { .. } => "end-out-of-range",
            ParseErrorKind::RepeatedEnd(_) => "repeated-end",
            ParseErrorKind::Determinant(_) => "determinant",
            ParseErrorKind::UnknownGeometry(_) => "unknown-geometry",
            ParseErrorKind::Invalid(_) => "invalid",
            ParseErrorKind::DuplicateVertex(_) => "duplicate-vertex",
            ParseErrorKind::UnknownVertex(_) => "unknown-vertex",
            ParseErrorKind::CornerCount { .. } => "corner-count",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// 1-based; 0 when the problem concerns the whole input.
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        self.kind.code()
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "error[{}]: {}", self.code(), self.kind)
        } else {
            write!(f, "line {}, column {}: error[{}]: {}", self.line, self.column, self.code(), self.kind)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub column: usize,
}

impl Token<'_> {
    pub fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind,
        }
    }

    pub fn int<T: std::str::FromStr>(&self) -> Result<T, ParseError> {
        self.text
            .parse()
            .map_err(|_| self.err(ParseErrorKind::BadInteger(self.text.to_string())))
    }

    /// A sub-token starting `offset` bytes in.
    pub fn slice(&self, offset: usize, len: usize) -> Token<'_> {
        Token {
            text: &self.text[offset..offset + len],
            line: self.line,
            column: self.column + self.text[..offset].chars().count(),
        }
    }
}

/// Non-empty lines split into tokens, comments removed.
pub(crate) fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &content[s..pos],
                        line: i + 1,
                        column: content[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push(tokens);
        }
    }
    out
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// Splits `key=value`.
pub(crate) fn key_value<'a>(t: &Token<'a>) -> Option<(Token<'a>, Token<'a>)> {
    let eq = t.text.find('=')?;
    let key = Token {
        text: &t.text[..eq],
        line: t.line,
        column: t.column,
    };
    let value = Token {
        text: &t.text[eq + 1..],
        line: t.line,
        column: t.column + t.text[..=eq].chars().count(),
    };
    Some((key, value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_carry_positions() {
        let lines = tokenize("# header\n  a  bc # trailing\n\nd=1");
        assert_eq!(lines.len(), 2);
        assert_eq!((lines[0][1].text, lines[0][1].line, lines[0][1].column), ("bc", 2, 6));
        let (k, v) = key_value(&lines[1][0]).unwrap();
        assert_eq!((k.text, v.text, v.column), ("d", "1", 3));
    }
}
