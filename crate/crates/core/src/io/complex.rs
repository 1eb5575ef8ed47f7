use std::collections::HashMap;

use super::{is_identifier, tokenize, ParseError, ParseErrorKind, Token};
use crate::cube_complex::{ComplexError, Cube, CubeComplex};

type Kind = ParseErrorKind;

/// Reads `vertex <id>` and `cube <d> <corner>...` records. Vertices must be
/// declared before use.
pub fn parse_complex(text: &str) -> Result<CubeComplex, ParseError> {
    let mut vertices = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut cubes = Vec::new();
    let mut cube_heads: Vec<Token<'_>> = Vec::new();
    let lines = tokenize(text);
    for tokens in &lines {
        let head = tokens[0];
        match head.text {
            "vertex" => {
                let id = tokens.get(1).ok_or_else(|| head.err(Kind::MissingField("vertex id")))?;
                if let Some(extra) = tokens.get(2) {
                    return Err(extra.err(Kind::Unexpected(extra.text.to_string())));
                }
                if !is_identifier(id.text) {
                    return Err(id.err(Kind::Malformed {
                        what: "vertex id",
                        token: id.text.to_string(),
                    }));
                }
                if index.insert(id.text, vertices.len()).is_some() {
                    return Err(id.err(Kind::DuplicateVertex(id.text.to_string())));
                }
                vertices.push(id.text.to_string());
            }
            "cube" => {
                let dim_token = tokens.get(1).ok_or_else(|| head.err(Kind::MissingField("dimension")))?;
                let dim: usize = dim_token.int()?;
                let expected = 1usize.checked_shl(dim as u32).filter(|_| dim < 16).ok_or_else(|| {
                    dim_token.err(Kind::Malformed {
                        what: "dimension",
                        token: dim_token.text.to_string(),
                    })
                })?;
                let corners = &tokens[2..];
                if corners.len() != expected {
                    return Err(head.err(Kind::CornerCount {
                        dim,
                        expected,
                        found: corners.len(),
                    }));
                }
                let ids = corners
                    .iter()
                    .map(|t| {
                        index
                            .get(t.text)
                            .copied()
                            .ok_or_else(|| t.err(Kind::UnknownVertex(t.text.to_string())))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                cubes.push(Cube::new(ids));
                cube_heads.push(head);
            }
            other => return Err(head.err(Kind::UnknownRecord(other.to_string()))),
        }
    }
    CubeComplex::new(vertices, cubes).map_err(|e| {
        let at = match &e {
            ComplexError::CornerCount { cube, .. }
            | ComplexError::UnknownVertex { cube, .. }
            | ComplexError::DegenerateEdge { cube, .. } => cube_heads.get(*cube),
            _ => None,
        };
        ParseError {
            line: at.map_or(0, |t| t.line),
            column: at.map_or(0, |t| t.column),
            kind: Kind::Invalid(e.to_string()),
        }
    })
}

/// Vertices and cubes in sorted order.
pub fn serialize_complex(c: &CubeComplex) -> String {
    c.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_round_trip() {
        let text = "vertex a\nvertex b\nvertex c\nvertex d\ncube 2 a b c d\n";
        let c = parse_complex(text).unwrap();
        assert_eq!(c.squares().len(), 1);
        assert_eq!(c.edges().len(), 4);
        assert_eq!(serialize_complex(&c), text);
    }

    #[test]
    fn errors_are_located() {
        let e = parse_complex("vertex a\nvertex b\ncube 1 a c").unwrap_err();
        assert_eq!((e.line, e.column, e.code()), (3, 10, "unknown-vertex"));
        let e = parse_complex("vertex a\ncube 2 a a").unwrap_err();
        assert_eq!((e.line, e.code()), (2, "corner-count"));
        let e = parse_complex("vertex a\nvertex b\ncube 1 a a").unwrap_err();
        assert_eq!((e.line, e.code()), (3, "invalid"));
        let e = parse_complex("vertex a\nvertex a").unwrap_err();
        assert_eq!(e.code(), "duplicate-vertex");
    }
}
