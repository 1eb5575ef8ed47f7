use std::collections::BTreeSet;
use std::fmt::Write;

use super::{is_identifier, key_value, tokenize, ParseError, ParseErrorKind, Token};
use crate::wallspace::{Wall, Wallspace, WallspaceError};

type Kind = ParseErrorKind;

fn parse_set(t: &Token<'_>) -> Result<BTreeSet<usize>, ParseError> {
    let mut out = BTreeSet::new();
    let mut offset = 0;
    for part in t.text.split(',') {
        if !part.is_empty() {
            out.insert(t.slice(offset, part.len()).int()?);
        }
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Reads `chambers <n>` followed by `wall <id> U=<list> V=<list>` records,
/// where lists are comma separated chamber indices.
pub fn parse_wallspace(text: &str) -> Result<Wallspace, ParseError> {
    let mut chambers: Option<usize> = None;
    let mut walls = Vec::new();
    let mut heads: Vec<Token<'_>> = Vec::new();
    let lines = tokenize(text);
    for tokens in &lines {
        let head = tokens[0];
        match head.text {
            "chambers" => {
                let n = tokens.get(1).ok_or_else(|| head.err(Kind::MissingField("chamber count")))?;
                if let Some(extra) = tokens.get(2) {
                    return Err(extra.err(Kind::Unexpected(extra.text.to_string())));
                }
                if chambers.is_some() {
                    return Err(head.err(Kind::DuplicateKey("chambers".into())));
                }
                chambers = Some(n.int()?);
            }
            "wall" => {
                let id = tokens.get(1).ok_or_else(|| head.err(Kind::MissingField("wall id")))?;
                if !is_identifier(id.text) {
                    return Err(id.err(Kind::Malformed {
                        what: "wall id",
                        token: id.text.to_string(),
                    }));
                }
                let (mut u, mut v) = (None, None);
                for t in &tokens[2..] {
                    let (key, value) = key_value(t).ok_or_else(|| t.err(Kind::Unexpected(t.text.to_string())))?;
                    let slot = match key.text {
                        "U" => &mut u,
                        "V" => &mut v,
                        other => return Err(key.err(Kind::UnknownKey(other.to_string()))),
                    };
                    if slot.replace(parse_set(&value)?).is_some() {
                        return Err(key.err(Kind::DuplicateKey(key.text.to_string())));
                    }
                }
                walls.push(Wall {
                    id: id.text.to_string(),
                    u: u.ok_or_else(|| head.err(Kind::MissingField("U")))?,
                    v: v.ok_or_else(|| head.err(Kind::MissingField("V")))?,
                });
                heads.push(head);
            }
            other => return Err(head.err(Kind::UnknownRecord(other.to_string()))),
        }
    }
    let chambers = chambers.ok_or(ParseError {
        line: 0,
        column: 0,
        kind: Kind::MissingField("chambers"),
    })?;
    Wallspace::new(chambers, walls.clone()).map_err(|e| {
        let wall = match &e {
            WallspaceError::DuplicateWall(w)
            | WallspaceError::NotCovering(w)
            | WallspaceError::EmptyHalfspace(w)
            | WallspaceError::Degenerate(w)
            | WallspaceError::RepeatedWall(_, w)
            | WallspaceError::ChamberOutOfRange { wall: w, .. } => Some(w),
            _ => None,
        };
        let at = wall.and_then(|w| walls.iter().rposition(|x| &x.id == w)).map(|i| heads[i]);
        ParseError {
            line: at.map_or(0, |t| t.line),
            column: at.map_or(0, |t| t.column),
            kind: Kind::Invalid(e.to_string()),
        }
    })
}

pub fn serialize_wallspace(ws: &Wallspace) -> String {
    let join = |s: &BTreeSet<usize>| s.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let mut out = format!("chambers {}\n", ws.chambers());
    for w in ws.walls() {
        let _ = writeln!(out, "wall {} U={} V={}", w.id, join(&w.u), join(&w.v));
    }
    out
}
