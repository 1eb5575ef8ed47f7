use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write;

use super::{is_identifier, key_value, tokenize, ParseError, ParseErrorKind, Token};
use crate::manifold::{
    validate, Block, Geometry, GluingMatrix, HyperbolicBlockData, Issue, JsjTorus, ManifoldGraph,
    SeifertBlockData, Slope, TorusEnd,
};

type Kind = ParseErrorKind;

fn parse_pair(t: &Token<'_>) -> Result<(i64, i64), ParseError> {
    let malformed = || {
        t.err(Kind::Malformed {
            what: "pair",
            token: t.text.to_string(),
        })
    };
    let inner = t
        .text
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(malformed)?;
    let comma = inner.find(',').ok_or_else(malformed)?;
    let a = t.slice(1, comma);
    let b = t.slice(comma + 2, inner.len() - comma - 1);
    Ok((a.int()?, b.int()?))
}

/// `(a,b)(c,d)...`, possibly empty.
fn parse_pair_list(t: &Token<'_>) -> Result<Vec<(i64, i64)>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    while offset < t.text.len() {
        let end = t.text[offset..].find(')').map(|e| offset + e + 1).ok_or_else(|| {
            t.err(Kind::Malformed {
                what: "pair list",
                token: t.text.to_string(),
            })
        })?;
        out.push(parse_pair(&t.slice(offset, end - offset))?);
        offset = end;
    }
    Ok(out)
}

fn parse_slope(t: &Token<'_>) -> Result<Slope, ParseError> {
    let (p, q) = parse_pair(t)?;
    Slope::new(p, q).map_err(|e| t.err(Kind::Invalid(e.to_string())))
}

fn parse_end<'a>(t: &Token<'a>) -> Result<(Token<'a>, usize), ParseError> {
    let dot = t.text.rfind('.').ok_or_else(|| {
        t.err(Kind::Malformed {
            what: "torus end",
            token: t.text.to_string(),
        })
    })?;
    let block = Token {
        text: &t.text[..dot],
        line: t.line,
        column: t.column,
    };
    let index = t.slice(dot + 1, t.text.len() - dot - 1).int()?;
    Ok((block, index))
}

struct Fields<'a> {
    values: BTreeMap<&'a str, Token<'a>>,
    flags: Vec<Token<'a>>,
}

fn fields<'a>(tokens: &[Token<'a>]) -> Result<Fields<'a>, ParseError> {
    let mut values = BTreeMap::new();
    let mut flags = Vec::new();
    for t in tokens {
        match key_value(t) {
            Some((k, v)) => {
                if values.insert(k.text, v).is_some() {
                    return Err(k.err(Kind::DuplicateKey(k.text.to_string())));
                }
            }
            None => flags.push(*t),
        }
    }
    Ok(Fields { values, flags })
}

fn expect_len<'a>(tokens: &[Token<'a>], at: usize, what: &'static str) -> Result<Token<'a>, ParseError> {
    tokens.get(at).copied().ok_or_else(|| {
        let last = tokens.last().expect("records are nonempty");
        ParseError {
            line: last.line,
            column: last.column + last.text.chars().count(),
            kind: Kind::MissingField(what),
        }
    })
}

fn parse_seifert(head: &Token<'_>, rest: &[Token<'_>]) -> Result<SeifertBlockData, ParseError> {
    let f = fields(rest)?;
    let mut thin = false;
    for flag in &f.flags {
        if flag.text == "thin" && !thin {
            thin = true;
        } else {
            return Err(flag.err(Kind::Unexpected(flag.text.to_string())));
        }
    }
    let mut genus = None;
    let mut boundaries = None;
    let mut exceptional = Vec::new();
    let mut b = 0;
    for (key, value) in &f.values {
        match *key {
            "genus" => genus = Some(value.int()?),
            "boundaries" => boundaries = Some(value.int()?),
            "exceptional" => exceptional = parse_pair_list(value)?,
            "b" => b = value.int()?,
            other => {
                return Err(ParseError {
                    line: value.line,
                    column: value.column - other.chars().count() - 1,
                    kind: Kind::UnknownKey(other.to_string()),
                })
            }
        }
    }
    let missing = |what| ParseError {
        line: head.line,
        column: head.column,
        kind: Kind::MissingField(what),
    };
    let mut data = SeifertBlockData::new(
        genus.ok_or_else(|| missing("genus"))?,
        boundaries.ok_or_else(|| missing("boundaries"))?,
        &exceptional,
        b,
    );
    data.is_thin = thin;
    Ok(data)
}

fn parse_hyperbolic(head: &Token<'_>, rest: &[Token<'_>]) -> Result<HyperbolicBlockData, ParseError> {
    let f = fields(rest)?;
    if let Some(flag) = f.flags.first() {
        return Err(flag.err(Kind::Unexpected(flag.text.to_string())));
    }
    let mut data = HyperbolicBlockData::default();
    let mut boundaries = None;
    for (key, value) in &f.values {
        let key_token = Token {
            text: key,
            line: value.line,
            column: value.column - key.chars().count() - 1,
        };
        if *key == "boundaries" {
            boundaries = Some(value.int()?);
        } else if let Some(index) = key.strip_prefix("frame") {
            let index: usize = key_token.slice(5, index.len()).int()?;
            let bar = value.text.find('|').ok_or_else(|| {
                value.err(Kind::Malformed {
                    what: "framing",
                    token: value.text.to_string(),
                })
            })?;
            let c = parse_slope(&value.slice(0, bar))?;
            let d = parse_slope(&value.slice(bar + 1, value.text.len() - bar - 1))?;
            data.framing.insert(index, (c, d));
        } else {
            return Err(key_token.err(Kind::UnknownKey(key.to_string())));
        }
    }
    data.num_boundary = boundaries.ok_or_else(|| head.err(Kind::MissingField("boundaries")))?;
    Ok(data)
}

struct EndRef<'a> {
    token: Token<'a>,
    block: Token<'a>,
    index: usize,
}

/// Parses and validates a manifold description; the first problem is reported.
pub fn parse_manifold(text: &str) -> Result<ManifoldGraph, ParseError> {
    let mut m = ManifoldGraph::default();
    let mut block_lines: HashMap<String, Token<'_>> = HashMap::new();
    let mut torus_lines: HashMap<String, Token<'_>> = HashMap::new();
    let mut geometry_line: Option<Token<'_>> = None;
    let mut refs: Vec<EndRef<'_>> = Vec::new();

    let lines = tokenize(text);
    for tokens in &lines {
        let head = tokens[0];
        match head.text {
            "block" => {
                let id = expect_len(tokens, 1, "block id")?;
                if !is_identifier(id.text) {
                    return Err(id.err(Kind::Malformed {
                        what: "block id",
                        token: id.text.to_string(),
                    }));
                }
                let kind = expect_len(tokens, 2, "block type")?;
                let block = match kind.text {
                    "seifert" => Block::Seifert(parse_seifert(&kind, &tokens[3..])?),
                    "hyperbolic" => Block::Hyperbolic(parse_hyperbolic(&kind, &tokens[3..])?),
                    other => return Err(kind.err(Kind::Unexpected(other.to_string()))),
                };
                if m.blocks.insert(id.text.to_string(), block).is_some() {
                    return Err(id.err(Kind::DuplicateBlock(id.text.to_string())));
                }
                block_lines.insert(id.text.to_string(), head);
            }
            "torus" => {
                let id = expect_len(tokens, 1, "torus id")?;
                if !is_identifier(id.text) {
                    return Err(id.err(Kind::Malformed {
                        what: "torus id",
                        token: id.text.to_string(),
                    }));
                }
                let a = expect_len(tokens, 2, "first end")?;
                let b = expect_len(tokens, 3, "second end")?;
                let glue_token = expect_len(tokens, 4, "glue")?;
                if let Some(extra) = tokens.get(5) {
                    return Err(extra.err(Kind::Unexpected(extra.text.to_string())));
                }
                let (_, value) = key_value(&glue_token)
                    .filter(|(k, _)| k.text == "glue")
                    .ok_or_else(|| glue_token.err(Kind::MissingField("glue")))?;
                let parts: Vec<&str> = value.text.split(',').collect();
                if parts.len() != 4 {
                    return Err(value.err(Kind::Malformed {
                        what: "glue",
                        token: value.text.to_string(),
                    }));
                }
                let mut entries = [0i64; 4];
                let mut offset = 0;
                for (slot, part) in entries.iter_mut().zip(&parts) {
                    *slot = value.slice(offset, part.len()).int()?;
                    offset += part.len() + 1;
                }
                let glue = GluingMatrix::new([[entries[0], entries[1]], [entries[2], entries[3]]])
                    .map_err(|_| value.err(Kind::Determinant(entries[0] * entries[3] - entries[1] * entries[2])))?;
                if torus_lines.insert(id.text.to_string(), head).is_some() {
                    return Err(id.err(Kind::DuplicateTorus(id.text.to_string())));
                }
                let (ba, ia) = parse_end(&a)?;
                let (bb, ib) = parse_end(&b)?;
                refs.push(EndRef { token: a, block: ba, index: ia });
                refs.push(EndRef { token: b, block: bb, index: ib });
                m.tori.push(JsjTorus {
                    id: id.text.to_string(),
                    a: TorusEnd::new(ba.text, ia),
                    b: TorusEnd::new(bb.text, ib),
                    glue,
                });
            }
            "boundary" => {
                let end = expect_len(tokens, 1, "torus end")?;
                if let Some(extra) = tokens.get(2) {
                    return Err(extra.err(Kind::Unexpected(extra.text.to_string())));
                }
                let (block, index) = parse_end(&end)?;
                refs.push(EndRef { token: end, block, index });
                m.boundary.push(TorusEnd::new(block.text, index));
            }
            "geometry" => {
                let label = expect_len(tokens, 1, "geometry label")?;
                if let Some(extra) = tokens.get(2) {
                    return Err(extra.err(Kind::Unexpected(extra.text.to_string())));
                }
                if geometry_line.is_some() {
                    return Err(head.err(Kind::DuplicateKey("geometry".into())));
                }
                let g: Geometry = label
                    .text
                    .parse()
                    .map_err(|_| label.err(Kind::UnknownGeometry(label.text.to_string())))?;
                m.geometry = Some(g);
                geometry_line = Some(head);
            }
            other => return Err(head.err(Kind::UnknownRecord(other.to_string()))),
        }
    }

    let mut used = HashSet::new();
    for r in &refs {
        let Some(block) = m.blocks.get(r.block.text) else {
            return Err(r.block.err(Kind::UnknownBlock(r.block.text.to_string())));
        };
        if r.index >= block.num_boundary() {
            return Err(r.token.err(Kind::EndOutOfRange {
                end: r.token.text.to_string(),
                num_boundary: block.num_boundary(),
            }));
        }
        if !used.insert((r.block.text, r.index)) {
            return Err(r.token.err(Kind::RepeatedEnd(r.token.text.to_string())));
        }
    }

    let report = validate(&m);
    if let Some(issue) = report.issues.first() {
        let at = match issue {
            Issue::UnusedEnd(e) => block_lines.get(&e.block),
            Issue::ThinShape(b) | Issue::ClosedHyperbolicWithoutGeometry(b) => block_lines.get(b),
            Issue::SmallMultiplicity { block, .. }
            | Issue::DegenerateFraming { block, .. }
            | Issue::FramingOutOfRange { block, .. } => block_lines.get(block),
            Issue::DuplicateTorusId(t) | Issue::BadDeterminant { torus: t, .. } => torus_lines.get(t),
            Issue::GeometryWithTori | Issue::GeometryWithSeveralBlocks => geometry_line.as_ref(),
            _ => None,
        };
        return Err(ParseError {
            line: at.map_or(0, |t| t.line),
            column: at.map_or(0, |t| t.column),
            kind: Kind::Invalid(issue.to_string()),
        });
    }
    Ok(m)
}

pub fn serialize_manifold(m: &ManifoldGraph) -> String {
    let mut out = String::new();
    for (id, block) in &m.blocks {
        match block {
            Block::Seifert(s) => {
                let ex: String = s.exceptional.iter().map(|e| format!("({},{})", e.a, e.b)).collect();
                let _ = write!(
                    out,
                    "block {id} seifert genus={} boundaries={} exceptional={ex} b={}",
                    s.genus, s.num_boundary, s.section_obstruction
                );
                if s.is_thin {
                    out.push_str(" thin");
                }
            }
            Block::Hyperbolic(h) => {
                let _ = write!(out, "block {id} hyperbolic boundaries={}", h.num_boundary);
                for (i, (c, d)) in &h.framing {
                    let _ = write!(out, " frame{i}={c}|{d}");
                }
            }
        }
        out.push('\n');
    }
    for t in &m.tori {
        let _ = writeln!(out, "torus {} {} {} glue={}", t.id, t.a, t.b, t.glue);
    }
    for e in &m.boundary {
        let _ = writeln!(out, "boundary {e}");
    }
    if let Some(g) = m.geometry {
        let _ = writeln!(out, "geometry {g}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_BLOCK: &str = "\
# trefoil complement glued to a hyperbolic piece
block S seifert genus=0 boundaries=1 exceptional=(2,1)(3,1) b=0
block H hyperbolic boundaries=1 frame0=(1,0)|(0,1)
torus T S.0 H.0 glue=0,1,1,0
";

    fn err(text: &str) -> ParseError {
        parse_manifold(text).unwrap_err()
    }

    #[test]
    fn minimal_two_block_file() {
        let m = parse_manifold(TWO_BLOCK).unwrap();
        assert_eq!(m.blocks.len(), 2);
        assert_eq!(m.tori.len(), 1);
        assert_eq!(parse_manifold(&serialize_manifold(&m)).unwrap(), m);
    }

    #[test]
    fn determinant_error_points_at_glue() {
        let text = TWO_BLOCK.replace("glue=0,1,1,0", "glue=1,0,0,2");
        let e = err(&text);
        assert_eq!((e.line, e.column, e.code()), (4, 22, "determinant"));
        assert_eq!(e.kind, ParseErrorKind::Determinant(2));
    }

    #[test]
    fn repeated_boundary() {
        let text = "block S seifert genus=0 boundaries=1 b=0\nboundary S.0\nboundary S.0\n";
        let e = err(text);
        assert_eq!((e.line, e.code()), (3, "repeated-end"));
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(err("blok S seifert").code(), "unknown-record");
        assert_eq!(err("block S seifert genus=x boundaries=1").code(), "bad-integer");
        assert_eq!(err("block S seifert genus=0").code(), "missing-field");
        assert_eq!(err("block S seifert genus=0 boundaries=0 colour=3").code(), "unknown-key");
        assert_eq!(err("block S seifert genus=0 boundaries=0 genus=1").code(), "duplicate-key");
        assert_eq!(err("block S seifert genus=0 boundaries=0 exceptional=(2,1").code(), "malformed");
        let e = err("block S seifert genus=0 boundaries=0 exceptional=(2,x)");
        assert_eq!((e.code(), e.column), ("bad-integer", 53));
        assert_eq!(err("block S seifert genus=0 boundaries=1\nboundary R.0").code(), "unknown-block");
        assert_eq!(err("block S seifert genus=0 boundaries=1\nboundary S.1").code(), "end-out-of-range");
        assert_eq!(err("block S hyperbolic boundaries=0\ngeometry Flat").code(), "unknown-geometry");
        let e = err("block S seifert genus=0 boundaries=1 exceptional=(1,1)\nboundary S.0");
        assert_eq!((e.line, e.code()), (1, "invalid"));
    }

    #[test]
    fn thin_and_geometry_round_trip() {
        let text = "block N seifert genus=0 boundaries=2 exceptional= b=0 thin\ntorus T N.1 N.0 glue=2,1,1,1\n";
        let m = parse_manifold(text).unwrap();
        assert_eq!(serialize_manifold(&m), text);
        let text = "block M hyperbolic boundaries=0\ngeometry H3\n";
        assert_eq!(serialize_manifold(&parse_manifold(text).unwrap()), text);
    }
}
