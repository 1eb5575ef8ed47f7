//! Block decompositions of compact 3-manifolds.
//!
//! A [`ManifoldGraph`] records the blocks of a JSJ-style decomposition
//! (Seifert fibered or hyperbolic), the tori along which they are glued and
//! the tori that form the boundary of the manifold.
//!
//! Coordinates: every boundary torus of a Seifert block carries the ordered
//! basis `(section curve d_k, regular fiber h)`, so the fiber is always the
//! slope `(0, 1)`. Boundary tori of hyperbolic blocks carry whatever basis
//! the input declares. A gluing matrix `g` of a torus with ends `a` and `b`
//! maps coordinates on the `a` side to coordinates on the `b` side.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("slope vector (0, 0) has no direction")]
    ZeroVector,
    #[error("boundary index {index} out of range for a block with {num_boundary} boundary tori")]
    IndexOutOfRange { index: usize, num_boundary: usize },
    #[error("gluing matrix has determinant {0}, expected +1 or -1")]
    Determinant(i64),
    #[error("torus {0} has no curves")]
    EmptyCurveSystem(String),
    #[error("unknown torus {0}")]
    UnknownTorus(String),
    #[error("unknown geometry label `{0}`")]
    UnknownGeometry(String),
}

/// An unoriented slope on a based torus: a primitive integer vector up to sign.
///
/// The stored representative has `p > 0`, or `p == 0` and `q == 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    /// The regular fiber `h` of a Seifert block boundary torus.
    pub const FIBER: Slope = Slope { p: 0, q: 1 };
    /// The section curve `d_k` of a Seifert block boundary torus.
    pub const SECTION: Slope = Slope { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Self, ModelError> {
        slope_normalize(p, q)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Canonical representative of the slope through `(p, q)`.
pub fn slope_normalize(p: i64, q: i64) -> Result<Slope, ModelError> {
    if p == 0 && q == 0 {
        return Err(ModelError::ZeroVector);
    }
    let (p, q) = (i128::from(p), i128::from(q));
    let g = p.gcd(&q);
    let (mut p, mut q) = (p / g, q / g);
    if p < 0 || (p == 0 && q < 0) {
        p = -p;
        q = -q;
    }
    // only (i64::MIN, odd) style inputs overflow after the sign flip
    Ok(Slope {
        p: i64::try_from(p).expect("normalized slope fits in i64"),
        q: i64::try_from(q).expect("normalized slope fits in i64"),
    })
}

/// A 2x2 integer matrix identifying the two sides of a torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GluingMatrix {
    entries: [[i64; 2]; 2],
}

impl GluingMatrix {
    pub const IDENTITY: GluingMatrix = GluingMatrix {
        entries: [[1, 0], [0, 1]],
    };

    pub fn new(entries: [[i64; 2]; 2]) -> Result<Self, ModelError> {
        let m = Self { entries };
        match m.determinant() {
            1 | -1 => Ok(m),
            d => Err(ModelError::Determinant(d)),
        }
    }

    /// Builds a matrix without checking the determinant.
    ///
    /// Only useful for describing malformed input; [`validate`] reports it.
    pub fn unchecked(entries: [[i64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.entries
    }

    pub fn determinant(&self) -> i64 {
        let [[a, b], [c, d]] = self.entries;
        a * d - b * c
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.determinant(), 1 | -1)
    }

    pub fn apply(&self, v: (i64, i64)) -> (i64, i64) {
        let [[a, b], [c, d]] = self.entries;
        (a * v.0 + b * v.1, c * v.0 + d * v.1)
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> GluingMatrix {
        let [[a, b], [c, d]] = self.entries;
        let det = self.determinant();
        debug_assert!(det == 1 || det == -1);
        GluingMatrix {
            entries: [[det * d, -det * b], [-det * c, det * a]],
        }
    }

    pub fn compose(&self, other: &GluingMatrix) -> GluingMatrix {
        let [[a, b], [c, d]] = self.entries;
        let [[e, f], [g, h]] = other.entries;
        GluingMatrix {
            entries: [[a * e + b * g, a * f + b * h], [c * e + d * g, c * f + d * h]],
        }
    }

    /// A unimodular matrix sending the slope `s` to the fiber `(0, 1)`.
    pub fn straightening(s: Slope) -> GluingMatrix {
        let (p, q) = (s.p(), s.q());
        let egcd = p.extended_gcd(&q);
        // x*p + y*q = 1 since s is primitive
        let (x, y) = if egcd.gcd < 0 {
            (-egcd.x, -egcd.y)
        } else {
            (egcd.x, egcd.y)
        };
        GluingMatrix {
            entries: [[q, -p], [x, y]],
        }
    }
}

impl fmt::Display for GluingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.entries;
        write!(f, "{a},{b},{c},{d}")
    }
}

/// Expresses `s` in the coordinates on the far side of `g`.
pub fn transport_slope(s: Slope, g: &GluingMatrix) -> Slope {
    let (p, q) = g.apply((s.p(), s.q()));
    slope_normalize(p, q).expect("unimodular matrices have trivial kernel")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExceptionalFiber {
    pub a: i64,
    pub b: i64,
}

/// Seifert invariants of a block with orientable base orbifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertBlockData {
    pub genus: u32,
    pub num_boundary: usize,
    pub exceptional: Vec<ExceptionalFiber>,
    /// Integer Euler term; only meaningful for closed blocks.
    pub section_obstruction: i64,
    pub is_thin: bool,
}

impl SeifertBlockData {
    pub fn new(genus: u32, num_boundary: usize, exceptional: &[(i64, i64)], b: i64) -> Self {
        Self {
            genus,
            num_boundary,
            exceptional: exceptional
                .iter()
                .map(|&(a, b)| ExceptionalFiber { a, b })
                .collect(),
            section_obstruction: b,
            is_thin: false,
        }
    }

    /// A product region `T^2 x I`.
    pub fn thin() -> Self {
        Self {
            genus: 0,
            num_boundary: 2,
            exceptional: Vec::new(),
            section_obstruction: 0,
            is_thin: true,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.num_boundary == 0
    }
}

/// Fiber of a Seifert block on one of its boundary tori, in that torus' basis.
pub fn fiber_slope(b: &SeifertBlockData, boundary_index: usize) -> Result<Slope, ModelError> {
    if boundary_index >= b.num_boundary {
        return Err(ModelError::IndexOutOfRange {
            index: boundary_index,
            num_boundary: b.num_boundary,
        });
    }
    Ok(Slope::FIBER)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HyperbolicBlockData {
    pub num_boundary: usize,
    /// Two distinct slopes on some of the boundary tori, keyed by boundary index.
    pub framing: BTreeMap<usize, (Slope, Slope)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    Seifert(SeifertBlockData),
    Hyperbolic(HyperbolicBlockData),
}

impl Block {
    pub fn num_boundary(&self) -> usize {
        match self {
            Block::Seifert(s) => s.num_boundary,
            Block::Hyperbolic(h) => h.num_boundary,
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        matches!(self, Block::Hyperbolic(_))
    }

    pub fn as_seifert(&self) -> Option<&SeifertBlockData> {
        match self {
            Block::Seifert(s) => Some(s),
            Block::Hyperbolic(_) => None,
        }
    }
}

/// One boundary torus of one block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusEnd {
    pub block: String,
    pub index: usize,
}

impl TorusEnd {
    pub fn new(block: impl Into<String>, index: usize) -> Self {
        Self {
            block: block.into(),
            index,
        }
    }
}

impl fmt::Display for TorusEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.block, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsjTorus {
    pub id: String,
    pub a: TorusEnd,
    pub b: TorusEnd,
    /// Maps coordinates on side `a` to coordinates on side `b`.
    pub glue: GluingMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Geometry {
    H3,
    E3,
    H2xR,
    S2xR,
    S3,
    Sol,
    Nil,
    SL2R,
    SfsWithBoundary,
}

impl Geometry {
    pub const ALL: [Geometry; 9] = [
        Geometry::H3,
        Geometry::E3,
        Geometry::H2xR,
        Geometry::S2xR,
        Geometry::S3,
        Geometry::Sol,
        Geometry::Nil,
        Geometry::SL2R,
        Geometry::SfsWithBoundary,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Geometry::H3 => "H3",
            Geometry::E3 => "E3",
            Geometry::H2xR => "H2xR",
            Geometry::S2xR => "S2xR",
            Geometry::S3 => "S3",
            Geometry::Sol => "Sol",
            Geometry::Nil => "Nil",
            Geometry::SL2R => "SL2R",
            Geometry::SfsWithBoundary => "SFS-with-boundary",
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Geometry {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Geometry::ALL
            .iter()
            .copied()
            .find(|g| g.label() == s)
            .ok_or_else(|| ModelError::UnknownGeometry(s.to_string()))
    }
}

/// Which side of a JSJ torus an end sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ManifoldGraph {
    pub blocks: BTreeMap<String, Block>,
    pub tori: Vec<JsjTorus>,
    pub boundary: Vec<TorusEnd>,
    /// Trusted geometry label, only for single-block manifolds without JSJ tori.
    pub geometry: Option<Geometry>,
}

impl ManifoldGraph {
    pub fn block(&self, id: &str) -> Option<&Block> {
        self.blocks.get(id)
    }

    pub fn torus(&self, id: &str) -> Option<&JsjTorus> {
        self.tori.iter().find(|t| t.id == id)
    }

    /// The JSJ torus having `end` as one of its sides.
    pub fn torus_at(&self, end: &TorusEnd) -> Option<(&JsjTorus, Side)> {
        self.tori.iter().find_map(|t| {
            if &t.a == end {
                Some((t, Side::A))
            } else if &t.b == end {
                Some((t, Side::B))
            } else {
                None
            }
        })
    }

    pub fn is_boundary_end(&self, end: &TorusEnd) -> bool {
        self.boundary.contains(end)
    }

    /// The fiber of the block across `end`, written in the basis of `end`.
    ///
    /// Returns `None` when `end` is not on a JSJ torus or the block across is
    /// hyperbolic.
    pub fn neighbor_fiber(&self, end: &TorusEnd) -> Option<Slope> {
        let (torus, side) = self.torus_at(end)?;
        let far = match side {
            Side::A => &torus.b,
            Side::B => &torus.a,
        };
        let far_block = self.blocks.get(&far.block)?.as_seifert()?;
        let fiber = fiber_slope(far_block, far.index).ok()?;
        let to_local = match side {
            Side::A => torus.glue.inverse(),
            Side::B => torus.glue,
        };
        Some(transport_slope(fiber, &to_local))
    }

    /// Ids of blocks adjacent to `id` through JSJ tori (with repetition).
    pub fn neighbors(&self, id: &str) -> Vec<&str> {
        let mut out = Vec::new();
        for t in &self.tori {
            if t.a.block == id {
                out.push(t.b.block.as_str());
            }
            if t.b.block == id {
                out.push(t.a.block.as_str());
            }
        }
        out
    }

    /// Every torus end of a block that lies on a JSJ torus, ordered by boundary index.
    pub fn jsj_ends(&self, id: &str) -> Vec<TorusEnd> {
        let mut ends: Vec<TorusEnd> = self
            .tori
            .iter()
            .flat_map(|t| [&t.a, &t.b])
            .filter(|e| e.block == id)
            .cloned()
            .collect();
        ends.sort();
        ends
    }
}

/// One violated invariant of a [`ManifoldGraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Issue {
    NoBlocks,
    DuplicateTorusId(String),
    UnknownBlock { reference: String },
    EndOutOfRange { end: TorusEnd, num_boundary: usize },
    DuplicateEnd(TorusEnd),
    UnusedEnd(TorusEnd),
    BadDeterminant { torus: String, determinant: i64 },
    ThinShape(String),
    SmallMultiplicity { block: String, a: i64 },
    DegenerateFraming { block: String, index: usize },
    FramingOutOfRange { block: String, index: usize },
    GeometryWithTori,
    GeometryWithSeveralBlocks,
    ClosedHyperbolicWithoutGeometry(String),
    Disconnected,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::NoBlocks => write!(f, "manifold has no blocks"),
            Issue::DuplicateTorusId(t) => write!(f, "torus id {t} declared twice"),
            Issue::UnknownBlock { reference } => write!(f, "reference to unknown block {reference}"),
            Issue::EndOutOfRange { end, num_boundary } => {
                write!(f, "end {end} out of range (block has {num_boundary} boundary tori)")
            }
            Issue::DuplicateEnd(e) => write!(f, "end {e} used more than once"),
            Issue::UnusedEnd(e) => write!(f, "end {e} is neither glued nor declared boundary"),
            Issue::BadDeterminant { torus, determinant } => {
                write!(f, "torus {torus}: gluing determinant {determinant} is not +1 or -1")
            }
            Issue::ThinShape(b) => {
                write!(f, "thin block {b} must have genus 0, 2 boundary tori and no exceptional fibers")
            }
            Issue::SmallMultiplicity { block, a } => {
                write!(f, "block {block}: exceptional multiplicity {a} is below 2")
            }
            Issue::DegenerateFraming { block, index } => {
                write!(f, "block {block}: framing on torus {index} repeats a slope")
            }
            Issue::FramingOutOfRange { block, index } => {
                write!(f, "block {block}: framing given for missing torus {index}")
            }
            Issue::GeometryWithTori => write!(f, "geometry label given for a manifold with JSJ tori"),
            Issue::GeometryWithSeveralBlocks => {
                write!(f, "geometry label given for a manifold with more than one block")
            }
            Issue::ClosedHyperbolicWithoutGeometry(b) => {
                write!(f, "hyperbolic block {b} has no boundary and no geometry label")
            }
            Issue::Disconnected => write!(f, "block graph is disconnected"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for issue in &self.issues {
            writeln!(f, "{issue}")?;
        }
        Ok(())
    }
}

/// Lists every violated invariant; an empty report means well-formed.
pub fn validate(m: &ManifoldGraph) -> ValidationReport {
    let mut issues = Vec::new();
    if m.blocks.is_empty() {
        issues.push(Issue::NoBlocks);
    }

    let mut torus_ids = BTreeSet::new();
    for t in &m.tori {
        if !torus_ids.insert(t.id.as_str()) {
            issues.push(Issue::DuplicateTorusId(t.id.clone()));
        }
        if !t.glue.is_unimodular() {
            issues.push(Issue::BadDeterminant {
                torus: t.id.clone(),
                determinant: t.glue.determinant(),
            });
        }
    }

    let mut seen: HashMap<&TorusEnd, usize> = HashMap::new();
    let all_ends = m.tori.iter().flat_map(|t| [&t.a, &t.b]).chain(m.boundary.iter());
    for end in all_ends {
        match m.blocks.get(&end.block) {
            None => {
                issues.push(Issue::UnknownBlock {
                    reference: end.block.clone(),
                });
                continue;
            }
            Some(b) if end.index >= b.num_boundary() => {
                issues.push(Issue::EndOutOfRange {
                    end: end.clone(),
                    num_boundary: b.num_boundary(),
                });
                continue;
            }
            Some(_) => {}
        }
        let count = seen.entry(end).or_insert(0);
        *count += 1;
        if *count == 2 {
            issues.push(Issue::DuplicateEnd(end.clone()));
        }
    }

    for (id, block) in &m.blocks {
        for index in 0..block.num_boundary() {
            let end = TorusEnd::new(id.clone(), index);
            if !seen.contains_key(&end) {
                issues.push(Issue::UnusedEnd(end));
            }
        }
        match block {
            Block::Seifert(s) => {
                if s.is_thin && (s.genus != 0 || s.num_boundary != 2 || !s.exceptional.is_empty()) {
                    issues.push(Issue::ThinShape(id.clone()));
                }
                for e in &s.exceptional {
                    if e.a < 2 {
                        issues.push(Issue::SmallMultiplicity {
                            block: id.clone(),
                            a: e.a,
                        });
                    }
                }
            }
            Block::Hyperbolic(h) => {
                for (&index, (c, d)) in &h.framing {
                    if index >= h.num_boundary {
                        issues.push(Issue::FramingOutOfRange {
                            block: id.clone(),
                            index,
                        });
                    }
                    if c == d {
                        issues.push(Issue::DegenerateFraming {
                            block: id.clone(),
                            index,
                        });
                    }
                }
                if h.num_boundary == 0 && m.geometry.is_none() {
                    issues.push(Issue::ClosedHyperbolicWithoutGeometry(id.clone()));
                }
            }
        }
    }

    if m.geometry.is_some() {
        if !m.tori.is_empty() {
            issues.push(Issue::GeometryWithTori);
        }
        if m.blocks.len() > 1 {
            issues.push(Issue::GeometryWithSeveralBlocks);
        }
    }

    if m.blocks.len() > 1 && !is_connected(m) {
        issues.push(Issue::Disconnected);
    }

    ValidationReport { issues }
}

fn is_connected(m: &ManifoldGraph) -> bool {
    let Some(start) = m.blocks.keys().next() else {
        return true;
    };
    let mut reached = BTreeSet::from([start.as_str()]);
    let mut stack = vec![start.as_str()];
    while let Some(b) = stack.pop() {
        for n in m.neighbors(b) {
            if m.blocks.contains_key(n) && reached.insert(n) {
                stack.push(n);
            }
        }
    }
    reached.len() == m.blocks.len()
}

/// Identifies a torus for slope audits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TorusKey {
    Jsj(String),
    Boundary(TorusEnd),
}

impl fmt::Display for TorusKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusKey::Jsj(id) => f.write_str(id),
            TorusKey::Boundary(end) => write!(f, "boundary {end}"),
        }
    }
}

/// Curves on a torus, listed per side in that side's basis.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SideCurves {
    pub a: Vec<Slope>,
    pub b: Vec<Slope>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeAudit {
    pub torus: TorusKey,
    /// Distinct slopes in the basis of side `a`.
    pub slopes: Vec<Slope>,
    pub flagged: bool,
}

impl SlopeAudit {
    pub fn count(&self) -> usize {
        self.slopes.len()
    }
}

/// Counts distinct slopes on each torus after moving side-`b` curves to side `a`.
///
/// Tori with anything other than exactly two slopes are flagged.
pub fn audit_torus_slopes(
    m: &ManifoldGraph,
    curves: &BTreeMap<TorusKey, SideCurves>,
) -> Result<Vec<SlopeAudit>, ModelError> {
    let mut out = Vec::with_capacity(curves.len());
    for (key, sides) in curves {
        if sides.a.is_empty() && sides.b.is_empty() {
            return Err(ModelError::EmptyCurveSystem(key.to_string()));
        }
        let to_a = match key {
            TorusKey::Jsj(id) => {
                let t = m
                    .torus(id)
                    .ok_or_else(|| ModelError::UnknownTorus(id.clone()))?;
                t.glue.inverse()
            }
            TorusKey::Boundary(end) => {
                if !m.is_boundary_end(end) {
                    return Err(ModelError::UnknownTorus(key.to_string()));
                }
                GluingMatrix::IDENTITY
            }
        };
        let slopes: BTreeSet<Slope> = sides
            .a
            .iter()
            .copied()
            .chain(sides.b.iter().map(|s| transport_slope(*s, &to_a)))
            .collect();
        let slopes: Vec<Slope> = slopes.into_iter().collect();
        out.push(SlopeAudit {
            torus: key.clone(),
            flagged: slopes.len() != 2,
            slopes,
        });
    }
    Ok(out)
}

/// Curves contributed by the framings of hyperbolic blocks, keyed by the torus
/// each framed boundary lies on.
pub fn framing_curves(m: &ManifoldGraph) -> BTreeMap<TorusKey, SideCurves> {
    let mut out: BTreeMap<TorusKey, SideCurves> = BTreeMap::new();
    for (id, block) in &m.blocks {
        let Block::Hyperbolic(h) = block else {
            continue;
        };
        for (&index, &(c, d)) in &h.framing {
            let end = TorusEnd::new(id.clone(), index);
            if let Some((t, side)) = m.torus_at(&end) {
                let entry = out.entry(TorusKey::Jsj(t.id.clone())).or_default();
                match side {
                    Side::A => entry.a.extend([c, d]),
                    Side::B => entry.b.extend([c, d]),
                }
            } else if m.is_boundary_end(&end) {
                out.entry(TorusKey::Boundary(end)).or_default().a.extend([c, d]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    fn two_block() -> ManifoldGraph {
        let mut m = ManifoldGraph::default();
        m.blocks.insert(
            "S".into(),
            Block::Seifert(SeifertBlockData::new(0, 1, &[(2, 1), (3, 1)], 0)),
        );
        m.blocks.insert(
            "H".into(),
            Block::Hyperbolic(HyperbolicBlockData {
                num_boundary: 2,
                framing: BTreeMap::new(),
            }),
        );
        m.tori.push(JsjTorus {
            id: "T".into(),
            a: TorusEnd::new("S", 0),
            b: TorusEnd::new("H", 0),
            glue: GluingMatrix::new([[0, 1], [1, 0]]).unwrap(),
        });
        m.boundary.push(TorusEnd::new("H", 1));
        m
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(s(2, 4), s(1, 2));
        assert_eq!((s(2, 4).p(), s(2, 4).q()), (1, 2));
        assert_eq!((s(-1, 3).p(), s(-1, 3).q()), (1, -3));
        assert_eq!((s(0, -7).p(), s(0, -7).q()), (0, 1));
        assert_eq!(Slope::new(0, 0), Err(ModelError::ZeroVector));
    }

    #[test]
    fn transport_examples() {
        let swap = GluingMatrix::new([[0, 1], [1, 0]]).unwrap();
        assert_eq!(transport_slope(Slope::FIBER, &swap), Slope::SECTION);
        assert_eq!(transport_slope(Slope::SECTION, &GluingMatrix::IDENTITY), Slope::SECTION);
        let g = GluingMatrix::new([[1, 1], [0, -1]]).unwrap();
        assert_eq!(transport_slope(s(1, 1), &g), s(2, -1));
    }

    #[test]
    fn fiber_slope_examples() {
        let b = SeifertBlockData::new(1, 2, &[], 0);
        assert_eq!(fiber_slope(&b, 0), Ok(Slope::FIBER));
        assert_eq!(fiber_slope(&SeifertBlockData::thin(), 1), Ok(Slope::FIBER));
        assert_eq!(
            fiber_slope(&b, 5),
            Err(ModelError::IndexOutOfRange {
                index: 5,
                num_boundary: 2
            })
        );
    }

    #[test]
    fn straightening_sends_slope_to_fiber() {
        for (p, q) in [(1, 0), (0, 1), (2, 3), (5, -7), (1, 1)] {
            let m = GluingMatrix::straightening(s(p, q));
            assert!(m.is_unimodular());
            assert_eq!(transport_slope(s(p, q), &m), Slope::FIBER);
        }
    }

    #[test]
    fn validate_accepts_two_block_manifold() {
        assert!(validate(&two_block()).is_valid());
    }

    #[test]
    fn validate_names_shared_end() {
        let mut m = two_block();
        m.tori.push(JsjTorus {
            id: "U".into(),
            a: TorusEnd::new("S", 0),
            b: TorusEnd::new("H", 1),
            glue: GluingMatrix::IDENTITY,
        });
        m.boundary.clear();
        let report = validate(&m);
        assert!(report.issues.contains(&Issue::DuplicateEnd(TorusEnd::new("S", 0))));
    }

    #[test]
    fn validate_names_bad_determinant() {
        let mut m = two_block();
        m.tori[0].glue = GluingMatrix::unchecked([[1, 0], [0, 2]]);
        let report = validate(&m);
        assert_eq!(
            report.issues,
            vec![Issue::BadDeterminant {
                torus: "T".into(),
                determinant: 2
            }]
        );
    }

    #[test]
    fn validate_thin_shape_and_geometry() {
        let mut m = two_block();
        m.blocks.insert(
            "X".into(),
            Block::Seifert(SeifertBlockData {
                is_thin: true,
                ..SeifertBlockData::new(1, 2, &[], 0)
            }),
        );
        m.geometry = Some(Geometry::H3);
        let report = validate(&m);
        assert!(report.issues.contains(&Issue::ThinShape("X".into())));
        assert!(report.issues.contains(&Issue::GeometryWithTori));
        assert!(report.issues.contains(&Issue::Disconnected));
    }

    #[test]
    fn audit_examples() {
        let m = two_block();
        let key = TorusKey::Jsj("T".into());
        let audit = |a: Vec<Slope>, b: Vec<Slope>| {
            let curves = BTreeMap::from([(key.clone(), SideCurves { a, b })]);
            audit_torus_slopes(&m, &curves).unwrap().remove(0)
        };
        let r = audit(vec![Slope::SECTION], vec![Slope::SECTION]);
        assert_eq!(r.count(), 2);
        assert!(!r.flagged);

        let r = audit(vec![Slope::SECTION, Slope::FIBER], vec![s(1, 1)]);
        assert_eq!(r.count(), 3);
        assert!(r.flagged);

        let empty = BTreeMap::from([(key.clone(), SideCurves::default())]);
        assert_eq!(
            audit_torus_slopes(&m, &empty),
            Err(ModelError::EmptyCurveSystem("T".into()))
        );
    }

    #[test]
    fn audit_framing_pair() {
        let mut m = two_block();
        if let Some(Block::Hyperbolic(h)) = m.blocks.get_mut("H") {
            h.framing.insert(1, (s(1, 0), s(1, 2)));
        }
        let curves = framing_curves(&m);
        let audits = audit_torus_slopes(&m, &curves).unwrap();
        assert_eq!(audits.len(), 1);
        assert_eq!(audits[0].count(), 2);
        assert!(!audits[0].flagged);
    }

    fn unimodular() -> impl Strategy<Value = GluingMatrix> {
        (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4)
            .prop_filter_map("det must be +-1", |(a, b, c, d)| {
                GluingMatrix::new([[a, b], [c, d]]).ok()
            })
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent_and_ray_invariant(p in -50i64..50, q in -50i64..50, k in 1i64..9, neg in any::<bool>()) {
            prop_assume!(p != 0 || q != 0);
            let k = if neg { -k } else { k };
            let a = slope_normalize(p, q).unwrap();
            prop_assert_eq!(slope_normalize(a.p(), a.q()).unwrap(), a);
            prop_assert_eq!(slope_normalize(k * p, k * q).unwrap(), a);
        }

        #[test]
        fn transport_round_trips(p in -30i64..30, q in -30i64..30, g in unimodular()) {
            prop_assume!(p != 0 || q != 0);
            let slope = slope_normalize(p, q).unwrap();
            let there = transport_slope(slope, &g);
            prop_assert_eq!(transport_slope(there, &g.inverse()), slope);
        }
    }
}
