//! The chargeless test for interior Seifert blocks and the resulting
//! classification of virtually compact special fundamental groups.

use std::fmt;

use log::{debug, warn};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::decomposition::{interior_blocks, modify_jsj};
use crate::homology::{
    all_nonzero_vector, class_in_h1, in_column_span, kernel_lattice, presentation_h1,
    vanishing_coordinate, HomologyError, IntMatrix, LatticeBasis,
};
use crate::manifold::{
    validate, Block, ExceptionalFiber, Geometry, ManifoldGraph, SeifertBlockData, Slope, TorusEnd,
    ValidationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChargeError {
    #[error("unknown block {0}")]
    UnknownBlock(String),
    #[error("block {0} is not Seifert fibered")]
    NotSeifert(String),
    #[error("block {0} is not interior")]
    NotInterior(String),
    #[error("block has {0} boundary tori; euler number needs a closed block")]
    NotClosed(usize),
    #[error("filling slope on torus {index} is the fiber")]
    FiberFilling { index: usize },
    #[error("expected {expected} filling slopes, got {found}")]
    SlopeCount { expected: usize, found: usize },
    #[error("single-block manifold without JSJ tori needs a geometry label")]
    MissingGeometryLabel,
    #[error("invalid manifold:\n{0}")]
    Invalid(ValidationReport),
    #[error("witness for block {0} failed substitution")]
    WitnessRejected(String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// How a torus glued to the same block on both sides enters the weighted sum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SelfGluing {
    /// One term for each of the two ends.
    #[default]
    PerEnd,
    /// One term for the torus, taken at its first end.
    PerTorus,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ChargeOptions {
    pub self_gluing: SelfGluing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeVerdict {
    pub block: String,
    /// Torus ends of the block, one per weight.
    pub ends: Vec<TorusEnd>,
    /// Adjacent fibers in the local basis of each end.
    pub fibers: Vec<Slope>,
    /// Their classes in the block's first homology presentation.
    pub classes: Vec<Vec<BigInt>>,
    pub lattice: LatticeBasis,
    pub chargeless: bool,
    pub witness: Option<Vec<BigInt>>,
    /// Index into `ends` of a weight forced to vanish.
    pub obstruction: Option<usize>,
    /// Euler number of the block filled along the adjacent fibers, when unit
    /// weights solve the equation and every fiber is fillable.
    pub filled_euler: Option<BigRational>,
}

impl ChargeVerdict {
    pub fn admits_unit_weights(&self) -> bool {
        self.lattice.contains(&vec![BigInt::one(); self.lattice.dim])
    }
}

impl fmt::Display for ChargeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ends: Vec<String> = self.ends.iter().map(ToString::to_string).collect();
        match (&self.witness, self.obstruction) {
            (Some(w), _) => {
                let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                write!(
                    f,
                    "block {}: chargeless, ends [{}], witness ({})",
                    self.block,
                    ends.join(", "),
                    w.join(",")
                )
            }
            (None, Some(i)) => write!(
                f,
                "block {}: charged, ends [{}], weight on {} forced to zero (coordinate {})",
                self.block,
                ends.join(", "),
                self.ends[i],
                i + 1
            ),
            (None, None) => write!(f, "block {}: charged", self.block),
        }
    }
}

/// Outcome of the weighted sum test on explicit classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeSolution {
    pub lattice: LatticeBasis,
    pub witness: Option<Vec<BigInt>>,
    pub obstruction: Option<usize>,
}

/// Solves `sum n_i z_i in image(R)` for all-nonzero integers `n_i`.
pub fn solve_charge(classes: &[Vec<BigInt>], relations: &IntMatrix) -> Result<ChargeSolution, HomologyError> {
    let lattice = kernel_lattice(classes, relations)?;
    let witness = all_nonzero_vector(&lattice);
    let obstruction = if witness.is_none() {
        vanishing_coordinate(&lattice)
    } else {
        None
    };
    Ok(ChargeSolution {
        lattice,
        witness,
        obstruction,
    })
}

fn weighted_sum(classes: &[Vec<BigInt>], weights: &[BigInt], dim: usize) -> Vec<BigInt> {
    let mut total = vec![BigInt::zero(); dim];
    for (z, n) in classes.iter().zip(weights) {
        for (t, x) in total.iter_mut().zip(z) {
            *t += n * x;
        }
    }
    total
}

fn seifert_block<'a>(m: &'a ManifoldGraph, id: &str) -> Result<&'a SeifertBlockData, ChargeError> {
    match m.block(id) {
        None => Err(ChargeError::UnknownBlock(id.to_string())),
        Some(Block::Hyperbolic(_)) => Err(ChargeError::NotSeifert(id.to_string())),
        Some(Block::Seifert(s)) => Ok(s),
    }
}

/// Torus ends of `id` that carry a weight, under the chosen self-gluing reading.
pub fn weighted_ends(m: &ManifoldGraph, id: &str, opts: ChargeOptions) -> Vec<TorusEnd> {
    let mut ends = m.jsj_ends(id);
    if opts.self_gluing == SelfGluing::PerTorus {
        ends.retain(|e| match m.torus_at(e) {
            Some((t, _)) if t.a.block == t.b.block => &t.a == e,
            _ => true,
        });
    }
    ends
}

pub fn is_chargeless_block(m: &ManifoldGraph, id: &str) -> Result<ChargeVerdict, ChargeError> {
    is_chargeless_block_with(m, id, ChargeOptions::default())
}

pub fn is_chargeless_block_with(
    m: &ManifoldGraph,
    id: &str,
    opts: ChargeOptions,
) -> Result<ChargeVerdict, ChargeError> {
    let block = seifert_block(m, id)?;
    if !interior_blocks(m).contains(id) {
        return Err(ChargeError::NotInterior(id.to_string()));
    }
    let ends = weighted_ends(m, id, opts);
    let fibers = ends
        .iter()
        .map(|e| m.neighbor_fiber(e).ok_or_else(|| ChargeError::NotInterior(id.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let classes = ends
        .iter()
        .zip(&fibers)
        .map(|(e, &s)| class_in_h1(block, e.index, s))
        .collect::<Result<Vec<_>, _>>()?;
    let relations = presentation_h1(block).relations;
    let solution = solve_charge(&classes, &relations)?;

    if let Some(w) = &solution.witness {
        if !in_column_span(&relations, &weighted_sum(&classes, w, relations.rows())) {
            return Err(ChargeError::WitnessRejected(id.to_string()));
        }
    }

    let mut verdict = ChargeVerdict {
        block: id.to_string(),
        ends,
        fibers,
        classes,
        chargeless: solution.witness.is_some(),
        witness: solution.witness,
        obstruction: solution.obstruction,
        lattice: solution.lattice,
        filled_euler: None,
    };
    euler_diagnostic(block, &mut verdict);
    Ok(verdict)
}

fn euler_diagnostic(block: &SeifertBlockData, verdict: &mut ChargeVerdict) {
    if !verdict.chargeless || verdict.ends.is_empty() {
        return;
    }
    if !verdict.admits_unit_weights() {
        warn!(
            "block {}: no unit-weight solution; euler diagnostic is advisory and skipped",
            verdict.block
        );
        return;
    }
    if verdict.ends.len() != block.num_boundary {
        debug!("block {}: ends do not cover every boundary torus", verdict.block);
        return;
    }
    let mut slopes = verdict.fibers.clone();
    let order: Vec<usize> = verdict.ends.iter().map(|e| e.index).collect();
    for (s, &i) in verdict.fibers.iter().zip(&order) {
        slopes[i] = *s;
    }
    match fill_along_slopes(block, &slopes).and_then(|b| euler_number(&b)) {
        Ok(e) => {
            if !e.is_zero() {
                warn!("block {}: filled euler number {} is nonzero", verdict.block, e);
            }
            verdict.filled_euler = Some(e);
        }
        Err(err) => debug!("block {}: euler diagnostic unavailable: {err}", verdict.block),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldCharge {
    pub chargeless: bool,
    pub verdicts: Vec<ChargeVerdict>,
}

impl ManifoldCharge {
    pub fn failing(&self) -> Vec<&str> {
        self.verdicts
            .iter()
            .filter(|v| !v.chargeless)
            .map(|v| v.block.as_str())
            .collect()
    }
}

/// Verdicts for every interior block; the manifold is chargeless when all pass.
pub fn is_chargeless_manifold(m: &ManifoldGraph) -> Result<ManifoldCharge, ChargeError> {
    is_chargeless_manifold_with(m, ChargeOptions::default())
}

pub fn is_chargeless_manifold_with(
    m: &ManifoldGraph,
    opts: ChargeOptions,
) -> Result<ManifoldCharge, ChargeError> {
    let verdicts = interior_blocks(m)
        .iter()
        .map(|id| is_chargeless_block_with(m, id, opts))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ManifoldCharge {
        chargeless: verdicts.iter().all(|v| v.chargeless),
        verdicts,
    })
}

/// Dehn filling of every boundary torus; `slopes[k]` fills torus `k`.
///
/// Each filling slope `(p, q)` becomes an exceptional fiber `(p, q)`.
pub fn fill_along_slopes(b: &SeifertBlockData, slopes: &[Slope]) -> Result<SeifertBlockData, ChargeError> {
    if slopes.len() != b.num_boundary {
        return Err(ChargeError::SlopeCount {
            expected: b.num_boundary,
            found: slopes.len(),
        });
    }
    let mut exceptional = b.exceptional.clone();
    for (index, s) in slopes.iter().enumerate() {
        if s.p() == 0 {
            return Err(ChargeError::FiberFilling { index });
        }
        exceptional.push(ExceptionalFiber { a: s.p(), b: s.q() });
    }
    Ok(SeifertBlockData {
        genus: b.genus,
        num_boundary: 0,
        exceptional,
        section_obstruction: 0,
        is_thin: false,
    })
}

/// `e = -(b + sum b_j / a_j)` for a closed block.
pub fn euler_number(b: &SeifertBlockData) -> Result<BigRational, ChargeError> {
    if !b.is_closed() {
        return Err(ChargeError::NotClosed(b.num_boundary));
    }
    let mut sum = BigRational::from_integer(b.section_obstruction.into());
    for e in &b.exceptional {
        sum += BigRational::new(e.b.into(), e.a.into());
    }
    Ok(-sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    GeometricGood,
    GeometricBad,
    NongeometricChargeless,
    NongeometricCharged,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationVerdict {
    pub vcs: bool,
    pub reason: Reason,
    pub geometry: Option<Geometry>,
    /// The decomposition after thin blocks were inserted (nongeometric case).
    pub modified: Option<ManifoldGraph>,
    pub verdicts: Vec<ChargeVerdict>,
    pub failing: Vec<String>,
}

impl fmt::Display for ClassificationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let answer = if self.vcs { "yes" } else { "no" };
        match (self.reason, self.geometry) {
            (Reason::GeometricGood | Reason::GeometricBad, Some(g)) => {
                write!(f, "VCS: {answer} (geometric: {g})")
            }
            (Reason::NongeometricCharged, _) => {
                write!(f, "VCS: {answer} (nongeometric, charged: {})", self.failing.join(", "))
            }
            _ => write!(f, "VCS: {answer} (nongeometric, chargeless)"),
        }
    }
}

pub fn geometry_is_good(g: Geometry) -> bool {
    !matches!(g, Geometry::Sol | Geometry::Nil | Geometry::SL2R)
}

pub fn classify_vcs(m: &ManifoldGraph) -> Result<ClassificationVerdict, ChargeError> {
    classify_vcs_with(m, ChargeOptions::default())
}

pub fn classify_vcs_with(m: &ManifoldGraph, opts: ChargeOptions) -> Result<ClassificationVerdict, ChargeError> {
    let report = validate(m);
    if !report.is_valid() {
        return Err(ChargeError::Invalid(report));
    }
    if m.tori.is_empty() {
        let g = m.geometry.ok_or(ChargeError::MissingGeometryLabel)?;
        let good = geometry_is_good(g);
        return Ok(ClassificationVerdict {
            vcs: good,
            reason: if good {
                Reason::GeometricGood
            } else {
                Reason::GeometricBad
            },
            geometry: Some(g),
            modified: None,
            verdicts: Vec::new(),
            failing: Vec::new(),
        });
    }
    let modified = modify_jsj(m);
    let charge = is_chargeless_manifold_with(&modified, opts)?;
    let failing: Vec<String> = charge.failing().into_iter().map(String::from).collect();
    Ok(ClassificationVerdict {
        vcs: charge.chargeless,
        reason: if charge.chargeless {
            Reason::NongeometricChargeless
        } else {
            Reason::NongeometricCharged
        },
        geometry: None,
        modified: Some(modified),
        verdicts: charge.verdicts,
        failing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::fixtures::*;
    use crate::manifold::{JsjTorus, GluingMatrix};

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Closed chain A - B - C of Seifert blocks with B in the middle.
    fn chain(glue_ab: [[i64; 2]; 2], glue_bc: [[i64; 2]; 2]) -> ManifoldGraph {
        let b = Block::Seifert(SeifertBlockData::new(0, 2, &[], 0));
        graph(
            &[("A", seifert(1)), ("B", b), ("C", seifert(1))],
            vec![torus("T1", ("A", 0), ("B", 0), glue_ab), torus("T2", ("B", 1), ("C", 0), glue_bc)],
            &[],
        )
    }

    const ID: [[i64; 2]; 2] = [[1, 0], [0, 1]];

    #[test]
    fn same_class_fibers_are_chargeless() {
        let m = chain(ID, ID);
        let vd = is_chargeless_block(&m, "B").unwrap();
        assert_eq!(vd.fibers, vec![Slope::FIBER, Slope::FIBER]);
        assert!(vd.chargeless);
        assert_eq!(vd.witness, Some(v(&[1, -1])));
        // d1 and h are independent in H1 of T^2 x I
        let m = chain(SWAP, ID);
        let vd = is_chargeless_block(&m, "B").unwrap();
        assert_eq!(vd.fibers, vec![Slope::SECTION, Slope::FIBER]);
        assert!(!vd.chargeless);
        assert_eq!(vd.obstruction, Some(0));
    }

    #[test]
    fn one_adjacent_torus_infinite_order_is_charged() {
        let b = Block::Seifert(SeifertBlockData::new(1, 1, &[], 0));
        let m = graph(&[("A", seifert(1)), ("B", b)], vec![torus("T", ("A", 0), ("B", 0), ID)], &[]);
        let vd = is_chargeless_block(&m, "B").unwrap();
        assert!(!vd.chargeless);
        assert_eq!(vd.obstruction, Some(0));
        assert!(vd.to_string().contains("coordinate 1"));
        // the section curve is null-homologous there, so the swapped gluing is chargeless
        let b = Block::Seifert(SeifertBlockData::new(1, 1, &[], 0));
        let m = graph(&[("A", seifert(1)), ("B", b)], vec![torus("T", ("A", 0), ("B", 0), SWAP)], &[]);
        assert!(is_chargeless_block(&m, "B").unwrap().chargeless);
    }

    #[test]
    fn classes_h_and_2h() {
        let classes = vec![v(&[0, 1]), v(&[0, 2])];
        let r = IntMatrix::zeros(2, 0);
        let s = solve_charge(&classes, &r).unwrap();
        assert_eq!(s.witness, Some(v(&[2, -1])));
        let brute: Vec<(i64, i64)> = (-10i64..=10)
            .flat_map(|a| (-10i64..=10).map(move |b| (a, b)))
            .filter(|&(a, b)| a != 0 && b != 0 && a + 2 * b == 0)
            .collect();
        assert!(brute.contains(&(2, -1)));
        assert!(brute.iter().all(|&(a, _)| a.abs() >= 2));
    }

    #[test]
    fn errors_for_non_interior_blocks() {
        let m = ssh_chain();
        assert_eq!(is_chargeless_block(&m, "H"), Err(ChargeError::NotSeifert("H".into())));
        assert_eq!(is_chargeless_block(&m, "S2"), Err(ChargeError::NotInterior("S2".into())));
        assert_eq!(is_chargeless_block(&m, "X"), Err(ChargeError::UnknownBlock("X".into())));
    }

    #[test]
    fn manifold_level() {
        let single = graph(&[("S", seifert(1)), ("H", hyperbolic(1))], vec![torus("T", ("S", 0), ("H", 0), SWAP)], &[]);
        let c = is_chargeless_manifold(&single).unwrap();
        assert!(c.chargeless && c.verdicts.is_empty());

        let mut m = chain(SWAP, [[1, 1], [1, 0]]);
        for end in ["A", "C"] {
            m.blocks.insert(end.into(), Block::Seifert(SeifertBlockData::new(1, 1, &[], 0)));
        }
        let c = is_chargeless_manifold(&m).unwrap();
        assert_eq!(c.verdicts.len(), 3);
        assert!(!c.chargeless);
        assert_eq!(c.failing(), vec!["B"]);
    }

    #[test]
    fn filling_and_euler() {
        let trefoil = SeifertBlockData::new(0, 1, &[(2, 1), (3, 1)], 0);
        let filled = fill_along_slopes(&trefoil, &[Slope::new(6, 1).unwrap()]).unwrap();
        assert_eq!(filled.exceptional.len(), 3);
        assert_eq!(filled.exceptional[2], ExceptionalFiber { a: 6, b: 1 });

        let mut closed = filled.clone();
        closed.section_obstruction = -1;
        assert_eq!(euler_number(&closed).unwrap(), q(0, 1));

        let tt = SeifertBlockData::new(0, 2, &[], 0);
        let filled = fill_along_slopes(&tt, &[Slope::SECTION, Slope::SECTION]).unwrap();
        assert!(filled.is_closed() && filled.exceptional.len() == 2);
        assert_eq!(euler_number(&filled).unwrap(), q(0, 1));

        assert_eq!(
            fill_along_slopes(&tt, &[Slope::SECTION, Slope::FIBER]),
            Err(ChargeError::FiberFilling { index: 1 })
        );
        assert_eq!(euler_number(&SeifertBlockData::new(0, 0, &[], 0)).unwrap(), q(0, 1));
        assert_eq!(euler_number(&SeifertBlockData::new(0, 0, &[], 3)).unwrap(), q(-3, 1));
        assert_eq!(euler_number(&tt), Err(ChargeError::NotClosed(2)));
    }

    #[test]
    fn unit_weights_give_zero_euler() {
        let m = chain(SWAP, SWAP);
        let vd = is_chargeless_block(&m, "B").unwrap();
        assert_eq!(vd.witness, Some(v(&[1, 1])));
        assert_eq!(vd.filled_euler, Some(q(0, 1)));
        // fibers arrive as (1,1) and (1,-1)
        let m = chain([[0, 1], [1, 1]], [[1, 1], [0, -1]]);
        let vd = is_chargeless_block(&m, "B").unwrap();
        assert_eq!(vd.fibers, vec![Slope::new(1, 1).unwrap(), Slope::new(1, -1).unwrap()]);
        assert!(vd.chargeless && vd.admits_unit_weights());
        assert_eq!(vd.filled_euler, Some(q(0, 1)));
    }

    #[test]
    fn geometric_table() {
        for g in Geometry::ALL {
            let mut m = graph(&[("M", hyperbolic(0))], vec![], &[]);
            m.geometry = Some(g);
            let verdict = classify_vcs(&m).unwrap();
            let bad = matches!(g, Geometry::Sol | Geometry::Nil | Geometry::SL2R);
            assert_eq!(verdict.vcs, !bad, "{g}");
        }
        let m = graph(&[("M", seifert(0))], vec![], &[]);
        assert_eq!(classify_vcs(&m), Err(ChargeError::MissingGeometryLabel));
    }

    #[test]
    fn sol_torus_bundle_is_charged_in_both_readings() {
        let m = ManifoldGraph {
            blocks: [("N".to_string(), Block::Seifert(SeifertBlockData::thin()))].into(),
            tori: vec![JsjTorus {
                id: "T".into(),
                a: TorusEnd::new("N", 1),
                b: TorusEnd::new("N", 0),
                glue: GluingMatrix::new([[2, 1], [1, 1]]).unwrap(),
            }],
            boundary: vec![],
            geometry: None,
        };
        for reading in [SelfGluing::PerEnd, SelfGluing::PerTorus] {
            let opts = ChargeOptions { self_gluing: reading };
            let verdict = classify_vcs_with(&m, opts).unwrap();
            assert!(!verdict.vcs, "{reading:?}");
        }
    }
}
