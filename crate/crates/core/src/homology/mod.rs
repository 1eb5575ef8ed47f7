//! Exact integer linear algebra for first homology of Seifert blocks.

mod lattice;
mod matrix;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::manifold::{ModelError, SeifertBlockData, Slope};

pub use lattice::{
    all_nonzero_vector, hermite_rows, in_column_span, integer_kernel, kernel_lattice,
    vanishing_coordinate, LatticeBasis,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SnfDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("vector of length {found} does not match {expected} generators")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Abelian group presentation: generators and a relation matrix whose columns
/// are relations and whose rows are generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianPresentation {
    pub labels: Vec<String>,
    pub relations: IntMatrix,
}

impl AbelianPresentation {
    pub fn generator(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn group(&self) -> AbelianGroup {
        let snf = smith_normal_form(&self.relations);
        let diag = snf.diagonal();
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        AbelianGroup {
            free_rank: self.labels.len() - rank,
            torsion: diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect(),
        }
    }
}

/// `Z^free_rank` plus cyclic factors `Z/t` with `t_1 | t_2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn section_generator(b: &SeifertBlockData, k: usize) -> usize {
    2 * b.genus as usize + b.exceptional.len() + k
}

fn fiber_generator(b: &SeifertBlockData) -> usize {
    2 * b.genus as usize + b.exceptional.len() + b.num_boundary
}

/// Abelianized Seifert presentation with generators
/// `x_1, y_1, ..., x_g, y_g, q_1..q_m, d_1..d_p, h`.
///
/// Relations: `a_j q_j + b_j h = 0` per exceptional fiber, and
/// `q_1 + ... + q_m + d_1 + ... + d_p + e h = 0` where `e` is the section
/// obstruction for closed blocks and zero otherwise.
pub fn presentation_h1(b: &SeifertBlockData) -> AbelianPresentation {
    let g = b.genus as usize;
    let m = b.exceptional.len();
    let p = b.num_boundary;
    let mut labels = Vec::with_capacity(2 * g + m + p + 1);
    for i in 1..=g {
        labels.push(format!("x{i}"));
        labels.push(format!("y{i}"));
    }
    labels.extend((1..=m).map(|j| format!("q{j}")));
    labels.extend((1..=p).map(|k| format!("d{k}")));
    labels.push("h".into());

    let h = fiber_generator(b);
    let mut relations = IntMatrix::zeros(labels.len(), m + 1);
    for (j, e) in b.exceptional.iter().enumerate() {
        relations[(2 * g + j, j)] = BigInt::from(e.a);
        relations[(h, j)] += BigInt::from(e.b);
    }
    for row in 2 * g..2 * g + m + p {
        relations[(row, m)] = BigInt::one();
    }
    if p == 0 {
        relations[(h, m)] += BigInt::from(b.section_obstruction);
    }
    AbelianPresentation { labels, relations }
}

/// Class of the curve `p d_k + q h` on boundary torus `k`, in presentation coordinates.
pub fn class_in_h1(
    b: &SeifertBlockData,
    boundary_index: usize,
    s: Slope,
) -> Result<Vec<BigInt>, HomologyError> {
    if boundary_index >= b.num_boundary {
        return Err(ModelError::IndexOutOfRange {
            index: boundary_index,
            num_boundary: b.num_boundary,
        }
        .into());
    }
    let mut v = vec![BigInt::zero(); fiber_generator(b) + 1];
    v[section_generator(b, boundary_index)] += BigInt::from(s.p());
    v[fiber_generator(b)] += BigInt::from(s.q());
    Ok(v)
}
