//! Integer kernels, solution lattices and all-nonzero lattice vectors.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, HomologyError, IntMatrix};

/// A lattice in `Z^dim` given by linearly independent basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub dim: usize,
    pub basis: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.dim && reduce_by_echelon(&self.basis, v).iter().all(Zero::is_zero)
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.basis
            .iter()
            .flatten()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// A basis of the integer kernel `{ x : A x = 0 }`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    (rank..a.cols()).map(|j| snf.v.column(j)).collect()
}

/// Row-style Hermite normal form of the span of `rows`; zero rows are dropped.
///
/// Pivots are positive and entries above a pivot are reduced into `[0, pivot)`.
pub fn hermite_rows(rows: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    for c in 0..dim {
        if r == m.len() {
            break;
        }
        // gcd-combine column c into row r
        loop {
            let pivot = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()).then(i.cmp(&j)));
            let Some(p) = pivot else {
                break;
            };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = &m[i][c] / &m[r][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                done &= m[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = floor_div(&m[i][c], &m[r][c]);
            if q.is_zero() {
                continue;
            }
            let pivot_row = m[r].clone();
            for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                *x -= &q * y;
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(a, b)
}

/// Reduces `v` by rows in echelon form; the remainder is zero iff `v` is in their span.
fn reduce_by_echelon(echelon: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    let mut w = v.to_vec();
    for row in echelon {
        let Some(c) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if w[c].is_zero() {
            continue;
        }
        if !(&w[c] % &row[c]).is_zero() {
            return w;
        }
        let q = &w[c] / &row[c];
        for (x, y) in w.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    w
}

/// Whether `w` lies in the column span of `r` over the integers.
pub fn in_column_span(r: &IntMatrix, w: &[BigInt]) -> bool {
    assert_eq!(w.len(), r.rows(), "dimension mismatch");
    if w.iter().all(Zero::is_zero) {
        return true;
    }
    let snf = smith_normal_form(r);
    let uw = snf.u.mul_vec(w);
    let diag = snf.diagonal();
    uw.iter().enumerate().all(|(i, x)| match diag.get(i) {
        Some(d) if !d.is_zero() => (x % d).is_zero(),
        _ => x.is_zero(),
    })
}

/// The lattice `{ n in Z^k : sum n_i z_i in image(R) }`.
///
/// `zs` are the `k` vectors; `r` has one column per relation and one row per
/// generator.
pub fn kernel_lattice(zs: &[Vec<BigInt>], r: &IntMatrix) -> Result<LatticeBasis, HomologyError> {
    let k = zs.len();
    let gens = r.rows();
    if let Some(bad) = zs.iter().find(|z| z.len() != gens) {
        return Err(HomologyError::DimensionMismatch {
            expected: gens,
            found: bad.len(),
        });
    }
    if k == 0 {
        return Ok(LatticeBasis::zero(0));
    }
    let mut columns: Vec<Vec<BigInt>> = zs.to_vec();
    columns.extend((0..r.cols()).map(|j| r.column(j)));
    let stacked = IntMatrix::from_columns(gens, &columns);
    let projected: Vec<Vec<BigInt>> = integer_kernel(&stacked)
        .into_iter()
        .map(|x| x[..k].to_vec())
        .collect();
    Ok(LatticeBasis {
        dim: k,
        basis: hermite_rows(&projected, k),
    })
}

/// A lattice vector with every coordinate nonzero, if one exists.
///
/// Tries `v(t) = sum_j t^j b_j` for `t = 1, 2, ...`. Each coordinate of `v(t)`
/// is a polynomial of degree below the rank, so `t <= k (r - 1) + 1` suffices
/// whenever no coordinate vanishes on the whole basis.
pub fn all_nonzero_vector(lattice: &LatticeBasis) -> Option<Vec<BigInt>> {
    let k = lattice.dim;
    if k == 0 {
        return Some(Vec::new());
    }
    if vanishing_coordinate(lattice).is_some() {
        return None;
    }
    let r = lattice.rank();
    let bound = k * r.saturating_sub(1) + 1;
    for t in 1..=bound {
        let t = BigInt::from(t);
        let mut v = vec![BigInt::zero(); k];
        let mut power = BigInt::one();
        for b in &lattice.basis {
            for (x, y) in v.iter_mut().zip(b) {
                *x += &power * y;
            }
            power *= &t;
        }
        if v.iter().all(|x| !x.is_zero()) {
            return Some(v);
        }
    }
    unreachable!("witness bound exceeded for a lattice without vanishing coordinates")
}

/// First coordinate that is zero on every basis vector.
pub fn vanishing_coordinate(lattice: &LatticeBasis) -> Option<usize> {
    (0..lattice.dim).find(|&i| lattice.basis.iter().all(|b| b[i].is_zero()))
}
