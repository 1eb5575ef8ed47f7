//! Smith normal form over the integers.
//!
//! Elimination always pivots on the entry of least nonzero absolute value in
//! the active submatrix, ties broken by lowest row and then lowest column, so
//! the transforms are reproducible for a fixed input.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

fn min_abs_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        while let Some((pi, pj)) = min_abs_pivot(&d, t) {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &pivot);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &pivot);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot is left; pivot again
                continue;
            }
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !(&d[(i, j)] % &pivot).is_zero())
            });
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SnfDecomposition { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m)
            .diagonal()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    fn check(a: &IntMatrix) {
        let snf = smith_normal_form(a);
        assert_eq!(&(&snf.u * a) * &snf.v, snf.d);
        assert!(snf.d.is_diagonal());
        assert!(snf.u.determinant().abs() == BigInt::from(1));
        assert!(snf.v.determinant().abs() == BigInt::from(1));
        let dg = snf.diagonal();
        for w in dg.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(diag(&IntMatrix::identity(2)), vec![1, 1]);
        assert_eq!(diag(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]])), vec![2, 4]);
        assert_eq!(diag(&IntMatrix::from_rows(&[vec![0]])), vec![0]);
        assert_eq!(diag(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])), vec![1, 6]);
    }

    #[test]
    fn empty_matrices() {
        for (r, c) in [(0, 0), (0, 3), (2, 0)] {
            let snf = smith_normal_form(&IntMatrix::zeros(r, c));
            assert_eq!(snf.u, IntMatrix::identity(r));
            assert_eq!(snf.v, IntMatrix::identity(c));
            assert_eq!(snf.rank(), 0);
        }
    }

    #[test]
    fn deterministic() {
        let a = IntMatrix::from_rows(&[vec![4, 6, 2], vec![6, 9, 3], vec![3, 1, 8]]);
        assert_eq!(smith_normal_form(&a), smith_normal_form(&a));
        check(&a);
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
                .prop_map(|rows| IntMatrix::from_rows(&rows))
        })
    }

    proptest! {
        #[test]
        fn factorization_holds(a in small_matrix()) {
            check(&a);
        }

        #[test]
        fn diagonal_invariant_under_permutation(a in small_matrix(), seed in any::<u64>()) {
            let mut p = a.clone();
            let (r, c) = (p.rows(), p.cols());
            let mut s = seed;
            for i in (1..r).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                p.swap_rows(i, (s >> 33) as usize % (i + 1));
            }
            for j in (1..c).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                p.swap_cols(j, (s >> 33) as usize % (j + 1));
            }
            prop_assert_eq!(smith_normal_form(&a).diagonal(), smith_normal_form(&p).diagonal());
        }
    }
}
