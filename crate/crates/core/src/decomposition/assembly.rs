use num_integer::Integer;
use thiserror::Error;

/// Multiplicities attached to one torus: `r`, `s` boundary counts and `a`, `b` cap degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusCounts {
    pub r: u64,
    pub s: u64,
    pub a: u64,
    pub b: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssemblyPlan {
    /// Copies of the core surface.
    pub ell: u64,
    /// `(r * ell / a, s * ell / b)` per torus.
    pub caps: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssemblyError {
    #[error("no tori given")]
    EmptyInput,
    #[error("torus {0}: cap degrees must be at least 1")]
    ZeroDegree(usize),
    #[error("copy counts overflow 64 bits")]
    Overflow,
}

/// Takes `ell` as the lcm of every nonzero count and degree, then the cap
/// counts needed to close up `ell` copies of the core surface.
pub fn plan_surface_assembly(tori: &[TorusCounts]) -> Result<AssemblyPlan, AssemblyError> {
    if tori.is_empty() {
        return Err(AssemblyError::EmptyInput);
    }
    let mut ell: u64 = 1;
    for (i, t) in tori.iter().enumerate() {
        if t.a == 0 || t.b == 0 {
            return Err(AssemblyError::ZeroDegree(i));
        }
        for x in [t.r, t.s, t.a, t.b] {
            if x != 0 {
                ell = (ell / ell.gcd(&x)).checked_mul(x).ok_or(AssemblyError::Overflow)?;
            }
        }
    }
    let caps = tori
        .iter()
        .map(|t| {
            let alpha = t.r.checked_mul(ell / t.a).ok_or(AssemblyError::Overflow)?;
            let beta = t.s.checked_mul(ell / t.b).ok_or(AssemblyError::Overflow)?;
            Ok((alpha, beta))
        })
        .collect::<Result<_, _>>()?;
    Ok(AssemblyPlan { ell, caps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tc(r: u64, s: u64, a: u64, b: u64) -> TorusCounts {
        TorusCounts { r, s, a, b }
    }

    #[test]
    fn examples() {
        let p = plan_surface_assembly(&[tc(2, 0, 4, 3)]).unwrap();
        assert_eq!((p.ell, p.caps), (12, vec![(6, 0)]));
        let p = plan_surface_assembly(&[tc(1, 1, 1, 1)]).unwrap();
        assert_eq!((p.ell, p.caps), (1, vec![(1, 1)]));
        // b = 5 is nonzero, so it enters the lcm
        let p = plan_surface_assembly(&[tc(2, 3, 2, 3), tc(4, 0, 4, 5)]).unwrap();
        assert_eq!((p.ell, p.caps), (60, vec![(60, 60), (60, 0)]));
        assert_eq!(plan_surface_assembly(&[]), Err(AssemblyError::EmptyInput));
        assert_eq!(plan_surface_assembly(&[tc(1, 1, 0, 1)]), Err(AssemblyError::ZeroDegree(0)));
    }

    proptest! {
        #[test]
        fn counts_integral_and_large_enough(ts in proptest::collection::vec((0u64..8, 0u64..8, 1u64..8, 1u64..8), 1..4)) {
            let tori: Vec<TorusCounts> = ts.iter().map(|&(r, s, a, b)| tc(r, s, a, b)).collect();
            let p = plan_surface_assembly(&tori).unwrap();
            for (t, &(alpha, beta)) in tori.iter().zip(&p.caps) {
                prop_assert_eq!(p.ell % t.a, 0);
                prop_assert_eq!(p.ell % t.b, 0);
                prop_assert_eq!(alpha * t.a, t.r * p.ell);
                prop_assert_eq!(beta * t.b, t.s * p.ell);
                prop_assert!(alpha >= t.r && beta >= t.s);
            }
        }
    }
}
