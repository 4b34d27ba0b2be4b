//! Brute-force reference computations.
//!
//! [`brute_force_p1`] expands a generator's torus image in the variables
//! t_1..t_n, applies `P^1 t_j = t_j^p` monomial by monomial, and converts
//! back to the elementary basis by leading-term elimination. It never
//! touches the Newton recurrence or the derivation formula used by
//! [`crate::cohomology::steenrod_p1`].

mod expanded;

use std::sync::Arc;

pub use expanded::{expand_elementary, ExpandedPoly};

use crate::cohomology::{Family, GroupSpec, TorusRecipe};
use crate::error::{Error, Result};
use crate::fp_poly::{Context, Generator, ModPoly};

/// Size limits for the exponential-cost expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_rank: u32,
    pub max_prime: u32,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_rank: 6, max_prime: 13 }
    }
}

pub fn brute_force_p1(g: &GroupSpec, x: &str, limits: OracleLimits) -> Result<ModPoly> {
    let Some(group_ctx) = g.context() else {
        return Err(Error::Unsupported(format!(
            "no invariant-theoretic generators implemented for {}",
            g.name()
        )));
    };
    if g.n() > limits.max_rank {
        return Err(Error::domain(format!(
            "oracle bound exceeded: rank n = {} > max_rank = {}",
            g.n(),
            limits.max_rank
        )));
    }
    if g.prime() > limits.max_prime {
        return Err(Error::domain(format!(
            "oracle bound exceeded: p = {} > max_prime = {}",
            g.prime(),
            limits.max_prime
        )));
    }
    let desc = &g.generators()[g.generator_index(x)?];
    let p = g.prime();
    let n = g.n() as usize;

    let image = match desc.recipe {
        TorusRecipe::Elementary(i) => ExpandedPoly::elementary(p, n, i)?,
        TorusRecipe::ElementaryInSquares(i) => ExpandedPoly::elementary(p, n, i)?.inflate(2),
        TorusRecipe::EulerProduct => ExpandedPoly::from_terms(p, n, [(vec![1; n], 1)])?,
    };
    let d = image.steenrod_derivation();

    match g.family() {
        Family::SU => {
            let basis = elementary_context(p, n, 1, "c")?;
            let f = d.to_elementary_basis(&basis)?;
            f.substitute(0, &ModPoly::zero(group_ctx))
        }
        Family::Sp | Family::SpinOdd => {
            let (even, odd) = d.split_euler()?;
            if !odd.is_zero() {
                return Err(Error::Verification(format!(
                    "P^1 {x} has monomials of odd degree in some t_j"
                )));
            }
            // The group ring is already F_p[e_1(t^2), ..., e_n(t^2)].
            even.to_elementary_basis(group_ctx)
        }
        Family::SOEven => {
            let (even, odd) = d.split_euler()?;
            let basis = elementary_context(p, n, 2, "p")?;
            let e = ModPoly::var_named(group_ctx, "e")?;
            let e2 = &e * &e;
            let a = even.to_elementary_basis(&basis)?.substitute(n - 1, &e2)?;
            let b = odd.to_elementary_basis(&basis)?.substitute(n - 1, &e2)?;
            Ok(&a + &(&b * &e))
        }
        _ => unreachable!("exceptional groups have no context"),
    }
}

fn elementary_context(p: u32, n: usize, weight: u32, prefix: &str) -> Result<Arc<Context>> {
    Context::new(
        p,
        (1..=n).map(|i| Generator::new(format!("{prefix}{i}"), weight * i as u32)).collect(),
    )
}

/// Legendre's formula: the exponent of `p` in `n!`.
pub fn factorial_valuation(n: u64, p: u64) -> u64 {
    assert!(p >= 2, "p must be at least 2");
    let mut total = 0;
    let mut q = n / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::make_group;

    #[test]
    fn su4_at_3() {
        let g = make_group(Family::SU, 4, 3).unwrap();
        let f = brute_force_p1(&g, "c2", OracleLimits::default()).unwrap();
        assert_eq!(f.render(), "1*c2^2 + 1*c4");
    }

    #[test]
    fn so6_euler_at_5() {
        let g = make_group(Family::SOEven, 3, 5).unwrap();
        let f = brute_force_p1(&g, "e", OracleLimits::default()).unwrap();
        assert_eq!(f.render(), "1*p1^2*e + 3*p2*e");
        let f = brute_force_p1(&g, "p1", OracleLimits::default()).unwrap();
        assert_eq!(f.render(), "2*p1^3 + 4*p1*p2 + 1*e^2");
    }

    #[test]
    fn sp2_at_5() {
        let g = make_group(Family::Sp, 2, 5).unwrap();
        let f = brute_force_p1(&g, "q1", OracleLimits::default()).unwrap();
        assert_eq!(f.render(), "2*q1^3 + 4*q1*q2");
    }

    #[test]
    fn refuses_beyond_bounds() {
        let g = make_group(Family::Sp, 7, 17).unwrap();
        let err = brute_force_p1(&g, "q1", OracleLimits::default()).unwrap_err();
        assert!(matches!(err, Error::Domain(ref m) if m.contains("max_rank")));
        let g = make_group(Family::Sp, 2, 17).unwrap();
        let err = brute_force_p1(&g, "q1", OracleLimits::default()).unwrap_err();
        assert!(matches!(err, Error::Domain(ref m) if m.contains("max_prime")));
    }

    fn naive_valuation(n: u64, p: u64) -> u64 {
        (1..=n)
            .map(|mut k| {
                let mut v = 0;
                while k % p == 0 {
                    k /= p;
                    v += 1;
                }
                v
            })
            .sum()
    }

    #[test]
    fn legendre() {
        assert_eq!(factorial_valuation(11, 11), 1);
        assert_eq!(factorial_valuation(11, 13), 0);
        assert_eq!(factorial_valuation(25, 5), 6);
        for n in 1..=200 {
            for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
                assert_eq!(factorial_valuation(n, p), naive_valuation(n, p), "n={n} p={p}");
            }
        }
    }
}
