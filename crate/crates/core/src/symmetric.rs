//! Symmetric-function algebra in the elementary-symmetric basis over F_p.
//!
//! An [`ElemBasis`] stands for F_p[e_1, ..., e_l] where e_i is the i-th
//! elementary symmetric polynomial in l variables y_1..y_l. Power sums are
//! produced by Newton's recurrence and memoized per basis.

use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fp_poly::{Context, Generator, ModPoly, Scalar};
use crate::oracle::{expand_elementary, ExpandedPoly};

#[derive(Debug)]
pub struct ElemBasis {
    ctx: Arc<Context>,
    rank: usize,
    weight: u32,
    /// `power_sums[m - 1] = s_m`.
    power_sums: Mutex<Vec<ModPoly>>,
}

impl ElemBasis {
    /// Generators are named `{prefix}1 .. {prefix}{rank}` with half-degree
    /// `i * weight`. Weight 1 means y_j = t_j, weight 2 means y_j = t_j^2.
    pub fn new(p: u32, rank: usize, weight: u32, prefix: &str) -> Result<Arc<Self>> {
        if rank == 0 {
            return Err(Error::usage("elementary basis needs at least one variable"));
        }
        if !(1..=2).contains(&weight) {
            return Err(Error::usage(format!("weight must be 1 or 2, got {weight}")));
        }
        let gens = (1..=rank)
            .map(|i| Generator::new(format!("{prefix}{i}"), i as u32 * weight))
            .collect();
        Ok(Arc::new(ElemBasis {
            ctx: Context::new(p, gens)?,
            rank,
            weight,
            power_sums: Mutex::new(Vec::new()),
        }))
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn prime(&self) -> u32 {
        self.ctx.prime()
    }

    /// `e_i`, with `e_0 = 1` and `e_i = 0` for `i > rank`.
    pub fn e(&self, i: usize) -> ModPoly {
        match i {
            0 => ModPoly::one(&self.ctx),
            i if i > self.rank => ModPoly::zero(&self.ctx),
            i => ModPoly::var(&self.ctx, i - 1).expect("index in range"),
        }
    }

    /// The power sum `s_m = y_1^m + ... + y_l^m` in the e-basis.
    pub fn power_sum(&self, m: usize) -> Result<ModPoly> {
        if m == 0 {
            return Err(Error::usage("power sum s_0 is the constant rank; m must be >= 1"));
        }
        let mut memo = self.power_sums.lock().expect("power sum cache poisoned");
        while memo.len() < m {
            let next = self.newton_step(&memo);
            memo.push(next);
        }
        Ok(memo[m - 1].clone())
    }

    /// `s_m = sum_{i=1}^{m-1} (-1)^(i-1) e_i s_(m-i) + (-1)^(m-1) m e_m`, where
    /// `m = known.len() + 1` and `known` holds s_1..s_(m-1).
    fn newton_step(&self, known: &[ModPoly]) -> ModPoly {
        let m = known.len() + 1;
        let mut s = if m <= self.rank {
            let sign = if (m - 1).is_multiple_of(2) { 1 } else { -1 };
            self.e(m).scale(sign * m as i64)
        } else {
            ModPoly::zero(&self.ctx)
        };
        for i in 1..m.min(self.rank + 1) {
            let term = &self.e(i) * &known[m - i - 1];
            s = if (i - 1) % 2 == 0 { &s + &term } else { &s - &term };
        }
        s
    }

    /// `sum_j y_j^m e_k(y with y_j omitted)`, computed as
    /// `sum_{r=0}^k (-1)^r e_(k-r) s_(m+r)`.
    pub fn weighted_relative_sum(&self, m: usize, k: usize) -> Result<ModPoly> {
        if k >= self.rank {
            return Err(Error::usage(format!(
                "k = {k} must be below the rank {}",
                self.rank
            )));
        }
        if m == 0 {
            return Err(Error::usage("m must be >= 1"));
        }
        let mut out = ModPoly::zero(&self.ctx);
        for r in 0..=k {
            let term = &self.e(k - r) * &self.power_sum(m + r)?;
            out = if r % 2 == 0 { &out + &term } else { &out - &term };
        }
        Ok(out)
    }

    /// Applies the derivation `D(y_j) = lambda * y_j^m` to `e_i`:
    /// `D(e_i) = lambda * sum_j y_j^m e_(i-1)(y with y_j omitted)`.
    pub fn p1_elementary(&self, i: usize, m: usize, lambda: Scalar) -> Result<ModPoly> {
        if i == 0 || i > self.rank {
            return Err(Error::usage(format!(
                "elementary index {i} out of range 1..={}",
                self.rank
            )));
        }
        if lambda.modulus() != self.prime() {
            return Err(Error::usage("scalar modulus does not match the basis prime"));
        }
        Ok(self.weighted_relative_sum(m, i - 1)?.scale(lambda.value() as i64))
    }

    /// Rewrites a symmetric polynomial in y_1..y_l in this basis.
    pub fn symmetrize(&self, f: &ExpandedPoly) -> Result<ModPoly> {
        f.to_elementary_basis(&self.ctx)
    }

    /// Writes an e-basis polynomial out in the variables y_1..y_l.
    pub fn expand(&self, f: &ModPoly) -> Result<ExpandedPoly> {
        if f.context() != &self.ctx {
            return Err(Error::usage("polynomial is not in this basis"));
        }
        expand_elementary(f, self.rank)
    }
}
