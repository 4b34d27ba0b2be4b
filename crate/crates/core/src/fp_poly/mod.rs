//! Sparse multivariate polynomials over F_p in a fixed, graded generator list.
//!
//! A [`Context`] fixes the prime and the ordered list of generators with
//! their half-degrees. A [`ModPoly`] is a canonical map from [`Monomial`]s
//! to non-zero residues; two polynomials are equal exactly when their
//! contexts and term maps are equal.
//!
//! Terms are presented in graded lexicographic order: larger half-degree
//! first, ties broken lexicographically on the exponent vector with the
//! first generator most significant.

mod scalar;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use scalar::{check_odd_prime, is_prime, Scalar};
pub(crate) use scalar::reduce;

use crate::error::{Error, Result};

/// One polynomial generator: display name and half-degree (cohomological degree / 2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub halfdeg: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, halfdeg: u32) -> Self {
        Generator { name: name.into(), halfdeg }
    }
}

/// The ambient ring F_p[x_1, ..., x_n] with graded generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    p: u32,
    gens: Vec<Generator>,
}

impl Context {
    pub fn new(p: u32, gens: Vec<Generator>) -> Result<Arc<Self>> {
        check_odd_prime(p)?;
        for (i, g) in gens.iter().enumerate() {
            if g.halfdeg == 0 {
                return Err(Error::usage(format!("generator {} has half-degree 0", g.name)));
            }
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::usage(format!("duplicate generator name {}", g.name)));
            }
        }
        Ok(Arc::new(Context { p, gens }))
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn halfdeg(&self, i: usize) -> u32 {
        self.gens[i].halfdeg
    }

    pub fn name(&self, i: usize) -> &str {
        &self.gens[i].name
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.gens.len() {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "generator index {i} out of range for {} generators",
                self.gens.len()
            )))
        }
    }
}

fn same_context(a: &Arc<Context>, b: &Arc<Context>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector indexed by generator position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn var(len: usize, i: usize) -> Self {
        let mut e = vec![0; len];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Number of generator factors counted with multiplicity.
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn halfdeg(&self, ctx: &Context) -> u32 {
        self.0
            .iter()
            .zip(&ctx.gens)
            .map(|(&e, g)| e * g.halfdeg)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }
}

/// Polynomial over F_p in canonical sparse form (no zero coefficients stored).
#[derive(Clone)]
pub struct ModPoly {
    ctx: Arc<Context>,
    terms: BTreeMap<Monomial, u32>,
}

impl PartialEq for ModPoly {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for ModPoly {}

impl ModPoly {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        ModPoly { ctx: Arc::clone(ctx), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Arc<Context>, c: i64) -> Self {
        Self::from_terms(ctx, [(Monomial::one(ctx.len()), c)])
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::constant(ctx, 1)
    }

    /// The generator `x_i` with coefficient 1.
    pub fn var(ctx: &Arc<Context>, i: usize) -> Result<Self> {
        ctx.check_index(i)?;
        Ok(Self::from_terms(ctx, [(Monomial::var(ctx.len(), i), 1)]))
    }

    pub fn var_named(ctx: &Arc<Context>, name: &str) -> Result<Self> {
        let i = ctx
            .index_of(name)
            .ok_or_else(|| Error::usage(format!("no generator named {name}")))?;
        Self::var(ctx, i)
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(ctx: &Arc<Context>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let p = ctx.p;
        let mut out = ModPoly::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.0.len(), ctx.len(), "monomial length does not match context");
            out.add_term(m, reduce(c, p));
        }
        out
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn prime(&self) -> u32 {
        self.ctx.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of an arbitrary monomial (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        Scalar::from_residue(self.terms.get(m).copied().unwrap_or(0), self.ctx.p)
    }

    /// Terms in graded lexicographic order, leading term first.
    pub fn terms(&self) -> Vec<(&Monomial, Scalar)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(m, &c)| (m, Scalar::from_residue(c, self.ctx.p)))
            .collect();
        v.sort_by(|(a, _), (b, _)| {
            b.halfdeg(&self.ctx)
                .cmp(&a.halfdeg(&self.ctx))
                .then_with(|| b.cmp(a))
        });
        v
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.ctx.p;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = ((*o.get() as u64 + c as u64) % p as u64) as u32;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, other: &ModPoly) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::usage("polynomials live in different contexts"))
        }
    }

    pub fn add(&self, other: &ModPoly) -> Result<ModPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ModPoly) -> Result<ModPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ModPoly {
        let p = self.ctx.p;
        ModPoly {
            ctx: Arc::clone(&self.ctx),
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), p - c)).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> ModPoly {
        let p = self.ctx.p;
        let c = reduce(c, p) as u64;
        if c == 0 {
            return ModPoly::zero(&self.ctx);
        }
        ModPoly {
            ctx: Arc::clone(&self.ctx),
            terms: self
                .terms
                .iter()
                .map(|(m, &v)| (m.clone(), ((v as u64 * c) % p as u64) as u32))
                .collect(),
        }
    }

    pub fn mul(&self, other: &ModPoly) -> Result<ModPoly> {
        self.check_same(other)?;
        let p = self.ctx.p as u64;
        let mut out = ModPoly::zero(&self.ctx);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                out.add_term(ma.mul(mb), ((ca as u64 * cb as u64) % p) as u32);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut exp: u32) -> ModPoly {
        let mut acc = ModPoly::one(&self.ctx);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient of `x_i * x_j` (of `x_i^2` when `i == j`).
    pub fn coefficient_of(&self, i: usize, j: usize) -> Result<Scalar> {
        self.ctx.check_index(i)?;
        self.ctx.check_index(j)?;
        let mut m = Monomial::one(self.ctx.len());
        m.0[i] += 1;
        m.0[j] += 1;
        Ok(self.coefficient(&m))
    }

    /// Terms of total exponent one. A polynomial with zero linear part is decomposable.
    pub fn linear_part(&self) -> ModPoly {
        self.filter_terms(|m| m.total_degree() == 1)
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> ModPoly {
        ModPoly {
            ctx: Arc::clone(&self.ctx),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// `Some(d)` if every term has half-degree `d`; the zero polynomial is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.halfdeg(&self.ctx));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Replaces generator `i` by `g` and maps every other generator by name
    /// into `g`'s context.
    ///
    /// `g` must be zero or homogeneous of the same half-degree as `x_i`, and
    /// every other generator that actually occurs in `self` must exist in the
    /// target context with the same half-degree.
    pub fn substitute(&self, i: usize, g: &ModPoly) -> Result<ModPoly> {
        self.ctx.check_index(i)?;
        let target = g.context();
        if target.p != self.ctx.p {
            return Err(Error::usage("substitution target has a different prime"));
        }
        let want = self.ctx.halfdeg(i);
        if !g.is_zero() && g.homogeneous_degree() != Some(want) {
            return Err(Error::usage(format!(
                "grading mismatch: {} has half-degree {want} but the replacement is not homogeneous of that degree",
                self.ctx.name(i)
            )));
        }

        let mut used = vec![false; self.ctx.len()];
        for m in self.terms.keys() {
            for (k, &e) in m.0.iter().enumerate() {
                used[k] |= e > 0;
            }
        }
        let mut map = vec![None; self.ctx.len()];
        for k in (0..self.ctx.len()).filter(|&k| k != i && used[k]) {
            let name = self.ctx.name(k);
            let t = target
                .index_of(name)
                .ok_or_else(|| Error::usage(format!("generator {name} missing from target context")))?;
            if target.halfdeg(t) != self.ctx.halfdeg(k) {
                return Err(Error::usage(format!("grading mismatch for generator {name}")));
            }
            map[k] = Some(t);
        }

        let mut powers: Vec<ModPoly> = vec![ModPoly::one(target)];
        let mut out = ModPoly::zero(target);
        for (m, &c) in &self.terms {
            let k = m.0[i] as usize;
            while powers.len() <= k {
                let next = &powers[powers.len() - 1] * g;
                powers.push(next);
            }
            let mut mono = Monomial::one(target.len());
            for (src, &e) in m.0.iter().enumerate() {
                if let Some(t) = map[src] {
                    mono.0[t] += e;
                }
            }
            let p = target.p as u64;
            for (gm, &gc) in &powers[k].terms {
                out.add_term(mono.mul(gm), ((c as u64 * gc as u64) % p) as u32);
            }
        }
        Ok(out)
    }

    /// Rebuilds the term map from scratch; canonical input is returned unchanged.
    pub fn renormalized(&self) -> ModPoly {
        let p = self.ctx.p as i64;
        ModPoly::from_terms(
            &self.ctx,
            self.terms.iter().map(|(m, &c)| (m.clone(), c as i64 + p)),
        )
    }

    /// Canonical rendering: `2*p1^3 + 4*p1*p2 + 1*e^2`.
    pub fn render(&self) -> String {
        self.render_with(false)
    }

    /// Same as [`render`](Self::render) with coefficients shown as symmetric residues.
    pub fn render_signed(&self) -> String {
        self.render_with(true)
    }

    fn render_with(&self, signed: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms().into_iter().enumerate() {
            let v = if signed { c.symmetric() } else { c.value() as i64 };
            match (idx, v < 0) {
                (0, false) => out.push_str(&v.to_string()),
                (0, true) => out.push_str(&format!("-{}", -v)),
                (_, false) => out.push_str(&format!(" + {v}")),
                (_, true) => out.push_str(&format!(" - {}", -v)),
            }
            for (k, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => out.push_str(&format!("*{}", self.ctx.name(k))),
                    _ => out.push_str(&format!("*{}^{e}", self.ctx.name(k))),
                }
            }
        }
        out
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly[p={}]({})", self.ctx.p, self.render())
    }
}

// Operator forms panic on a context mismatch; use the named methods for a `Result`.

impl std::ops::Add for &ModPoly {
    type Output = ModPoly;
    fn add(self, rhs: &ModPoly) -> ModPoly {
        ModPoly::add(self, rhs).expect("context mismatch")
    }
}

impl std::ops::Sub for &ModPoly {
    type Output = ModPoly;
    fn sub(self, rhs: &ModPoly) -> ModPoly {
        ModPoly::sub(self, rhs).expect("context mismatch")
    }
}

impl std::ops::Mul for &ModPoly {
    type Output = ModPoly;
    fn mul(self, rhs: &ModPoly) -> ModPoly {
        ModPoly::mul(self, rhs).expect("context mismatch")
    }
}

impl std::ops::Neg for &ModPoly {
    type Output = ModPoly;
    fn neg(self) -> ModPoly {
        ModPoly::neg(self)
    }
}
