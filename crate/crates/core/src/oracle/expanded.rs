use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fp_poly::{check_odd_prime, reduce, Context, ModPoly, Monomial};

/// A polynomial written out in the torus (or squared-torus) variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedPoly {
    p: u32,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, u32>,
}

impl ExpandedPoly {
    pub fn zero(p: u32, nvars: usize) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(ExpandedPoly { p, nvars, terms: BTreeMap::new() })
    }

    fn empty_like(&self) -> Self {
        ExpandedPoly { p: self.p, nvars: self.nvars, terms: BTreeMap::new() }
    }

    pub fn one(p: u32, nvars: usize) -> Result<Self> {
        Self::from_terms(p, nvars, [(vec![0; nvars], 1)])
    }

    pub fn var(p: u32, nvars: usize, j: usize) -> Result<Self> {
        if j >= nvars {
            return Err(Error::usage(format!("variable {j} out of range for {nvars} variables")));
        }
        let mut e = vec![0; nvars];
        e[j] = 1;
        Self::from_terms(p, nvars, [(e, 1)])
    }

    pub fn from_terms<I>(p: u32, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, i64)>,
    {
        let mut out = Self::zero(p, nvars)?;
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::usage("exponent vector has the wrong length"));
            }
            out.add_term(e, reduce(c, p));
        }
        Ok(out)
    }

    /// The k-th elementary symmetric polynomial in `nvars` variables.
    pub fn elementary(p: u32, nvars: usize, k: usize) -> Result<Self> {
        let mut out = Self::zero(p, nvars)?;
        if k > nvars {
            return Ok(out);
        }
        for subset in subsets(nvars, k) {
            let mut e = vec![0; nvars];
            for j in subset {
                e[j] = 1;
            }
            out.add_term(e, 1);
        }
        Ok(out)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u32)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> u32 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p as u64;
        let slot = self.terms.entry(e.clone()).or_insert(0);
        *slot = ((*slot as u64 + c as u64) % p) as u32;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!((self.p, self.nvars), (other.p, other.nvars), "incompatible expanded polynomials");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = reduce(c, self.p) as u64;
        let mut out = self.empty_like();
        for (e, &v) in &self.terms {
            out.add_term(e.clone(), ((v as u64 * c) % self.p as u64) as u32);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let p = self.p as u64;
        let mut out = self.empty_like();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ((ca as u64 * cb as u64) % p) as u32);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.p, self.nvars).expect("prime already validated");
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `t_j -> t_j^k` for every variable.
    pub fn inflate(&self, k: u32) -> Self {
        let mut out = self.empty_like();
        for (e, &c) in &self.terms {
            out.add_term(e.iter().map(|x| x * k).collect(), c);
        }
        out
    }

    /// Exchanges variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = self.empty_like();
        for (e, &c) in &self.terms {
            let mut e = e.clone();
            e.swap(i, j);
            out.add_term(e, c);
        }
        out
    }

    /// Applies the derivation determined by `images[j] = D(t_j)`, monomial by
    /// monomial, using the product rule `D(t^a) = sum_j a_j t^(a - e_j) D(t_j)`.
    pub fn derive(&self, images: &[ExpandedPoly]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let p = self.p as u64;
        let mut out = self.empty_like();
        for (e, &c) in &self.terms {
            for (j, image) in images.iter().enumerate() {
                if e[j] == 0 {
                    continue;
                }
                self.check(image);
                let factor = (c as u64 * (e[j] as u64 % p)) % p;
                if factor == 0 {
                    continue;
                }
                let mut rest = e.clone();
                rest[j] -= 1;
                for (ie, &ic) in &image.terms {
                    let m = rest.iter().zip(ie).map(|(x, y)| x + y).collect();
                    out.add_term(m, ((factor * ic as u64) % p) as u32);
                }
            }
        }
        out
    }

    /// The Frobenius-type derivation `D(t_j) = t_j^p` (P^1 on degree-2 classes).
    pub fn steenrod_derivation(&self) -> Self {
        let images: Vec<_> = (0..self.nvars)
            .map(|j| {
                let mut e = vec![0; self.nvars];
                e[j] = self.p;
                Self::from_terms(self.p, self.nvars, [(e, 1)]).expect("prime already validated")
            })
            .collect();
        self.derive(&images)
    }

    /// Splits a polynomial in t_1..t_n whose monomials have all exponents even
    /// or all exponents odd into `(A, B)` with `f = A(t^2) + t_1...t_n * B(t^2)`,
    /// both returned in the squared variables.
    pub fn split_euler(&self) -> Result<(Self, Self)> {
        let mut even = self.empty_like();
        let mut odd = self.empty_like();
        for (e, &c) in &self.terms {
            if e.iter().all(|x| x % 2 == 0) {
                even.add_term(e.iter().map(|x| x / 2).collect(), c);
            } else if e.iter().all(|x| x % 2 == 1) {
                odd.add_term(e.iter().map(|x| (x - 1) / 2).collect(), c);
            } else {
                return Err(Error::domain(format!(
                    "monomial {e:?} mixes parities; not in the Weyl-invariant ring"
                )));
            }
        }
        Ok((even, odd))
    }

    /// Converts a symmetric polynomial to the elementary-symmetric basis.
    ///
    /// Generator `k` of `target` stands for `e_{k+1}`; the target must have
    /// exactly one generator per variable. Symmetry is checked on the adjacent
    /// transpositions first. Elimination then repeatedly removes the
    /// lex-leading monomial `y^a` with `coeff * e_1^(a1-a2) ... e_l^(al)`.
    pub fn to_elementary_basis(&self, target: &Arc<Context>) -> Result<ModPoly> {
        let l = self.nvars;
        if target.len() != l {
            return Err(Error::usage(format!(
                "target has {} generators but the polynomial has {l} variables",
                target.len()
            )));
        }
        if target.prime() != self.p {
            return Err(Error::usage("target context has a different prime"));
        }
        for i in 0..l.saturating_sub(1) {
            if self.swap_vars(i, i + 1) != *self {
                return Err(Error::domain(format!(
                    "polynomial is not symmetric: transposition (y{} y{}) changes it",
                    i + 1,
                    i + 2
                )));
            }
        }

        let p = self.p as u64;
        let mut dominant: BTreeMap<Vec<u32>, u32> = self
            .terms
            .iter()
            .filter(|(e, _)| is_dominant(e))
            .map(|(e, &c)| (e.clone(), c))
            .collect();
        let subsets_by_size: Vec<Vec<Vec<usize>>> = (0..=l).map(|k| subsets(l, k)).collect();
        let mut out = Vec::new();

        while let Some((lead, &c)) = dominant.last_key_value() {
            let lead = lead.clone();
            let b: Vec<u32> = (0..l)
                .map(|k| lead[k] - lead.get(k + 1).copied().unwrap_or(0))
                .collect();
            out.push((Monomial::from_exponents(b.clone()), c as i64));

            let mut prod: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
            prod.insert(vec![0; l], 1);
            for (k, &times) in b.iter().enumerate() {
                for _ in 0..times {
                    prod = mul_elementary_dominant(&prod, &subsets_by_size[k + 1], p);
                }
            }
            debug_assert_eq!(prod.get(&lead), Some(&1));
            for (e, v) in prod {
                let slot = dominant.entry(e.clone()).or_insert(0);
                *slot = ((*slot as u64 + (p - c as u64) * v as u64) % p) as u32;
                if *slot == 0 {
                    dominant.remove(&e);
                }
            }
        }
        Ok(ModPoly::from_terms(target, out))
    }
}

/// Expands a polynomial in the elementary-symmetric generators of `f`'s
/// context (generator `k` = `e_{k+1}`) into `nvars` variables.
pub fn expand_elementary(f: &ModPoly, nvars: usize) -> Result<ExpandedPoly> {
    let p = f.prime();
    let elementary: Vec<ExpandedPoly> = (1..=f.context().len())
        .map(|k| ExpandedPoly::elementary(p, nvars, k))
        .collect::<Result<_>>()?;
    let mut out = ExpandedPoly::zero(p, nvars)?;
    for (m, c) in f.terms() {
        let mut term = ExpandedPoly::one(p, nvars)?.scale(c.value() as i64);
        for (k, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                term = term.mul(&elementary[k].pow(e));
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}

fn is_dominant(e: &[u32]) -> bool {
    e.windows(2).all(|w| w[0] >= w[1])
}

fn sorted_desc(mut e: Vec<u32>) -> Vec<u32> {
    e.sort_unstable_by(|a, b| b.cmp(a));
    e
}

/// Product of a symmetric polynomial (kept only on its dominant monomials)
/// with `e_k`, again kept on dominant monomials. The coefficient of a
/// dominant `m` is the sum over k-subsets `T` of the coefficient of `m - 1_T`,
/// which by symmetry is the stored coefficient of its sorted rearrangement.
fn mul_elementary_dominant(
    s: &BTreeMap<Vec<u32>, u32>,
    k_subsets: &[Vec<usize>],
    p: u64,
) -> BTreeMap<Vec<u32>, u32> {
    let mut candidates = BTreeSet::new();
    for a in s.keys() {
        for t in k_subsets {
            let mut m = a.clone();
            for &j in t {
                m[j] += 1;
            }
            candidates.insert(sorted_desc(m));
        }
    }
    let mut out = BTreeMap::new();
    for m in candidates {
        let mut acc = 0u64;
        for t in k_subsets {
            if t.iter().all(|&j| m[j] > 0) {
                let mut r = m.clone();
                for &j in t {
                    r[j] -= 1;
                }
                acc += s.get(&sorted_desc(r)).copied().unwrap_or(0) as u64;
            }
        }
        let acc = (acc % p) as u32;
        if acc != 0 {
            out.insert(m, acc);
        }
    }
    out
}

/// All k-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            if n - j < k - cur.len() {
                break;
            }
            cur.push(j);
            go(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}
