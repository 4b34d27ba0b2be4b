//! Decision procedures for Samelson products of the sphere inclusions
//! `eps_i` (and `theta` for SO(2n)) in p-regular simple Lie groups.
//!
//! Two independent routes are always run side by side:
//!
//! - the P^1 criterion: `<eps_i, eps_j>` is nontrivial iff some `P^1 x_k`
//!   contains `c x_i x_j` with `c != 0`;
//! - the closed-form criteria on the type sequence.

use std::fmt;

use crate::cohomology::{p1_table, Family, GroupSpec, P1Row};
use crate::error::{Error, Result};
use crate::fp_poly::{is_prime, Scalar};
use crate::oracle::factorial_valuation;
use crate::par::{self, Execution};

/// A sphere inclusion into G_(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProductIndex {
    /// `eps_i`, 1-based. For SO(2n) these are the `n - 1` maps through
    /// SO(2n-1); otherwise `eps_i` is the i-th entry of the type.
    Epsilon(u32),
    /// `theta: S^(2n-1) -> SO(2n)`, only for SO(2n).
    Theta,
}

impl ProductIndex {
    pub fn label(self) -> String {
        match self {
            ProductIndex::Epsilon(i) => format!("eps{i}"),
            ProductIndex::Theta => "theta".to_string(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s == "theta" {
            return Ok(ProductIndex::Theta);
        }
        s.strip_prefix("eps")
            .and_then(|i| i.parse().ok())
            .filter(|&i| i > 0)
            .map(ProductIndex::Epsilon)
            .ok_or_else(|| Error::usage(format!("bad product index {s:?}; expected epsN or theta")))
    }
}

impl fmt::Display for ProductIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All product indices of `g`, in order (`theta` last).
pub fn product_indices(g: &GroupSpec) -> Vec<ProductIndex> {
    match g.family() {
        Family::SOEven => (1..g.n())
            .map(ProductIndex::Epsilon)
            .chain([ProductIndex::Theta])
            .collect(),
        _ => (1..=g.type_seq().len() as u32).map(ProductIndex::Epsilon).collect(),
    }
}

/// The type entry `n_idx`: the sphere is S^(2 n_idx - 1).
pub fn type_degree(g: &GroupSpec, idx: ProductIndex) -> Result<u32> {
    let bad = || Error::usage(format!("{idx} is not a product index of {}", g.name()));
    match (g.family(), idx) {
        (Family::SOEven, ProductIndex::Theta) => Ok(g.n()),
        (Family::SOEven, ProductIndex::Epsilon(i)) if i >= 1 && i < g.n() => Ok(2 * i),
        (_, ProductIndex::Theta) => Err(bad()),
        (_, ProductIndex::Epsilon(i)) => g
            .type_seq()
            .get((i as usize).wrapping_sub(1))
            .copied()
            .ok_or_else(bad),
    }
}

/// Position of the cohomology generator dual to `idx` in the group's context.
fn generator_position(g: &GroupSpec, idx: ProductIndex) -> Result<usize> {
    type_degree(g, idx)?;
    let name = match (g.family(), idx) {
        (Family::SOEven, ProductIndex::Theta) => "e".to_string(),
        (Family::SOEven | Family::SpinOdd, ProductIndex::Epsilon(i)) => format!("p{i}"),
        (Family::Sp, ProductIndex::Epsilon(i)) => format!("q{i}"),
        (Family::SU, ProductIndex::Epsilon(i)) => format!("c{}", i + 1),
        _ => return Err(Error::Unsupported(format!("no generators for {}", g.name()))),
    };
    g.generator_index(&name)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum P1Verdict {
    Nontrivial,
    Trivial,
    Unsupported,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormVerdict {
    Nontrivial,
    Trivial,
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    Agree,
    Disagree,
    /// SU(n) at p = n on (eps_top, eps_top): the closed form says
    /// nontrivial, P^1 has no generator in the required degree.
    EdgeCase,
    /// Only one criterion ran.
    NotApplicable,
}

impl P1Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            P1Verdict::Nontrivial => "nontrivial",
            P1Verdict::Trivial => "trivial",
            P1Verdict::Unsupported => "unsupported",
        }
    }
}

impl Agreement {
    pub fn as_str(self) -> &'static str {
        match self {
            Agreement::Agree => "agree",
            Agreement::Disagree => "disagree",
            Agreement::EdgeCase => "edge-case",
            Agreement::NotApplicable => "n/a",
        }
    }
}

impl ClosedFormVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ClosedFormVerdict::Nontrivial => "nontrivial",
            ClosedFormVerdict::Trivial => "trivial",
            ClosedFormVerdict::NotApplicable => "not_applicable",
        }
    }
}

/// A generator `x_k` whose P^1 contains `c x_a x_b`, `c != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub generator: String,
    pub coefficient: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamelsonVerdict {
    pub a: ProductIndex,
    pub b: ProductIndex,
    pub p1: P1Verdict,
    pub witnesses: Vec<Witness>,
    pub closed_form: ClosedFormVerdict,
    pub agreement: Agreement,
}

impl SamelsonVerdict {
    pub fn is_edge_case(&self) -> bool {
        self.agreement == Agreement::EdgeCase
    }
}

fn require_regular(g: &GroupSpec) -> Result<()> {
    if g.is_p_regular() {
        Ok(())
    } else {
        let top = g.type_seq().last().copied().unwrap_or(0);
        Err(Error::domain(format!(
            "{} is not {}-regular: need p >= n_l = {top}; use the p1 command for raw P^1",
            g.name(),
            g.prime()
        )))
    }
}

/// P^1 criterion for the pair `(a, b)`, with the other fields left as
/// `NotApplicable`.
pub fn decide_p1(g: &GroupSpec, a: ProductIndex, b: ProductIndex) -> Result<SamelsonVerdict> {
    require_regular(g)?;
    if g.context().is_none() {
        type_degree(g, a)?;
        type_degree(g, b)?;
        return Ok(unsupported_verdict(a, b));
    }
    let rows = p1_table(g)?;
    decide_p1_with(g, &rows, a, b)
}

fn unsupported_verdict(a: ProductIndex, b: ProductIndex) -> SamelsonVerdict {
    SamelsonVerdict {
        a,
        b,
        p1: P1Verdict::Unsupported,
        witnesses: Vec::new(),
        closed_form: ClosedFormVerdict::NotApplicable,
        agreement: Agreement::NotApplicable,
    }
}

fn decide_p1_with(
    g: &GroupSpec,
    rows: &[P1Row],
    a: ProductIndex,
    b: ProductIndex,
) -> Result<SamelsonVerdict> {
    let ty = g.type_seq();
    let (n1, nl) = (ty[0], *ty.last().unwrap());
    if g.prime() + n1 < nl + 2 {
        return Err(Error::domain(format!(
            "coefficient criterion needs p >= n_l - n_1 + 2 = {}",
            nl + 2 - n1
        )));
    }
    let ia = generator_position(g, a)?;
    let ib = generator_position(g, b)?;
    let target = (type_degree(g, a)? + type_degree(g, b)?) as i64 - (g.prime() as i64 - 1);

    // Every generator is scanned, not just the degree-filtered ones, so the
    // grading claim is checked rather than assumed.
    let mut witnesses = Vec::new();
    for (row, desc) in rows.iter().zip(g.generators()) {
        let c = row.value.coefficient_of(ia, ib)?;
        if c.is_zero() {
            continue;
        }
        if desc.halfdeg as i64 != target {
            return Err(Error::Verification(format!(
                "P^1 {} has a {}*{} term outside the degree filter",
                row.generator,
                a,
                b
            )));
        }
        witnesses.push(Witness { generator: row.generator.clone(), coefficient: c });
    }
    Ok(SamelsonVerdict {
        a,
        b,
        p1: if witnesses.is_empty() { P1Verdict::Trivial } else { P1Verdict::Nontrivial },
        witnesses,
        closed_form: ClosedFormVerdict::NotApplicable,
        agreement: Agreement::NotApplicable,
    })
}

/// Closed-form criteria on the type:
/// SU/Sp/SO(2n+1): `n_a + n_b > p`; exceptional: `n_a + n_b = n_k + p - 1`
/// for some k; SO(2n): `2i + 2j > p` on eps pairs, and the theta pairs
/// `(eps_(n-1), theta)`, `(theta, theta)` exactly when `p = 2n - 1`.
pub fn decide_closed_form(g: &GroupSpec, a: ProductIndex, b: ProductIndex) -> Result<ClosedFormVerdict> {
    require_regular(g)?;
    let na = type_degree(g, a)?;
    let nb = type_degree(g, b)?;
    let p = g.prime();
    let nontrivial = match g.family() {
        Family::SU | Family::Sp | Family::SpinOdd => na + nb > p,
        Family::SOEven => {
            let n = g.n();
            match (a, b) {
                (ProductIndex::Epsilon(_), ProductIndex::Epsilon(_)) => na + nb > p,
                (ProductIndex::Theta, ProductIndex::Theta) => p == 2 * n - 1,
                (ProductIndex::Epsilon(i), ProductIndex::Theta)
                | (ProductIndex::Theta, ProductIndex::Epsilon(i)) => i == n - 1 && p == 2 * n - 1,
            }
        }
        _ => g.type_seq().iter().any(|&nk| na + nb == nk + p - 1),
    };
    Ok(if nontrivial { ClosedFormVerdict::Nontrivial } else { ClosedFormVerdict::Trivial })
}

fn is_su_edge_cell(g: &GroupSpec, a: ProductIndex, b: ProductIndex) -> bool {
    let top = ProductIndex::Epsilon(g.n() - 1);
    g.family() == Family::SU && g.prime() == g.n() && a == top && b == top
}

fn combine(g: &GroupSpec, mut v: SamelsonVerdict, closed: ClosedFormVerdict) -> SamelsonVerdict {
    v.closed_form = closed;
    let p1 = match v.p1 {
        P1Verdict::Nontrivial => Some(true),
        P1Verdict::Trivial => Some(false),
        P1Verdict::Unsupported => None,
    };
    let cf = match closed {
        ClosedFormVerdict::Nontrivial => Some(true),
        ClosedFormVerdict::Trivial => Some(false),
        ClosedFormVerdict::NotApplicable => None,
    };
    v.agreement = match (p1, cf) {
        (Some(x), Some(y)) if x == y => Agreement::Agree,
        (Some(_), Some(_)) if is_su_edge_cell(g, v.a, v.b) => Agreement::EdgeCase,
        (Some(_), Some(_)) => Agreement::Disagree,
        _ => Agreement::NotApplicable,
    };
    v
}

/// Both criteria for a single pair.
pub fn decide(g: &GroupSpec, a: ProductIndex, b: ProductIndex) -> Result<SamelsonVerdict> {
    let v = decide_p1(g, a, b)?;
    let closed = decide_closed_form(g, a, b)?;
    Ok(combine(g, v, closed))
}

/// Verdicts for every unordered pair `a <= b` of product indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamelsonTable {
    pub group: String,
    pub p: u32,
    pub cells: Vec<SamelsonVerdict>,
}

impl SamelsonTable {
    pub fn nontrivial_p1(&self) -> impl Iterator<Item = (ProductIndex, ProductIndex)> + '_ {
        self.cells
            .iter()
            .filter(|c| c.p1 == P1Verdict::Nontrivial)
            .map(|c| (c.a, c.b))
    }

    pub fn cell(&self, a: ProductIndex, b: ProductIndex) -> Option<&SamelsonVerdict> {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.cells.iter().find(|c| c.a == a && c.b == b)
    }
}

pub fn samelson_table(g: &GroupSpec) -> Result<SamelsonTable> {
    samelson_table_with(g, Execution::Sequential)
}

pub fn samelson_table_with(g: &GroupSpec, exec: Execution) -> Result<SamelsonTable> {
    require_regular(g)?;
    let idx = product_indices(g);
    let pairs: Vec<(ProductIndex, ProductIndex)> = idx
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| idx[i..].iter().map(move |&b| (a, b)))
        .collect();
    let rows = match g.context() {
        Some(_) => Some(crate::cohomology::p1_table_with(g, exec)?),
        None => None,
    };
    let cells = par::map(exec, &pairs, |&(a, b)| {
        let v = match &rows {
            Some(rows) => decide_p1_with(g, rows, a, b)?,
            None => unsupported_verdict(a, b),
        };
        Ok(combine(g, v, decide_closed_form(g, a, b)?))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(SamelsonTable { group: g.name(), p: g.prime(), cells })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normality {
    Normal,
    NotNormal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalityReason {
    /// p = 2, from the mod-2 cohomology argument.
    James,
    /// `<eps_((p-1)/2), theta>` is detected by the `e * p_((p-1)/2)` term of `P^1 e`.
    EulerWitness { a: ProductIndex, b: ProductIndex, coefficient: Scalar },
    /// Every `<eps_i, theta>` is trivial for p > 2n - 1.
    ThetaRowTrivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityReport {
    pub n: u32,
    pub p: u32,
    pub verdict: Normality,
    pub reason: NormalityReason,
}

/// Homotopy normality of SO(2n-1)_(p) in SO(2n)_(p).
pub fn normality(n: u32, p: u32) -> Result<NormalityReport> {
    if n < 2 {
        return Err(Error::usage(format!("normality needs n >= 2, got {n}")));
    }
    if !is_prime(p as u64) {
        return Err(Error::usage(format!("{p} is not a prime")));
    }
    let (verdict, reason) = if p == 2 {
        (Normality::NotNormal, NormalityReason::James)
    } else if p < 2 * n {
        let i = (p - 1) / 2;
        let g = crate::cohomology::make_group(Family::SOEven, n, p)?;
        let pe = crate::cohomology::steenrod_p1(&g, "e")?;
        let ctx = g.context().expect("SO(2n) has generators");
        let ie = ctx.index_of("e").expect("Euler class present");
        let ip = ctx.index_of(&format!("p{i}")).expect("(p-1)/2 <= n-1");
        let c = pe.coefficient_of(ip, ie)?;
        if c.is_zero() {
            return Err(Error::Verification(format!(
                "coefficient of e*p{i} in P^1 e vanishes for n = {n}, p = {p}"
            )));
        }
        (
            Normality::NotNormal,
            NormalityReason::EulerWitness {
                a: ProductIndex::Epsilon(i),
                b: ProductIndex::Theta,
                coefficient: c,
            },
        )
    } else {
        (Normality::Normal, NormalityReason::ThetaRowTrivial)
    };
    Ok(NormalityReport { n, p, verdict, reason })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MahowaldReport {
    pub n: u32,
    pub p: u32,
    /// Exponent of p in (2n-1)!.
    pub valuation: u64,
    pub theta_theta: P1Verdict,
    pub consistent: bool,
}

/// Checks `nu_p((2n-1)!) > 0` against the P^1 verdict on `<theta, theta>`.
pub fn mahowald_check(n: u32, p: u32) -> Result<MahowaldReport> {
    let g = crate::cohomology::make_group(Family::SOEven, n, p)?;
    let v = decide_p1(&g, ProductIndex::Theta, ProductIndex::Theta)?;
    let valuation = factorial_valuation(2 * n as u64 - 1, p as u64);
    Ok(MahowaldReport {
        n,
        p,
        valuation,
        theta_theta: v.p1,
        consistent: (valuation > 0) == (v.p1 == P1Verdict::Nontrivial),
    })
}
