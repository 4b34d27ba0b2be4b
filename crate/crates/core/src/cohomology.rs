//! Group catalog and the Steenrod P^1 evaluator on H*(BG; Z/p).
//!
//! Generators are normalized by their restriction to the maximal torus:
//! `c_i` restricts to the i-th elementary symmetric polynomial in t_1..t_n,
//! `q_i` and `p_i` to the i-th elementary symmetric polynomial in the squares
//! t_1^2..t_n^2, and the Euler class `e` to t_1...t_n. P^1 acts on the torus
//! as the derivation with `P^1 t_j = t_j^p`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fp_poly::{check_odd_prime, Context, Generator, ModPoly, Scalar};
use crate::par::{self, Execution};
use crate::symmetric::ElemBasis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    SU,
    Sp,
    /// SO(2n+1)
    SpinOdd,
    /// SO(2n)
    SOEven,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::SU,
        Family::Sp,
        Family::SpinOdd,
        Family::SOEven,
        Family::G2,
        Family::F4,
        Family::E6,
        Family::E7,
        Family::E8,
    ];

    pub fn is_exceptional(self) -> bool {
        !matches!(self, Family::SU | Family::Sp | Family::SpinOdd | Family::SOEven)
    }

    /// Smallest admissible rank parameter for the classical families.
    pub fn min_n(self) -> u32 {
        match self {
            Family::SU | Family::SOEven => 2,
            _ => 1,
        }
    }

    fn exceptional_type(self) -> Option<&'static [u32]> {
        Some(match self {
            Family::G2 => &[2, 6],
            Family::F4 => &[2, 6, 8, 12],
            Family::E6 => &[2, 5, 6, 8, 9, 12],
            Family::E7 => &[2, 6, 8, 10, 12, 14, 18],
            Family::E8 => &[2, 8, 12, 14, 18, 20, 24, 30],
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::SU => "SU",
            Family::Sp => "Sp",
            Family::SpinOdd => "SOOdd",
            Family::SOEven => "SO",
            Family::G2 => "G2",
            Family::F4 => "F4",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `SU`, `Sp`, `SO`/`SOEven` (SO(2n)), `SOOdd`/`SpinOdd`/`Spin`
    /// (SO(2n+1)) and the exceptional names, case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "su" => Family::SU,
            "sp" => Family::Sp,
            "so" | "soeven" | "so_even" => Family::SOEven,
            "soodd" | "so_odd" | "spinodd" | "spin" => Family::SpinOdd,
            "g2" => Family::G2,
            "f4" => Family::F4,
            "e6" => Family::E6,
            "e7" => Family::E7,
            "e8" => Family::E8,
            _ => return Err(Error::usage(format!("unknown group family {s:?}"))),
        })
    }
}

/// How a generator restricts to the maximal torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusRecipe {
    /// i-th elementary symmetric polynomial in t_1..t_n.
    Elementary(usize),
    /// i-th elementary symmetric polynomial in t_1^2..t_n^2.
    ElementaryInSquares(usize),
    /// t_1 ... t_n.
    EulerProduct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDescriptor {
    pub name: String,
    pub halfdeg: u32,
    pub recipe: TorusRecipe,
}

/// A simple Lie group at a prime, with its type and cohomology generators.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    family: Family,
    n: u32,
    p: u32,
    type_seq: Vec<u32>,
    generators: Vec<GeneratorDescriptor>,
    ctx: Option<Arc<Context>>,
    basis: Option<Arc<ElemBasis>>,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        (self.family, self.n, self.p) == (other.family, other.n, other.p)
    }
}

impl Eq for GroupSpec {}

/// Builds the group `family` with rank parameter `n` at the odd prime `p`.
/// The rank parameter is ignored for the exceptional families.
pub fn make_group(family: Family, n: u32, p: u32) -> Result<GroupSpec> {
    check_odd_prime(p)?;
    if let Some(ty) = family.exceptional_type() {
        return Ok(GroupSpec {
            family,
            n: 0,
            p,
            type_seq: ty.to_vec(),
            generators: Vec::new(),
            ctx: None,
            basis: None,
        });
    }
    if n < family.min_n() {
        return Err(Error::usage(format!(
            "{family} requires n >= {}, got n = {n}",
            family.min_n()
        )));
    }
    let nu = n as usize;
    let (type_seq, generators, basis): (Vec<u32>, Vec<GeneratorDescriptor>, _) = match family {
        Family::SU => (
            (2..=n).collect(),
            (2..=nu)
                .map(|i| GeneratorDescriptor {
                    name: format!("c{i}"),
                    halfdeg: i as u32,
                    recipe: TorusRecipe::Elementary(i),
                })
                .collect(),
            ElemBasis::new(p, nu, 1, "c")?,
        ),
        Family::Sp | Family::SpinOdd => {
            let prefix = if family == Family::Sp { "q" } else { "p" };
            (
                (1..=n).map(|i| 2 * i).collect(),
                (1..=nu)
                    .map(|i| GeneratorDescriptor {
                        name: format!("{prefix}{i}"),
                        halfdeg: 2 * i as u32,
                        recipe: TorusRecipe::ElementaryInSquares(i),
                    })
                    .collect(),
                ElemBasis::new(p, nu, 2, prefix)?,
            )
        }
        Family::SOEven => {
            let mut ty: Vec<u32> = (1..n).map(|i| 2 * i).chain([n]).collect();
            ty.sort_unstable();
            let mut gens: Vec<_> = (1..nu)
                .map(|i| GeneratorDescriptor {
                    name: format!("p{i}"),
                    halfdeg: 2 * i as u32,
                    recipe: TorusRecipe::ElementaryInSquares(i),
                })
                .collect();
            gens.push(GeneratorDescriptor {
                name: "e".into(),
                halfdeg: n,
                recipe: TorusRecipe::EulerProduct,
            });
            (ty, gens, ElemBasis::new(p, nu, 2, "p")?)
        }
        _ => unreachable!("exceptional families handled above"),
    };
    let ctx = if matches!(family, Family::Sp | Family::SpinOdd) {
        Arc::clone(basis.context())
    } else {
        Context::new(
            p,
            generators.iter().map(|g| Generator::new(g.name.clone(), g.halfdeg)).collect(),
        )?
    };
    Ok(GroupSpec {
        family,
        n,
        p,
        type_seq,
        generators,
        ctx: Some(ctx),
        basis: Some(basis),
    })
}

impl GroupSpec {
    pub fn family(&self) -> Family {
        self.family
    }

    /// Rank parameter (0 for exceptional groups).
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// The type `n_1 <= ... <= n_l`.
    pub fn type_seq(&self) -> &[u32] {
        &self.type_seq
    }

    pub fn generators(&self) -> &[GeneratorDescriptor] {
        &self.generators
    }

    /// Polynomial ring of H*(BG; Z/p); `None` for exceptional groups.
    pub fn context(&self) -> Option<&Arc<Context>> {
        self.ctx.as_ref()
    }

    /// The elementary-symmetric basis the evaluator works in.
    pub fn basis(&self) -> Option<&Arc<ElemBasis>> {
        self.basis.as_ref()
    }

    /// The same group at another prime.
    pub fn at_prime(&self, p: u32) -> Result<GroupSpec> {
        make_group(self.family, self.n.max(self.family.min_n()), p)
    }

    /// True iff p >= n_l.
    pub fn is_p_regular(&self) -> bool {
        self.p >= *self.type_seq.last().expect("type is never empty")
    }

    /// Display name such as `SO(12)` or `G2`.
    pub fn name(&self) -> String {
        match self.family {
            Family::SU => format!("SU({})", self.n),
            Family::Sp => format!("Sp({})", self.n),
            Family::SpinOdd => format!("SO({})", 2 * self.n + 1),
            Family::SOEven => format!("SO({})", 2 * self.n),
            f => f.as_str().to_string(),
        }
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| {
                Error::usage(format!(
                    "{name} is not a generator of H*(B{};Z/{})",
                    self.name(),
                    self.p
                ))
            })
    }
}

fn unsupported(g: &GroupSpec) -> Error {
    Error::Unsupported(format!(
        "no invariant-theoretic generators implemented for {}",
        g.name()
    ))
}

/// P^1 of the named generator, written in the group's generator basis.
pub fn steenrod_p1(g: &GroupSpec, x: &str) -> Result<ModPoly> {
    let (Some(ctx), Some(basis)) = (g.ctx.as_ref(), g.basis.as_ref()) else {
        return Err(unsupported(g));
    };
    let desc = &g.generators[g.generator_index(x)?];
    let p = g.p;
    let nu = g.n as usize;
    let half = (p as usize).div_ceil(2);
    let two = Scalar::new(2, p)?;

    let out = match (g.family, desc.recipe) {
        (Family::SU, TorusRecipe::Elementary(i)) => {
            let d = basis.p1_elementary(i, p as usize, Scalar::new(1, p)?)?;
            d.substitute(0, &ModPoly::zero(ctx))?
        }
        (Family::Sp | Family::SpinOdd, TorusRecipe::ElementaryInSquares(i)) => {
            basis.p1_elementary(i, half, two)?
        }
        (Family::SOEven, TorusRecipe::ElementaryInSquares(i)) => {
            let d = basis.p1_elementary(i, half, two)?;
            euler_substitute(&d, nu, ctx)?
        }
        (Family::SOEven, TorusRecipe::EulerProduct) => {
            let s = basis.power_sum(half - 1)?;
            let e = ModPoly::var_named(ctx, "e")?;
            &euler_substitute(&s, nu, ctx)? * &e
        }
        (family, recipe) => unreachable!("{family:?} has no {recipe:?} generator"),
    };
    debug_assert!(out.is_zero() || out.homogeneous_degree() == Some(desc.halfdeg + p - 1));
    Ok(out)
}

/// Rewrites `p_n = e_n(t^2)` as `e^2` to land in F_p[p_1..p_(n-1), e].
fn euler_substitute(f: &ModPoly, n: usize, target: &Arc<Context>) -> Result<ModPoly> {
    let e = ModPoly::var_named(target, "e")?;
    f.substitute(n - 1, &(&e * &e))
}

/// One row of a P^1 table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P1Row {
    pub generator: String,
    pub value: ModPoly,
}

/// P^1 of every generator in catalog order.
pub fn p1_table(g: &GroupSpec) -> Result<Vec<P1Row>> {
    p1_table_with(g, Execution::Sequential)
}

pub fn p1_table_with(g: &GroupSpec, exec: Execution) -> Result<Vec<P1Row>> {
    if g.ctx.is_none() {
        return Err(unsupported(g));
    }
    par::map(exec, &g.generators, |d| {
        steenrod_p1(g, &d.name).map(|value| P1Row { generator: d.name.clone(), value })
    })
    .into_iter()
    .collect()
}
