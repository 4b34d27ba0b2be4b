//! Steenrod P^1 on the mod-p cohomology of classifying spaces of the
//! classical Lie groups, and the decision procedures for (non)triviality of
//! Samelson products in p-regular simple Lie groups built on top of it.
//!
//! Layers, bottom up:
//!
//! - [`fp_poly`]: sparse graded polynomials over F_p.
//! - [`symmetric`]: the elementary-symmetric basis, Newton's identities and
//!   the derivation formula for P^1 on elementary symmetric polynomials.
//! - [`cohomology`]: the group catalog and the P^1 evaluator.
//! - [`samelson`]: P^1 coefficient criterion, closed-form criteria,
//!   homotopy normality of SO(2n-1) in SO(2n), and the factorial valuation check.
//! - [`oracle`]: brute-force torus expansion used to verify everything above.
//! - [`sweep`] and [`report`]: batch tables and their serializable form.

pub mod cohomology;
pub mod error;
pub mod fp_poly;
pub mod oracle;
pub mod par;
pub mod report;
pub mod samelson;
pub mod sweep;
pub mod symmetric;

pub use cohomology::{make_group, p1_table, steenrod_p1, Family, GroupSpec};
pub use error::{Error, Result};
pub use fp_poly::{Context, Generator, ModPoly, Monomial, Scalar};
pub use par::Execution;
