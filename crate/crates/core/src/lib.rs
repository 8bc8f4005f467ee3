//! Checking and compression of linear algebraic proof certificates.
//!
//! A certificate shows that a target polynomial lies in the ideal generated
//! by a set of axioms together with the Boolean value polynomials `x^2 - x`.
//! Besides the linear-combination and extension rules, certificates may
//! declare *patterns*: proof fragments that are checked once, stored by their
//! inputs and outputs only, and re-instantiated under variable substitutions.
//!
//! The core types are generic over the coefficient [`Scalar`]. The aliases at
//! the crate root fix the exact rational instantiation used by the checker
//! and the command-line tool.

pub mod checker;
pub mod cli;
pub mod format;
pub mod genbench;
pub mod miner;
pub mod poly;
pub mod scalar;
pub mod stats;

pub use checker::{run_check, CheckError, CheckOptions, Checker, Mode, Status, Verdict};
pub use num_rational::BigRational as Rational;
pub use poly::{Expr, Monomial, PolyError, Substitution, Var};
pub use scalar::Scalar;

/// Polynomial with exact rational coefficients.
pub type Poly = poly::Polynomial<Rational>;
/// Polynomial with double-precision coefficients.
pub type PolyF64 = poly::Polynomial<f64>;
