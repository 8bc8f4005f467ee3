//! Exact multilinear polynomial arithmetic.
//!
//! All arithmetic is reduced eagerly modulo the Boolean axioms `x^2 - x`, so
//! every [`Polynomial`] is a canonical representative of its residue class.

mod expr;
mod polynomial;
mod subst;
mod var;

pub use expr::Expr;
pub use polynomial::{Accumulator, Polynomial};
pub use subst::Substitution;
pub use var::{Monomial, Var};

/// Errors from polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable `{0}` has no image")]
    UnmappedVariable(Var),
}

#[cfg(test)]
mod tests;
