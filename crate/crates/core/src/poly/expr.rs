use super::{Monomial, Polynomial, Var};
use crate::scalar::Scalar;
use crate::Rational;

/// An unreduced polynomial expression, as written in a file.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr<C: Scalar = Rational> {
    Const(C),
    Var(Var),
    Neg(Box<Expr<C>>),
    Sum(Vec<Expr<C>>),
    Product(Vec<Expr<C>>),
    Pow(Box<Expr<C>>, u32),
}

impl<C: Scalar> Expr<C> {
    pub fn var(name: &str) -> Self {
        Expr::Var(Var::new(name))
    }

    pub fn int(value: i64) -> Self {
        Expr::Const(C::from_int(value))
    }

    pub fn pow(self, exp: u32) -> Self {
        Expr::Pow(Box::new(self), exp)
    }

    pub fn sub(self, rhs: Expr<C>) -> Self {
        Expr::Sum(vec![self, Expr::Neg(Box::new(rhs))])
    }

    /// Reduces to multilinear normal form.
    pub fn normalize(&self) -> Polynomial<C> {
        match self {
            Expr::Const(c) => Polynomial::constant(c.clone()),
            Expr::Var(v) => Polynomial::term(C::one(), Monomial::var(v.clone())),
            Expr::Neg(e) => -e.normalize(),
            Expr::Sum(parts) => {
                let mut acc = super::Accumulator::new();
                for p in parts {
                    acc.add(&p.normalize());
                }
                acc.finish()
            }
            Expr::Product(parts) => {
                let mut out = Polynomial::one();
                for p in parts {
                    out = &out * &p.normalize();
                    if out.is_zero() {
                        break;
                    }
                }
                out
            }
            Expr::Pow(base, exp) => {
                let base = base.normalize();
                pow(&base, *exp)
            }
        }
    }

    /// Evaluates without any reduction.
    pub fn eval_with<F>(&self, value_of: &mut F) -> Option<C>
    where
        F: FnMut(&Var) -> Option<C>,
    {
        Some(match self {
            Expr::Const(c) => c.clone(),
            Expr::Var(v) => value_of(v)?,
            Expr::Neg(e) => -e.eval_with(value_of)?,
            Expr::Sum(parts) => {
                let mut total = C::zero();
                for p in parts {
                    total = total + p.eval_with(value_of)?;
                }
                total
            }
            Expr::Product(parts) => {
                let mut total = C::one();
                for p in parts {
                    total = total * p.eval_with(value_of)?;
                }
                total
            }
            Expr::Pow(base, exp) => {
                let b = base.eval_with(value_of)?;
                let mut total = C::one();
                for _ in 0..*exp {
                    total = total * b.clone();
                }
                total
            }
        })
    }
}

fn pow<C: Scalar>(base: &Polynomial<C>, mut exp: u32) -> Polynomial<C> {
    let mut result = Polynomial::one();
    let mut square = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            result = &result * &square;
        }
        exp >>= 1;
        if exp > 0 {
            square = &square * &square;
        }
    }
    result
}
