use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use super::{Monomial, PolyError, Substitution, Var};
use crate::scalar::Scalar;
use crate::Rational;

/// A polynomial in multilinear normal form.
///
/// Terms are kept sorted by the monomial order with no zero coefficients, so
/// two polynomials are congruent modulo the Boolean axioms exactly when their
/// term lists are equal.
#[derive(Clone, PartialEq)]
pub struct Polynomial<C: Scalar = Rational> {
    terms: Vec<(Monomial, C)>,
}

impl<C: Scalar> Default for Polynomial<C> {
    fn default() -> Self {
        Polynomial::zero()
    }
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(value: i64) -> Self {
        Self::constant(C::from_int(value))
    }

    pub fn var(v: Var) -> Self {
        Self::term(C::one(), Monomial::var(v))
    }

    pub fn term(c: C, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Collects arbitrary terms into normal form.
    pub fn from_terms(terms: impl IntoIterator<Item = (C, Monomial)>) -> Self {
        let mut acc = Accumulator::new();
        for (c, m) in terms {
            acc.add_term(m, c);
        }
        acc.finish()
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.first().map_or(0, |(m, _)| m.degree())
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// The variable `v` when the polynomial is exactly `v`.
    pub fn as_var(&self) -> Option<&Var> {
        match self.terms.as_slice() {
            [(m, c)] if m.degree() == 1 && c.is_one() => Some(&m.vars()[0]),
            _ => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        for (m, _) in &self.terms {
            out.extend(m.vars().iter().cloned());
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &C, mono: &Monomial) -> Self {
        let mut acc = Accumulator::new();
        acc.add_product(c, mono, self);
        acc.finish()
    }

    /// `sum(coeff_k * operand_k)` reduced multilinearly.
    pub fn linear_combination<'a, I>(parts: I) -> Self
    where
        I: IntoIterator<Item = (&'a Polynomial<C>, &'a Polynomial<C>)>,
    {
        let mut acc = Accumulator::new();
        for (coeff, operand) in parts {
            acc.add_mul(coeff, operand);
        }
        acc.finish()
    }

    /// Replaces every variable by its image under `phi`.
    pub fn substitute(&self, phi: &Substitution<C>) -> Result<Self, PolyError> {
        let mut acc = Accumulator::new();
        let mut renamed = Vec::new();
        for (m, c) in &self.terms {
            renamed.clear();
            let mut rest: Option<Polynomial<C>> = None;
            for v in m.vars() {
                let image = phi.get(v)?;
                match image.as_var() {
                    Some(w) => renamed.push(w.clone()),
                    None => {
                        rest = Some(match rest {
                            None => image.clone(),
                            Some(r) => &r * image,
                        })
                    }
                }
            }
            let mono = Monomial::from_vars(renamed.drain(..));
            match rest {
                None => acc.add_term(mono, c.clone()),
                Some(r) => acc.add_product(c, &mono, &r),
            }
        }
        Ok(acc.finish())
    }

    /// Whether `q^2 - q` vanishes modulo the Boolean axioms, i.e. `q` only
    /// takes the values 0 and 1 on Boolean inputs.
    pub fn is_boolean_valued(&self) -> bool {
        match self.terms.as_slice() {
            [] => true,
            [(_, c)] if c.is_one() => true,
            _ => (self * self) == *self,
        }
    }

    pub fn equal_mod_boolean(&self, other: &Self) -> bool {
        self == other
    }

    /// Evaluates at a point given by `value_of`.
    pub fn eval_with<F>(&self, mut value_of: F) -> Result<C, PolyError>
    where
        F: FnMut(&Var) -> Option<C>,
    {
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in m.vars() {
                let x = value_of(v).ok_or_else(|| PolyError::UnmappedVariable(v.clone()))?;
                t = t * x;
            }
            total = total + t;
        }
        Ok(total)
    }

    pub fn eval(&self, assignment: &HashMap<Var, C>) -> Result<C, PolyError> {
        self.eval_with(|v| assignment.get(v).cloned())
    }
}

/// Sparse accumulator for building normal forms term by term.
#[derive(Debug, Clone)]
pub struct Accumulator<C: Scalar = Rational> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Default for Accumulator<C> {
    fn default() -> Self {
        Accumulator { terms: BTreeMap::new() }
    }
}

impl<C: Scalar> Accumulator<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&mut self, p: &Polynomial<C>) {
        for (m, c) in &p.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// Adds `c * mono * p`.
    pub fn add_product(&mut self, c: &C, mono: &Monomial, p: &Polynomial<C>) {
        for (m, k) in &p.terms {
            self.add_term(mono.mul(m), c.clone() * k.clone());
        }
    }

    /// Adds `a * b`.
    pub fn add_mul(&mut self, a: &Polynomial<C>, b: &Polynomial<C>) {
        for (m, c) in &a.terms {
            self.add_product(c, m, b);
        }
    }

    pub fn finish(self) -> Polynomial<C> {
        Polynomial { terms: self.terms.into_iter().collect() }
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<C: Scalar> Neg for Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(mut self) -> Polynomial<C> {
        for (_, c) in &mut self.terms {
            *c = -c.clone();
        }
        self
    }
}

impl<C: Scalar> Add for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut acc = Accumulator::new();
        acc.add(self);
        acc.add(rhs);
        acc.finish()
    }
}

impl<C: Scalar> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self + &(-rhs)
    }
}

impl<C: Scalar> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut acc = Accumulator::new();
        acc.add_mul(self, rhs);
        acc.finish()
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<C: Scalar> $tr for Polynomial<C> {
            type Output = Polynomial<C>;

            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write_coefficient(f, &mag)?;
            } else {
                if !mag.is_one() {
                    write_coefficient(f, &mag)?;
                    f.write_str("*")?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

fn write_coefficient<C: Scalar>(f: &mut fmt::Formatter<'_>, c: &C) -> fmt::Result {
    match c.to_fraction() {
        Some(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
        Some(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        None => write!(f, "{c:?}"),
    }
}

impl<C: Scalar> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
