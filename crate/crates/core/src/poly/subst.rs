use std::collections::btree_map;
use std::collections::BTreeMap;

use super::{PolyError, Polynomial, Var};
use crate::scalar::Scalar;
use crate::Rational;

/// A finite map from variables to polynomials.
///
/// Lookups outside the declared domain are errors, never an implicit identity.
#[derive(Clone, PartialEq, Debug)]
pub struct Substitution<C: Scalar = Rational> {
    map: BTreeMap<Var, Polynomial<C>>,
}

impl<C: Scalar> Default for Substitution<C> {
    fn default() -> Self {
        Substitution { map: BTreeMap::new() }
    }
}

impl<C: Scalar> Substitution<C> {
    pub fn new() -> Self {
        Self::default()
    }

    /// The identity map on `vars`.
    pub fn identity<'a>(vars: impl IntoIterator<Item = &'a Var>) -> Self {
        vars.into_iter().map(|v| (v.clone(), Polynomial::var(v.clone()))).collect()
    }

    /// Inserts a mapping, returning the previous image if any.
    pub fn insert(&mut self, v: Var, image: Polynomial<C>) -> Option<Polynomial<C>> {
        self.map.insert(v, image)
    }

    pub fn get(&self, v: &Var) -> Result<&Polynomial<C>, PolyError> {
        self.map.get(v).ok_or_else(|| PolyError::UnmappedVariable(v.clone()))
    }

    pub fn contains(&self, v: &Var) -> bool {
        self.map.contains_key(v)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Var, Polynomial<C>> {
        self.map.iter()
    }
}

impl<C: Scalar> FromIterator<(Var, Polynomial<C>)> for Substitution<C> {
    fn from_iter<I: IntoIterator<Item = (Var, Polynomial<C>)>>(iter: I) -> Self {
        Substitution { map: iter.into_iter().collect() }
    }
}

impl<'a, C: Scalar> IntoIterator for &'a Substitution<C> {
    type Item = (&'a Var, &'a Polynomial<C>);
    type IntoIter = btree_map::Iter<'a, Var, Polynomial<C>>;

    fn into_iter(self) -> Self::IntoIter {
        self.map.iter()
    }
}
