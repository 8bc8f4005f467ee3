use std::collections::{BTreeSet, HashMap, HashSet};

use crate::format::{Index, PatternId};
use crate::poly::{Polynomial, Var};
use crate::scalar::Scalar;
use crate::Rational;

use super::pattern::Pattern;

/// The checker state: variables seen so far, the live polynomials by index
/// and the stored patterns.
///
/// Every stored polynomial is in normal form over the variable set. Patterns
/// are only ever added.
#[derive(Clone, Debug)]
pub struct ProofState<C: Scalar = Rational> {
    pub(crate) vars: HashSet<Var>,
    pub(crate) polys: HashMap<Index, Polynomial<C>>,
    pub(crate) patterns: HashMap<PatternId, Pattern<C>>,
    pub(crate) pattern_order: Vec<PatternId>,
    pub(crate) target_hit: Option<Index>,
}

impl<C: Scalar> Default for ProofState<C> {
    fn default() -> Self {
        ProofState {
            vars: HashSet::new(),
            polys: HashMap::new(),
            patterns: HashMap::new(),
            pattern_order: Vec::new(),
            target_hit: None,
        }
    }
}

impl<C: Scalar> ProofState<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vars(&self) -> &HashSet<Var> {
        &self.vars
    }

    pub fn sorted_vars(&self) -> BTreeSet<Var> {
        self.vars.iter().cloned().collect()
    }

    pub fn has_var(&self, v: &Var) -> bool {
        self.vars.contains(v)
    }

    pub fn get(&self, index: &Index) -> Option<&Polynomial<C>> {
        self.polys.get(index)
    }

    pub fn polys(&self) -> impl Iterator<Item = (&Index, &Polynomial<C>)> {
        self.polys.iter()
    }

    pub fn live_count(&self) -> usize {
        self.polys.len()
    }

    pub fn pattern(&self, id: &PatternId) -> Option<&Pattern<C>> {
        self.patterns.get(id)
    }

    /// Stored patterns in definition order.
    pub fn patterns(&self) -> impl Iterator<Item = &Pattern<C>> {
        self.pattern_order.iter().map(|id| &self.patterns[id])
    }

    pub fn pattern_count(&self) -> usize {
        self.pattern_order.len()
    }

    pub fn target_hit(&self) -> Option<&Index> {
        self.target_hit.as_ref()
    }

    pub(crate) fn insert_pattern(&mut self, pattern: Pattern<C>) {
        self.pattern_order.push(pattern.id.clone());
        self.patterns.insert(pattern.id.clone(), pattern);
    }

    /// First variable of `p` outside the variable set.
    pub(crate) fn unknown_var<'a>(&self, p: &'a Polynomial<C>, extra: &HashSet<Var>) -> Option<&'a Var> {
        p.terms()
            .iter()
            .flat_map(|(m, _)| m.vars())
            .find(|v| !self.vars.contains(*v) && !extra.contains(*v))
    }
}
