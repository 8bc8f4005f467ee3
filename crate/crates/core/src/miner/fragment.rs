use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::format::{serialize, Index, MarkerKind, PatternDecl, ProofDocument, Step};
use crate::poly::{Polynomial, Substitution, Var};
use crate::scalar::Scalar;
use crate::Rational;

use super::MineError;

/// A contiguous run of derivation steps with its boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct Fragment<C: Scalar = Rational> {
    /// Position of the first step in the proof.
    pub start: usize,
    pub steps: Vec<Step<C>>,
    /// Operands defined outside the fragment, in order of first reference,
    /// with their polynomials at the start of the fragment.
    pub inputs: Vec<(Index, Polynomial<C>)>,
    /// Conclusions of the fragment still live at its end.
    pub outputs: Vec<(Index, Polynomial<C>)>,
    /// Inputs deleted inside the fragment.
    pub deleted_inputs: Vec<Index>,
}

impl<C: Scalar> Fragment<C> {
    pub fn end(&self) -> usize {
        self.start + self.steps.len()
    }
}

/// A fragment with variables renamed to `v1, v2, ...` by first occurrence
/// and local indices renamed to `p1, p2, ...`.
#[derive(Clone, Debug)]
pub struct CanonicalKey<C: Scalar = Rational> {
    pub text: String,
    /// Original variable to canonical variable.
    pub renaming: BTreeMap<Var, Var>,
    /// The renamed fragment as a pattern declaration with placeholder id `0`.
    pub pattern: PatternDecl<C>,
    /// Canonical extension variables that occur in an output.
    pub output_ext: BTreeSet<Var>,
}

impl<C: Scalar> PartialEq for CanonicalKey<C> {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl<C: Scalar> Eq for CanonicalKey<C> {}

/// Tracks the live polynomial of every index while walking a proof,
/// without checking anything.
#[derive(Clone, Debug)]
pub(crate) struct Replay<C: Scalar> {
    polys: HashMap<Index, Polynomial<C>>,
}

impl<C: Scalar> Default for Replay<C> {
    fn default() -> Self {
        Replay { polys: HashMap::new() }
    }
}

impl<C: Scalar> Replay<C> {
    pub(crate) fn get(&self, index: &Index) -> Option<&Polynomial<C>> {
        self.polys.get(index)
    }

    pub(crate) fn apply(&mut self, step: &Step<C>) {
        match step {
            Step::Axiom { index, poly } => {
                self.polys.insert(index.clone(), poly.clone());
            }
            Step::LinComb { index, conclusion, .. } => {
                self.polys.insert(index.clone(), conclusion.clone());
            }
            Step::Ext { index, var, def } => {
                self.polys.insert(index.clone(), def - &Polynomial::var(var.clone()));
            }
            Step::Deletion { index } => {
                self.polys.remove(index);
            }
            Step::PatternNew(_) => {}
            Step::PatternApply(app) => {
                for (index, poly) in &app.outputs {
                    self.polys.insert(index.clone(), poly.clone());
                }
            }
        }
    }
}

fn operands<C: Scalar>(step: &Step<C>) -> Vec<&Index> {
    match step {
        Step::LinComb { terms, .. } => terms.iter().map(|(_, j)| j).collect(),
        _ => Vec::new(),
    }
}

fn conclusion<C: Scalar>(step: &Step<C>) -> Option<&Index> {
    match step {
        Step::LinComb { index, .. } | Step::Ext { index, .. } => Some(index),
        _ => None,
    }
}

/// Builds the boundary of `steps`, which start at proof position `start`.
/// `before` must hold the state just before the first step.
pub(crate) fn build_fragment<C: Scalar>(
    start: usize,
    steps: Vec<Step<C>>,
    before: &Replay<C>,
) -> Result<Fragment<C>, MineError> {
    let ill = |offset: usize, reason: String| MineError::IllFormedFragment { position: start + offset, reason };
    let mut local: Vec<Index> = Vec::new();
    let mut live: HashSet<Index> = HashSet::new();
    let mut inputs: Vec<(Index, Polynomial<C>)> = Vec::new();
    let mut deleted_inputs = Vec::new();
    let mut after = before.clone();
    for (k, step) in steps.iter().enumerate() {
        match step {
            Step::LinComb { .. } | Step::Ext { .. } | Step::Deletion { .. } => {}
            other => return Err(ill(k, format!("{} step inside a fragment", other.kind()))),
        }
        let mut reference = |j: &Index, live: &HashSet<Index>| -> Result<(), MineError> {
            if live.contains(j) || inputs.iter().any(|(i, _)| i == j) {
                return Ok(());
            }
            if local.contains(j) {
                return Err(ill(k, format!("operand `{j}` was deleted inside the fragment")));
            }
            let poly = before.get(j).ok_or_else(|| ill(k, format!("operand `{j}` is not defined")))?;
            inputs.push((j.clone(), poly.clone()));
            Ok(())
        };
        for j in operands(step) {
            reference(j, &live)?;
        }
        if let Step::Deletion { index } = step {
            if !live.remove(index) {
                reference(index, &live)?;
                deleted_inputs.push(index.clone());
            }
        }
        if let Some(index) = conclusion(step) {
            if live.contains(index) || inputs.iter().any(|(i, _)| i == index) {
                return Err(ill(k, format!("index `{index}` is redefined inside the fragment")));
            }
            local.push(index.clone());
            live.insert(index.clone());
        }
        after.apply(step);
    }
    let outputs = local
        .iter()
        .filter(|i| live.contains(*i))
        .map(|i| (i.clone(), after.get(i).expect("live conclusion").clone()))
        .collect();
    Ok(Fragment { start, steps, inputs, outputs, deleted_inputs })
}

/// Splits the derivation steps of `doc` into fragments.
///
/// With `# frag-begin` / `# frag-end` markers in the document, exactly the
/// marked ranges are fragments. Otherwise a derivation step extends the
/// current fragment when it uses one of its conclusions, every operand it
/// uses that was derived in the proof comes from the current fragment, and
/// the fragment is shorter than `window`; any other derivation step starts
/// a new fragment. Axioms and deletions end the current fragment.
pub(crate) fn fragments<C: Scalar>(
    axioms: &ProofDocument<C>,
    doc: &ProofDocument<C>,
    window: usize,
) -> Result<Vec<Fragment<C>>, MineError> {
    let mut state = Replay::default();
    for step in &axioms.steps {
        state.apply(step);
    }
    let ranges = if doc.markers.is_empty() { auto_ranges(doc, window) } else { marked_ranges(doc)? };

    let mut out = Vec::with_capacity(ranges.len());
    let mut next = 0;
    for (start, end) in ranges {
        for step in &doc.steps[next..start] {
            state.apply(step);
        }
        out.push(build_fragment(start, doc.steps[start..end].to_vec(), &state)?);
        for step in &doc.steps[start..end] {
            state.apply(step);
        }
        next = end;
    }
    Ok(out)
}

fn marked_ranges<C: Scalar>(doc: &ProofDocument<C>) -> Result<Vec<(usize, usize)>, MineError> {
    let mut ranges = Vec::new();
    let mut open = None;
    for marker in &doc.markers {
        match (marker.kind, open) {
            (MarkerKind::FragmentBegin, None) => open = Some(marker.position),
            (MarkerKind::FragmentEnd, Some(start)) => {
                if marker.position > start {
                    ranges.push((start, marker.position));
                }
                open = None;
            }
            _ => return Err(MineError::UnbalancedMarkers { position: marker.position }),
        }
    }
    match open {
        Some(position) => Err(MineError::UnbalancedMarkers { position }),
        None => Ok(ranges),
    }
}

fn auto_ranges<C: Scalar>(doc: &ProofDocument<C>, window: usize) -> Vec<(usize, usize)> {
    let window = window.max(1);
    let mut ranges = Vec::new();
    let mut current: Option<(usize, HashSet<&Index>)> = None;
    let mut derived: HashSet<&Index> = HashSet::new();
    for (pos, step) in doc.steps.iter().enumerate() {
        let Some(index) = conclusion(step) else {
            if let Some((start, _)) = current.take() {
                ranges.push((start, pos));
            }
            if let Step::Deletion { index } = step {
                derived.remove(index);
            }
            continue;
        };
        let used: Vec<&Index> = operands(step).into_iter().filter(|j| derived.contains(*j)).collect();
        let joins = match &current {
            Some((start, members)) => {
                pos - start < window && !used.is_empty() && used.iter().all(|j| members.contains(*j))
            }
            None => false,
        };
        if !joins {
            if let Some((start, _)) = current.take() {
                ranges.push((start, pos));
            }
            current = Some((pos, HashSet::new()));
        }
        if let Some((_, members)) = &mut current {
            members.insert(index);
        }
        derived.insert(index);
    }
    if let Some((start, _)) = current {
        ranges.push((start, doc.steps.len()));
    }
    ranges
}

#[derive(Default)]
struct FirstSeen {
    order: Vec<Var>,
    seen: HashSet<Var>,
}

impl FirstSeen {
    fn var(&mut self, v: &Var) {
        if self.seen.insert(v.clone()) {
            self.order.push(v.clone());
        }
    }

    fn poly<C: Scalar>(&mut self, p: &Polynomial<C>) {
        for (m, _) in p.terms() {
            m.vars().iter().for_each(|v| self.var(v));
        }
    }
}

fn local_name<'a>(i: &'a Index, locals: &mut HashMap<&'a Index, Index>) -> Index {
    let n = locals.len() + 1;
    locals.entry(i).or_insert_with(|| Index::new(format!("p{n}"))).clone()
}

fn rename_poly<C: Scalar>(p: &Polynomial<C>, phi: &Substitution<C>) -> Polynomial<C> {
    p.substitute(phi).expect("renaming covers every fragment variable")
}

/// Computes the canonical key of a fragment.
///
/// Variables are numbered by first occurrence while reading the inputs and
/// then the body in file order. Fails when the body mentions a variable that
/// is neither in an input nor introduced earlier in the body, since such a
/// body cannot be checked on its own.
pub fn canonicalize_fragment<C: Scalar>(frag: &Fragment<C>) -> Result<CanonicalKey<C>, MineError> {
    let ill = |offset: usize, reason: String| MineError::IllFormedFragment { position: frag.start + offset, reason };
    let mut order = FirstSeen::default();
    for (_, p) in &frag.inputs {
        order.poly(p);
    }
    let mut known: HashSet<Var> = order.seen.clone();
    let mut ext: Vec<Var> = Vec::new();
    let check_known = |p: &Polynomial<C>, known: &HashSet<Var>, k: usize| match p.vars().into_iter().find(|v| !known.contains(v)) {
        Some(v) => Err(ill(k, format!("variable `{v}` is not available inside the fragment"))),
        None => Ok(()),
    };
    for (k, step) in frag.steps.iter().enumerate() {
        match step {
            Step::LinComb { terms, conclusion, .. } => {
                for (c, _) in terms {
                    check_known(c, &known, k)?;
                    order.poly(c);
                }
                check_known(conclusion, &known, k)?;
                order.poly(conclusion);
            }
            Step::Ext { var, def, .. } => {
                check_known(def, &known, k)?;
                order.var(var);
                order.poly(def);
                known.insert(var.clone());
                ext.push(var.clone());
            }
            _ => {}
        }
    }

    let renaming: BTreeMap<Var, Var> =
        order.order.iter().enumerate().map(|(k, v)| (v.clone(), Var::new(format!("v{}", k + 1)))).collect();
    let phi: Substitution<C> = renaming.iter().map(|(v, w)| (v.clone(), Polynomial::var(w.clone()))).collect();

    let mut locals: HashMap<&Index, Index> = HashMap::new();
    let mut inputs = Vec::with_capacity(frag.inputs.len());
    for (i, p) in &frag.inputs {
        inputs.push((local_name(i, &mut locals), rename_poly(p, &phi)));
    }
    let mut body = Vec::with_capacity(frag.steps.len());
    for step in &frag.steps {
        body.push(match step {
            Step::LinComb { index, terms, conclusion } => {
                let terms = terms.iter().map(|(c, j)| (rename_poly(c, &phi), locals[j].clone())).collect();
                Step::LinComb { index: local_name(index, &mut locals), terms, conclusion: rename_poly(conclusion, &phi) }
            }
            Step::Ext { index, var, def } => Step::Ext {
                index: local_name(index, &mut locals),
                var: renaming[var].clone(),
                def: rename_poly(def, &phi),
            },
            Step::Deletion { index } => Step::Deletion { index: locals[index].clone() },
            other => other.clone(),
        });
    }
    let outputs: Vec<Index> = frag.outputs.iter().map(|(i, _)| locals[i].clone()).collect();
    let pattern = PatternDecl { id: "0".into(), inputs, body, outputs };

    let mut output_vars = BTreeSet::new();
    for (_, p) in &frag.outputs {
        p.collect_vars(&mut output_vars);
    }
    let output_ext = ext.iter().filter(|v| output_vars.contains(*v)).map(|v| renaming[v].clone()).collect();
    let text = serialize(&ProofDocument::from_steps(vec![Step::PatternNew(pattern.clone())]));
    Ok(CanonicalKey { text, renaming, pattern, output_ext })
}
