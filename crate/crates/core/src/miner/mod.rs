//! Offline compression of flat proofs into pattern proofs.
//!
//! The miner cuts the derivation into fragments, renames every fragment to a
//! canonical form and groups fragments with identical canonical text. Each
//! group seen often enough becomes one pattern definition plus one
//! application per occurrence. Only variable renamings are discovered; the
//! checker accepts general polynomial substitutions, the miner never emits
//! them.

mod fragment;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

pub use fragment::{canonicalize_fragment, CanonicalKey, Fragment};

use crate::format::{PatternDecl, PatternId, PatternUse, ProofDocument, Step, StepKind};
use crate::poly::{Polynomial, Substitution, Var};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MineError {
    #[error("the proof already contains {0} steps")]
    ContainsPatterns(StepKind),
    #[error("fragment markers are unbalanced near step {}", .position + 1)]
    UnbalancedMarkers { position: usize },
    #[error("ill-formed fragment at step {}: {reason}", .position + 1)]
    IllFormedFragment { position: usize, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FragmentationConfig {
    /// Fragments seen fewer times stay flat.
    pub min_repeats: usize,
    /// Maximum number of steps in an automatic fragment.
    pub window: usize,
}

impl Default for FragmentationConfig {
    fn default() -> Self {
        FragmentationConfig { min_repeats: 2, window: 8 }
    }
}

/// One line of the JSON-lines report per pattern.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PatternReport {
    pub id: String,
    pub occurrences: usize,
    pub body_steps: usize,
    pub steps_saved: usize,
    pub key: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CompressionReport {
    pub fragments: usize,
    /// Fragments whose key had already been seen.
    pub hits: usize,
    pub hit_rate: f64,
    pub pattern_new: usize,
    pub pattern_apply: usize,
    pub lincomb_before: usize,
    pub lincomb_after: usize,
    pub steps_before: usize,
    pub steps_after: usize,
    #[serde(skip)]
    pub patterns: Vec<PatternReport>,
}

impl CompressionReport {
    /// One JSON object per pattern, then a summary object.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for p in &self.patterns {
            out.push_str(&serde_json::to_string(p).expect("report serializes"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(self).expect("report serializes"));
        out.push('\n');
        out
    }

    pub fn step_delta(&self) -> isize {
        self.steps_after as isize - self.steps_before as isize
    }
}

/// Steps of a document, counting pattern bodies.
fn count_steps<C: Scalar>(doc: &ProofDocument<C>, kind: Option<StepKind>) -> usize {
    let matches = |s: &Step<C>| kind.map_or(true, |k| s.kind() == k) as usize;
    doc.steps
        .iter()
        .map(|s| match s {
            Step::PatternNew(decl) => matches(s) + decl.body.iter().map(matches).sum::<usize>(),
            _ => matches(s),
        })
        .sum()
}

/// Last position at which each variable is mentioned.
fn last_mentions<C: Scalar>(doc: &ProofDocument<C>) -> HashMap<Var, usize> {
    let mut last = HashMap::new();
    let mut note = |p: &Polynomial<C>, pos: usize| {
        for v in p.vars() {
            last.insert(v, pos);
        }
    };
    for (pos, step) in doc.steps.iter().enumerate() {
        match step {
            Step::Axiom { poly, .. } => note(poly, pos),
            Step::LinComb { terms, conclusion, .. } => {
                terms.iter().for_each(|(c, _)| note(c, pos));
                note(conclusion, pos);
            }
            Step::Ext { def, var, .. } => {
                note(def, pos);
                note(&Polynomial::var(var.clone()), pos);
            }
            _ => {}
        }
    }
    last
}

/// Compresses a flat proof. `axioms` supplies the polynomials of indices
/// the proof uses but does not define.
pub fn compress_proof<C: Scalar>(
    axioms: &ProofDocument<C>,
    flat: &ProofDocument<C>,
    config: FragmentationConfig,
) -> Result<(ProofDocument<C>, CompressionReport), MineError> {
    if let Some(step) = flat.steps.iter().find(|s| s.is_pattern_step()) {
        return Err(MineError::ContainsPatterns(step.kind()));
    }
    let fragments = fragment::fragments(axioms, flat, config.window)?;
    let last_use = last_mentions(flat);

    // Key per fragment; `None` marks a fragment that must stay flat.
    let mut keys: Vec<Option<CanonicalKey<C>>> = Vec::with_capacity(fragments.len());
    let mut counts: HashMap<String, usize> = HashMap::new();
    let mut hits = 0;
    for frag in &fragments {
        let key = match canonicalize_fragment(frag) {
            Ok(key) if internal_ext_stays_inside(frag, &key, &last_use) => Some(key),
            Ok(_) | Err(MineError::IllFormedFragment { .. }) => None,
            Err(e) => return Err(e),
        };
        if let Some(key) = &key {
            let count = counts.entry(key.text.clone()).or_default();
            if *count > 0 {
                hits += 1;
            }
            *count += 1;
        }
        keys.push(key);
    }

    let mut ids: HashMap<String, PatternId> = HashMap::new();
    let mut reports: Vec<PatternReport> = Vec::new();
    let mut out = ProofDocument::new();
    let mut pos = 0;
    for (frag, key) in fragments.iter().zip(&keys) {
        out.steps.extend(flat.steps[pos..frag.start].iter().cloned());
        pos = frag.end();
        let Some(key) = key.as_ref().filter(|k| counts[&k.text] >= config.min_repeats.max(1)) else {
            out.steps.extend(frag.steps.iter().cloned());
            continue;
        };
        let id = match ids.get(&key.text) {
            Some(id) => id.clone(),
            None => {
                let id = PatternId::from((ids.len() + 1) as u64);
                ids.insert(key.text.clone(), id.clone());
                let occurrences = counts[&key.text];
                reports.push(PatternReport {
                    id: id.to_string(),
                    occurrences,
                    body_steps: frag.steps.len(),
                    steps_saved: (occurrences - 1) * frag.steps.len(),
                    key: key.text.trim_end().to_string(),
                });
                out.steps.push(Step::PatternNew(PatternDecl { id: id.clone(), ..key.pattern.clone() }));
                id
            }
        };
        out.steps.push(Step::PatternApply(application(id, frag, key)));
        out.steps.extend(frag.deleted_inputs.iter().map(|index| Step::Deletion { index: index.clone() }));
    }
    out.steps.extend(flat.steps[pos..].iter().cloned());

    let report = CompressionReport {
        fragments: fragments.len(),
        hits,
        hit_rate: if fragments.is_empty() { 0.0 } else { hits as f64 / fragments.len() as f64 },
        pattern_new: count_steps(&out, Some(StepKind::PatternNew)),
        pattern_apply: count_steps(&out, Some(StepKind::PatternApply)),
        lincomb_before: count_steps(flat, Some(StepKind::LinComb)),
        lincomb_after: count_steps(&out, Some(StepKind::LinComb)),
        steps_before: count_steps(flat, None),
        steps_after: count_steps(&out, None),
        patterns: reports,
    };
    Ok((out, report))
}

/// Extension variables that do not reach an output disappear from the
/// compressed proof, so they must not be mentioned after the fragment.
fn internal_ext_stays_inside<C: Scalar>(
    frag: &Fragment<C>,
    key: &CanonicalKey<C>,
    last_use: &HashMap<Var, usize>,
) -> bool {
    frag.steps.iter().all(|step| match step {
        Step::Ext { var, .. } => {
            key.output_ext.contains(&key.renaming[var]) || last_use.get(var).map_or(true, |&p| p < frag.end())
        }
        _ => true,
    })
}

fn application<C: Scalar>(id: PatternId, frag: &Fragment<C>, key: &CanonicalKey<C>) -> PatternUse<C> {
    let mut pattern_vars = BTreeSet::new();
    for (_, p) in frag.inputs.iter().chain(&frag.outputs) {
        p.collect_vars(&mut pattern_vars);
    }
    let mut phi = Substitution::new();
    let mut fresh: Vec<(Var, Var)> = Vec::new();
    for v in pattern_vars {
        let canonical = key.renaming[&v].clone();
        if key.output_ext.contains(&canonical) {
            fresh.push((canonical.clone(), v.clone()));
        }
        phi.insert(canonical, Polynomial::var(v));
    }
    fresh.sort_by_key(|(c, _)| c.name()[1..].parse::<usize>().unwrap_or(usize::MAX));
    PatternUse {
        id,
        fresh: fresh.into_iter().map(|(_, v)| v).collect(),
        phi,
        inputs: frag.inputs.iter().map(|(i, _)| i.clone()).collect(),
        outputs: frag.outputs.clone(),
    }
}
