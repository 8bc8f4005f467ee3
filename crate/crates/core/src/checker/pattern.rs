use std::collections::{BTreeSet, HashSet};

use crate::format::{Index, PatternDecl, PatternId, PatternUse, Step};
use crate::poly::{Polynomial, Var};
use crate::scalar::Scalar;
use crate::Rational;

use super::{CheckError, CheckOptions, Checker};

/// A validated pattern. Only inputs, outputs and the output extension
/// variables are kept; the body survives only in debug mode.
#[derive(Clone, Debug, PartialEq)]
pub struct Pattern<C: Scalar = Rational> {
    pub id: PatternId,
    pub inputs: Vec<Polynomial<C>>,
    pub outputs: Vec<Polynomial<C>>,
    /// Extension variables introduced by the body that occur in an output.
    pub ext_vars: BTreeSet<Var>,
    /// All variables of inputs and outputs; the substitution must cover them.
    pub vars: BTreeSet<Var>,
    pub body: Option<RetainedBody<C>>,
}

/// The body of a pattern, kept for cross-validation in debug mode.
#[derive(Clone, Debug, PartialEq)]
pub struct RetainedBody<C: Scalar = Rational> {
    pub input_indices: Vec<Index>,
    pub steps: Vec<Step<C>>,
    pub output_indices: Vec<Index>,
    /// Extension variables of the body that do not reach an output.
    pub internal_ext: BTreeSet<Var>,
}

fn in_pattern(id: &PatternId, position: usize, label: &str, e: CheckError) -> CheckError {
    CheckError::InPattern { pattern: id.clone(), position, label: label.to_string(), source: Box::new(e) }
}

/// Checks a pattern body as a standalone proof whose axioms are the inputs.
///
/// Every output must name the conclusion of a body step (or, with
/// `allow_input_outputs`, also an input).
pub fn check_pattern_body<C: Scalar>(decl: &PatternDecl<C>, options: &CheckOptions) -> Result<Pattern<C>, CheckError> {
    let mut sub = Checker::new(CheckOptions { mode: options.mode, ..*options });
    for (idx, poly) in &decl.inputs {
        sub.step_axiom(idx, poly).map_err(|e| in_pattern(&decl.id, 0, idx.as_str(), e))?;
    }
    let mut conclusions = HashSet::new();
    let mut introduced = BTreeSet::new();
    for (k, step) in decl.body.iter().enumerate() {
        let result = match step {
            Step::LinComb { index, terms, conclusion } => {
                sub.step_lincomb(index, terms, conclusion).map(|()| {
                    conclusions.insert(index.clone());
                })
            }
            Step::Ext { index, var, def } => sub.step_ext(index, var, def).map(|()| {
                conclusions.insert(index.clone());
                introduced.insert(var.clone());
            }),
            Step::Deletion { index } => {
                sub.step_deletion(index);
                Ok(())
            }
            other => Err(CheckError::ForbiddenInPattern(other.kind())),
        };
        result.map_err(|e| in_pattern(&decl.id, k + 1, step.label(), e))?;
    }

    let mut outputs = Vec::with_capacity(decl.outputs.len());
    for idx in &decl.outputs {
        let admitted = conclusions.contains(idx) || options.allow_input_outputs;
        match sub.state.get(idx) {
            Some(p) if admitted => outputs.push(p.clone()),
            _ => return Err(CheckError::OutputNotAConclusion(idx.clone())),
        }
    }

    let mut output_vars = BTreeSet::new();
    for p in &outputs {
        p.collect_vars(&mut output_vars);
    }
    let ext_vars: BTreeSet<Var> = introduced.intersection(&output_vars).cloned().collect();
    let mut vars = output_vars;
    for (_, p) in &decl.inputs {
        p.collect_vars(&mut vars);
    }
    let body = options.mode.is_debug().then(|| RetainedBody {
        input_indices: decl.inputs.iter().map(|(idx, _)| idx.clone()).collect(),
        steps: decl.body.clone(),
        output_indices: decl.outputs.clone(),
        internal_ext: introduced.difference(&ext_vars).cloned().collect(),
    });
    Ok(Pattern {
        id: decl.id.clone(),
        inputs: decl.inputs.iter().map(|(_, p)| p.clone()).collect(),
        outputs,
        ext_vars,
        vars,
        body,
    })
}

impl<C: Scalar> Checker<C> {
    /// Checks every side condition of a pattern application and stores its
    /// outputs. Conditions are checked in a fixed order, so the reported
    /// error is deterministic.
    pub fn step_pattern_apply(&mut self, app: &PatternUse<C>) -> Result<(), CheckError> {
        let pattern = self.state.patterns.get(&app.id).ok_or_else(|| CheckError::UnknownPattern(app.id.clone()))?;

        let fresh: HashSet<Var> = app.fresh.iter().cloned().collect();
        if let Some(v) = app.fresh.iter().find(|v| self.state.has_var(v)) {
            return Err(CheckError::FreshVarNotFresh(v.clone()));
        }
        for v in &pattern.vars {
            app.phi.get(v)?;
        }

        let mut ext_images: Vec<(&Var, &Var)> = Vec::with_capacity(pattern.ext_vars.len());
        for v in &pattern.ext_vars {
            let image = app.phi.get(v)?.as_var().filter(|w| fresh.contains(*w));
            let image = image.ok_or_else(|| CheckError::PhiExtImageNotFresh(v.clone()))?;
            if let Some((first, _)) = ext_images.iter().find(|(_, w)| *w == image) {
                return Err(CheckError::PhiNotInjectiveOnExt { first: (*first).clone(), second: v.clone() });
            }
            ext_images.push((v, image));
        }

        for v in &pattern.vars {
            let image = app.phi.get(v)?;
            if let Some(u) = self.state.unknown_var(image, &fresh) {
                return Err(CheckError::UnknownVariable(u.clone()));
            }
            if !image.is_boolean_valued() {
                return Err(CheckError::PhiNotBooleanValued(v.clone()));
            }
        }

        if app.inputs.len() != pattern.inputs.len() {
            return Err(CheckError::InputArityMismatch { expected: pattern.inputs.len(), got: app.inputs.len() });
        }
        for (r, (idx, template)) in app.inputs.iter().zip(&pattern.inputs).enumerate() {
            let actual = self.state.get(idx).ok_or_else(|| CheckError::MissingOperand(idx.clone()))?;
            let expected = template.substitute(&app.phi)?;
            if !expected.equal_mod_boolean(actual) {
                return Err(CheckError::InputMismatch {
                    position: r + 1,
                    expected: expected.to_string(),
                    found: actual.to_string(),
                });
            }
        }

        if app.outputs.len() != pattern.outputs.len() {
            return Err(CheckError::OutputArityMismatch { expected: pattern.outputs.len(), got: app.outputs.len() });
        }
        let mut targets = HashSet::new();
        for (r, ((idx, claimed), template)) in app.outputs.iter().zip(&pattern.outputs).enumerate() {
            if self.state.polys.contains_key(idx) || !targets.insert(idx) {
                return Err(CheckError::OutputIndexInUse(idx.clone()));
            }
            if let Some(u) = self.state.unknown_var(claimed, &fresh) {
                return Err(CheckError::UnknownVariable(u.clone()));
            }
            let expected = template.substitute(&app.phi)?;
            if !expected.equal_mod_boolean(claimed) {
                return Err(CheckError::OutputMismatch {
                    position: r + 1,
                    expected: expected.to_string(),
                    claimed: claimed.to_string(),
                });
            }
        }

        if let Some(body) = &pattern.body {
            let ext_targets: HashSet<Var> = ext_images.iter().map(|(_, w)| (*w).clone()).collect();
            self.replay(pattern, body, app, &ext_targets)?;
            self.replayed += 1;
        }

        self.state.vars.extend(fresh);
        for (idx, claimed) in &app.outputs {
            self.store(idx.clone(), claimed.clone());
        }
        Ok(())
    }

    /// Re-derives the outputs by running the retained body under the
    /// substitution, with internal extension variables renamed apart.
    fn replay(
        &self,
        pattern: &Pattern<C>,
        body: &RetainedBody<C>,
        app: &PatternUse<C>,
        ext_targets: &HashSet<Var>,
    ) -> Result<(), CheckError> {
        let mut phi = app.phi.clone();
        let mut n = 0usize;
        for v in &body.internal_ext {
            let name = loop {
                n += 1;
                let candidate = Var::new(format!("__replay_{}_{n}", pattern.id));
                if !self.state.has_var(&candidate) && !app.fresh.contains(&candidate) {
                    break candidate;
                }
            };
            phi.insert(v.clone(), Polynomial::var(name));
        }

        let mut sub: Checker<C> = Checker::new(CheckOptions::default());
        sub.state.vars = self.state.vars.clone();
        sub.state.vars.extend(app.fresh.iter().filter(|v| !ext_targets.contains(*v)).cloned());
        let failed = |e: CheckError| CheckError::ReplayFailed(Box::new(e));
        for (idx, template) in body.input_indices.iter().zip(&pattern.inputs) {
            sub.state.polys.insert(idx.clone(), template.substitute(&phi)?);
        }
        for step in &body.steps {
            match step {
                Step::LinComb { index, terms, conclusion } => {
                    let terms = terms
                        .iter()
                        .map(|(c, j)| Ok((c.substitute(&phi)?, j.clone())))
                        .collect::<Result<Vec<_>, CheckError>>()?;
                    sub.step_lincomb(index, &terms, &conclusion.substitute(&phi)?).map_err(failed)?;
                }
                Step::Ext { index, var, def } => {
                    let image = phi.get(var)?;
                    let target = image.as_var().ok_or_else(|| failed(CheckError::PhiExtImageNotFresh(var.clone())))?;
                    sub.step_ext(index, target, &def.substitute(&phi)?).map_err(failed)?;
                }
                Step::Deletion { index } => sub.step_deletion(index),
                other => return Err(failed(CheckError::ForbiddenInPattern(other.kind()))),
            }
        }
        for (r, (local, (_, claimed))) in body.output_indices.iter().zip(&app.outputs).enumerate() {
            let replayed = sub.state.get(local).ok_or_else(|| failed(CheckError::OutputNotAConclusion(local.clone())))?;
            if !replayed.equal_mod_boolean(claimed) {
                return Err(CheckError::ReplayMismatch {
                    position: r + 1,
                    replayed: replayed.to_string(),
                    claimed: claimed.to_string(),
                });
            }
        }
        Ok(())
    }
}
