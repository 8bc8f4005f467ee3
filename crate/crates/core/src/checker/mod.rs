//! Step-by-step proof checking.
//!
//! A [`Checker`] executes proof steps against a [`ProofState`] and verifies
//! the side conditions of every rule. Checking is incremental: each step is
//! verified as soon as it is handed over, so a proof can be checked while it
//! is parsed. [`run_check`] drives a checker over an axiom document and a
//! proof document and summarizes the outcome in a [`Verdict`].

mod error;
mod pattern;
mod state;

use std::collections::HashSet;
use std::time::Instant;

pub use error::{CheckError, Warning};
pub use pattern::{check_pattern_body, Pattern, RetainedBody};
pub use state::ProofState;

use crate::format::{Index, PatternDecl, ProofDocument, Step};
use crate::poly::{Polynomial, Var};
use crate::scalar::Scalar;
use crate::stats::StatsReport;
use crate::Rational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Pattern bodies are discarded once checked.
    #[default]
    Strict,
    /// Pattern bodies are kept and every application is replayed.
    Debug,
}

impl Mode {
    pub fn is_debug(self) -> bool {
        self == Mode::Debug
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    pub mode: Mode,
    /// Admit pattern outputs that name an input rather than a body conclusion.
    pub allow_input_outputs: bool,
}

impl CheckOptions {
    pub fn debug() -> Self {
        CheckOptions { mode: Mode::Debug, ..Self::default() }
    }
}

/// Executes proof rules one at a time.
#[derive(Clone, Debug)]
pub struct Checker<C: Scalar = Rational> {
    pub(crate) state: ProofState<C>,
    options: CheckOptions,
    target: Option<Polynomial<C>>,
    warnings: Vec<Warning>,
    pub(crate) replayed: usize,
}

impl<C: Scalar> Checker<C> {
    pub fn new(options: CheckOptions) -> Self {
        Checker { state: ProofState::new(), options, target: None, warnings: Vec::new(), replayed: 0 }
    }

    pub fn with_target(mut self, target: Polynomial<C>) -> Self {
        self.target = Some(target);
        self
    }

    pub fn state(&self) -> &ProofState<C> {
        &self.state
    }

    pub fn into_state(self) -> ProofState<C> {
        self.state
    }

    pub fn options(&self) -> &CheckOptions {
        &self.options
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    /// Number of pattern applications cross-validated by replay.
    pub fn replayed(&self) -> usize {
        self.replayed
    }

    pub fn step(&mut self, step: &Step<C>) -> Result<(), CheckError> {
        match step {
            Step::Axiom { index, poly } => self.step_axiom(index, poly),
            Step::Deletion { index } => {
                self.step_deletion(index);
                Ok(())
            }
            Step::LinComb { index, terms, conclusion } => self.step_lincomb(index, terms, conclusion),
            Step::Ext { index, var, def } => self.step_ext(index, var, def),
            Step::PatternNew(decl) => self.step_pattern_new(decl),
            Step::PatternApply(app) => self.step_pattern_apply(app),
        }
    }

    fn store(&mut self, index: Index, poly: Polynomial<C>) {
        if self.state.target_hit.is_none() && self.target.as_ref().is_some_and(|t| t.equal_mod_boolean(&poly)) {
            self.state.target_hit = Some(index.clone());
        }
        self.state.polys.insert(index, poly);
    }

    fn ensure_free(&self, index: &Index) -> Result<(), CheckError> {
        if self.state.polys.contains_key(index) {
            Err(CheckError::IndexInUse(index.clone()))
        } else {
            Ok(())
        }
    }

    fn ensure_known_vars(&self, p: &Polynomial<C>) -> Result<(), CheckError> {
        match self.state.unknown_var(p, &HashSet::new()) {
            Some(v) => Err(CheckError::UnknownVariable(v.clone())),
            None => Ok(()),
        }
    }

    pub fn step_axiom(&mut self, index: &Index, poly: &Polynomial<C>) -> Result<(), CheckError> {
        self.ensure_free(index)?;
        for (m, _) in poly.terms() {
            self.state.vars.extend(m.vars().iter().cloned());
        }
        self.store(index.clone(), poly.clone());
        Ok(())
    }

    /// Removing an absent index only records a warning.
    pub fn step_deletion(&mut self, index: &Index) {
        if self.state.polys.remove(index).is_none() {
            self.warnings.push(Warning::UnknownIndex(index.clone()));
        }
    }

    pub fn step_lincomb(
        &mut self,
        index: &Index,
        terms: &[(Polynomial<C>, Index)],
        conclusion: &Polynomial<C>,
    ) -> Result<(), CheckError> {
        if terms.is_empty() {
            return Err(CheckError::EmptyCombination);
        }
        let mut operands = Vec::with_capacity(terms.len());
        for (coeff, j) in terms {
            let operand = self.state.get(j).ok_or_else(|| CheckError::MissingOperand(j.clone()))?;
            operands.push((coeff, operand));
        }
        self.ensure_free(index)?;
        for (coeff, _) in terms {
            self.ensure_known_vars(coeff)?;
        }
        self.ensure_known_vars(conclusion)?;
        let computed = Polynomial::linear_combination(operands);
        if !computed.equal_mod_boolean(conclusion) {
            return Err(CheckError::ConclusionMismatch {
                computed: computed.to_string(),
                claimed: conclusion.to_string(),
            });
        }
        self.store(index.clone(), conclusion.clone());
        Ok(())
    }

    pub fn step_ext(&mut self, index: &Index, var: &Var, def: &Polynomial<C>) -> Result<(), CheckError> {
        self.ensure_free(index)?;
        if self.state.has_var(var) {
            return Err(CheckError::VariableNotFresh(var.clone()));
        }
        self.ensure_known_vars(def)?;
        if !def.is_boolean_valued() {
            return Err(CheckError::NotBooleanValued(def.to_string()));
        }
        self.state.vars.insert(var.clone());
        let stored = def - &Polynomial::var(var.clone());
        self.store(index.clone(), stored);
        Ok(())
    }

    pub fn step_pattern_new(&mut self, decl: &PatternDecl<C>) -> Result<(), CheckError> {
        if self.state.patterns.contains_key(&decl.id) {
            return Err(CheckError::PatternIdInUse(decl.id.clone()));
        }
        let pattern = check_pattern_body(decl, &self.options)?;
        self.state.insert_pattern(pattern);
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Accepted,
    Rejected,
    /// Every step checked but the target was never derived.
    TargetNotFound,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Accepted => "accepted",
            Status::Rejected => "rejected",
            Status::TargetNotFound => "no-target",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Axioms,
    Proof,
}

/// Location and cause of the first failing step.
#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub source: Source,
    /// Zero-based position of the step in its document.
    pub position: usize,
    /// Index or pattern id of the failing step.
    pub label: String,
    /// 1-based line of the offending step, inner body step included.
    pub line: Option<usize>,
    pub error: CheckError,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: Status,
    pub failure: Option<Failure>,
    pub target_hit: Option<Index>,
    pub warnings: Vec<Warning>,
    pub replayed_applies: usize,
    pub stats: StatsReport,
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        self.status == Status::Accepted
    }

    /// `STATUS=<accepted|rejected|no-target> STEP=<idx|-> LINE=<n|->`
    pub fn summary_line(&self) -> String {
        let (step, line) = match &self.failure {
            Some(f) => (f.label.clone(), f.line.map_or_else(|| "-".to_string(), |l| l.to_string())),
            None => match self.status {
                Status::Accepted => (
                    self.target_hit.as_ref().map_or_else(|| "-".to_string(), |i| i.to_string()),
                    "-".to_string(),
                ),
                _ => ("-".to_string(), "-".to_string()),
            },
        };
        format!("STATUS={} STEP={step} LINE={line}", self.status.as_str())
    }
}

fn failure_line<C: Scalar>(doc: &ProofDocument<C>, position: usize, error: &CheckError) -> Option<usize> {
    let span = doc.span(position)?;
    if let CheckError::InPattern { position: inner, .. } = error {
        if *inner > 0 {
            if let Some(s) = span.body.get(inner - 1) {
                return Some(s.line);
            }
        }
    }
    Some(span.span.line)
}

/// Checks the axiom steps and then the proof steps, stopping at the first
/// failure. With a target, acceptance also requires that the target is
/// derived at some point.
pub fn run_check<C: Scalar>(
    axioms: &ProofDocument<C>,
    proof: &ProofDocument<C>,
    target: Option<&Polynomial<C>>,
    options: CheckOptions,
) -> Verdict {
    run_check_with(axioms, proof, target, options).0
}

/// Like [`run_check`], also returning the final checker.
pub fn run_check_with<C: Scalar>(
    axioms: &ProofDocument<C>,
    proof: &ProofDocument<C>,
    target: Option<&Polynomial<C>>,
    options: CheckOptions,
) -> (Verdict, Checker<C>) {
    let started = Instant::now();
    let mut checker = Checker::new(options);
    if let Some(t) = target {
        checker = checker.with_target(t.clone());
    }
    let mut failure = None;
    'docs: for (source, doc) in [(Source::Axioms, axioms), (Source::Proof, proof)] {
        for (position, step) in doc.steps.iter().enumerate() {
            if let Err(error) = checker.step(step) {
                failure = Some(Failure {
                    source,
                    position,
                    label: step.label().to_string(),
                    line: failure_line(doc, position, &error),
                    error,
                });
                break 'docs;
            }
        }
    }
    let mut stats = StatsReport::scan(axioms);
    stats.merge(&StatsReport::scan(proof));
    stats.wall_time_millis = started.elapsed().as_secs_f64() * 1e3;

    let status = match (&failure, target, checker.state.target_hit()) {
        (Some(_), _, _) => Status::Rejected,
        (None, Some(_), None) => Status::TargetNotFound,
        _ => Status::Accepted,
    };
    let verdict = Verdict {
        status,
        failure,
        target_hit: checker.state.target_hit().cloned(),
        warnings: checker.warnings.clone(),
        replayed_applies: checker.replayed,
        stats,
    };
    (verdict, checker)
}
