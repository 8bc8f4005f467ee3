use crate::format::{Index, PatternId, StepKind};
use crate::poly::{PolyError, Var};

/// Why a step was rejected. Polynomials are carried in canonical text form.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("index `{0}` is already in use")]
    IndexInUse(Index),
    #[error("operand `{0}` is not defined")]
    MissingOperand(Index),
    #[error("linear combination has no terms")]
    EmptyCombination,
    #[error("conclusion mismatch: combination gives `{computed}`, step claims `{claimed}`")]
    ConclusionMismatch { computed: String, claimed: String },
    #[error("variable `{0}` is not in the current variable set")]
    UnknownVariable(Var),
    #[error("extension variable `{0}` is not fresh")]
    VariableNotFresh(Var),
    #[error("`{0}` is not Boolean-valued")]
    NotBooleanValued(String),
    #[error("{0} steps are not allowed inside a pattern body")]
    ForbiddenInPattern(StepKind),
    #[error("pattern `{0}` is already defined")]
    PatternIdInUse(PatternId),
    #[error("pattern output `{0}` is not the conclusion of a body step")]
    OutputNotAConclusion(Index),
    #[error("in pattern `{pattern}`, body step {position} (`{label}`): {source}")]
    InPattern { pattern: PatternId, position: usize, label: String, source: Box<CheckError> },
    #[error("pattern `{0}` is not defined")]
    UnknownPattern(PatternId),
    #[error("variable `{0}` listed as fresh already occurs in the proof")]
    FreshVarNotFresh(Var),
    #[error("substitution maps extension variables `{first}` and `{second}` to the same variable")]
    PhiNotInjectiveOnExt { first: Var, second: Var },
    #[error("extension variable `{0}` must be mapped to a variable listed as fresh")]
    PhiExtImageNotFresh(Var),
    #[error("image of `{0}` is not Boolean-valued")]
    PhiNotBooleanValued(Var),
    #[error("pattern variable `{0}` has no image")]
    UnmappedVariable(Var),
    #[error("pattern expects {expected} inputs, got {got}")]
    InputArityMismatch { expected: usize, got: usize },
    #[error("input {position} does not match: pattern gives `{expected}`, proof has `{found}`")]
    InputMismatch { position: usize, expected: String, found: String },
    #[error("pattern has {expected} outputs, got {got}")]
    OutputArityMismatch { expected: usize, got: usize },
    #[error("output index `{0}` is already in use")]
    OutputIndexInUse(Index),
    #[error("output {position} does not match: pattern gives `{expected}`, step claims `{claimed}`")]
    OutputMismatch { position: usize, expected: String, claimed: String },
    #[error("replaying the pattern body failed: {0}")]
    ReplayFailed(Box<CheckError>),
    #[error("replaying the pattern body gives `{replayed}` for output {position}, step claims `{claimed}`")]
    ReplayMismatch { position: usize, replayed: String, claimed: String },
}

impl From<PolyError> for CheckError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::UnmappedVariable(v) => CheckError::UnmappedVariable(v),
        }
    }
}

impl CheckError {
    /// The innermost error, looking through pattern-body wrappers.
    pub fn root(&self) -> &CheckError {
        match self {
            CheckError::InPattern { source, .. } | CheckError::ReplayFailed(source) => source.root(),
            other => other,
        }
    }
}

/// A non-fatal finding.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Warning {
    #[error("deleting unknown index `{0}`")]
    UnknownIndex(Index),
}
