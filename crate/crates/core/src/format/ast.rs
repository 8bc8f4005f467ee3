use std::fmt;
use std::sync::Arc;

use crate::poly::{Polynomial, Substitution, Var};
use crate::scalar::Scalar;
use crate::Rational;

macro_rules! name_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn new(name: impl AsRef<str>) -> Self {
                $name(Arc::from(name.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $name {
            fn from(name: &str) -> Self {
                $name::new(name)
            }
        }

        impl From<u64> for $name {
            fn from(n: u64) -> Self {
                $name::new(n.to_string())
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
    };
}

name_type!(
    /// Key of a stored polynomial: a natural number or an identifier.
    Index
);
name_type!(
    /// Key of a stored pattern.
    PatternId
);

/// One proof rule instance.
#[derive(Clone, Debug, PartialEq)]
pub enum Step<C: Scalar = Rational> {
    Axiom {
        index: Index,
        poly: Polynomial<C>,
    },
    Deletion {
        index: Index,
    },
    /// `conclusion = sum(coeff_k * P(operand_k))`; `terms` is nonempty.
    LinComb {
        index: Index,
        terms: Vec<(Polynomial<C>, Index)>,
        conclusion: Polynomial<C>,
    },
    /// Introduces `var` as a name for `def`, storing `-var + def`.
    Ext {
        index: Index,
        var: Var,
        def: Polynomial<C>,
    },
    PatternNew(PatternDecl<C>),
    PatternApply(PatternUse<C>),
}

/// A pattern definition: inputs act as local axioms for the body.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternDecl<C: Scalar = Rational> {
    pub id: PatternId,
    pub inputs: Vec<(Index, Polynomial<C>)>,
    pub body: Vec<Step<C>>,
    pub outputs: Vec<Index>,
}

/// A pattern instantiation.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternUse<C: Scalar = Rational> {
    pub id: PatternId,
    pub fresh: Vec<Var>,
    pub phi: Substitution<C>,
    pub inputs: Vec<Index>,
    pub outputs: Vec<(Index, Polynomial<C>)>,
}

impl<C: Scalar> Step<C> {
    pub fn kind(&self) -> StepKind {
        match self {
            Step::Axiom { .. } => StepKind::Axiom,
            Step::Deletion { .. } => StepKind::Deletion,
            Step::LinComb { .. } => StepKind::LinComb,
            Step::Ext { .. } => StepKind::Ext,
            Step::PatternNew(_) => StepKind::PatternNew,
            Step::PatternApply(_) => StepKind::PatternApply,
        }
    }

    /// The index or pattern id this step defines or deletes.
    pub fn label(&self) -> &str {
        match self {
            Step::Axiom { index, .. }
            | Step::Deletion { index }
            | Step::LinComb { index, .. }
            | Step::Ext { index, .. } => index.as_str(),
            Step::PatternNew(decl) => decl.id.as_str(),
            Step::PatternApply(app) => app.id.as_str(),
        }
    }

    pub fn is_pattern_step(&self) -> bool {
        matches!(self, Step::PatternNew(_) | Step::PatternApply(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    Axiom,
    Deletion,
    LinComb,
    Ext,
    PatternNew,
    PatternApply,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::Axiom => "Axiom",
            StepKind::Deletion => "Deletion",
            StepKind::LinComb => "LinComb",
            StepKind::Ext => "Ext",
            StepKind::PatternNew => "PatternNew",
            StepKind::PatternApply => "PatternApply",
        })
    }
}

/// A 1-based source range.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub line: usize,
    pub column: usize,
    pub end_line: usize,
    pub end_column: usize,
}

/// Source location of a step, including the steps of a pattern body.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepSpan {
    pub span: Span,
    pub body: Vec<Span>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MarkerKind {
    FragmentBegin,
    FragmentEnd,
}

/// A `# frag-begin` or `# frag-end` comment, placed before step `position`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Marker {
    pub position: usize,
    pub kind: MarkerKind,
}

/// A parsed proof file. Steps keep file order.
#[derive(Clone, Debug, PartialEq)]
pub struct ProofDocument<C: Scalar = Rational> {
    pub steps: Vec<Step<C>>,
    pub spans: Vec<StepSpan>,
    pub markers: Vec<Marker>,
}

impl<C: Scalar> Default for ProofDocument<C> {
    fn default() -> Self {
        ProofDocument { steps: Vec::new(), spans: Vec::new(), markers: Vec::new() }
    }
}

impl<C: Scalar> ProofDocument<C> {
    pub fn new() -> Self {
        Self::default()
    }

    /// A document without source locations, e.g. one built in memory.
    pub fn from_steps(steps: Vec<Step<C>>) -> Self {
        ProofDocument { steps, spans: Vec::new(), markers: Vec::new() }
    }

    pub fn push(&mut self, step: Step<C>) {
        self.steps.push(step);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn span(&self, position: usize) -> Option<&StepSpan> {
        self.spans.get(position)
    }

    /// Equality of content, ignoring source locations.
    pub fn same_content(&self, other: &Self) -> bool {
        self.steps == other.steps && self.markers == other.markers
    }

    pub fn contains_patterns(&self) -> bool {
        self.steps.iter().any(Step::is_pattern_step)
    }
}
