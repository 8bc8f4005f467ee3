//! Text format for axiom, target and proof files.
//!
//! ```text
//! A <idx> , <poly> ;
//! D <idx> ;
//! L <idx> , <poly> , ( <poly> ) * <idx> { , ( <poly> ) * <idx> } ;
//! E <idx> , <var> , <poly> ;
//! N <pid> { inputs [ <idx> : <poly>, ... ] steps [ <L/E/D step>* ] outputs [ <idx>, ... ] } ;
//! U <pid> { fresh [ <var>* ] map [ <var> -> <poly>, ... ] in [ <idx>, ... ] out [ <idx> : <poly>, ... ] } ;
//! ```
//!
//! `#` starts a comment. The comments `# frag-begin` and `# frag-end` are
//! kept as fragment markers for the miner. A target file holds a single
//! `<poly> ;`; an axiom file holds only `A` statements.

mod ast;
mod lexer;
mod parser;
mod writer;

pub use ast::{
    Index, Marker, MarkerKind, PatternDecl, PatternId, PatternUse, ProofDocument, Span, Step, StepKind, StepSpan,
};
pub use parser::{Statement, StatementParser};
pub use writer::{serialize, write_step};

use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// A syntax error with its 1-based location.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: section `{keyword}` given twice")]
    DuplicateKeyword { line: usize, column: usize, keyword: String },
    #[error("{line}:{column}: `{open}` is never closed")]
    UnterminatedBlock { line: usize, column: usize, open: char },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::DuplicateKeyword { line, .. }
            | ParseError::UnterminatedBlock { line, .. } => *line,
        }
    }
}

/// Parses a polynomial and reduces it to normal form.
pub fn parse_polynomial<C: Scalar>(text: &str) -> Result<Polynomial<C>, ParseError> {
    let mut p = StatementParser::new(text);
    let poly = p.parse_polynomial()?;
    p.expect_end()?;
    Ok(poly)
}

/// Parses a proof file. No semantic checks are made.
pub fn parse_proof<C: Scalar>(text: &str) -> Result<ProofDocument<C>, ParseError> {
    let mut doc = ProofDocument::new();
    for statement in StatementParser::new(text) {
        match statement? {
            Statement::Step(step, span) => {
                doc.steps.push(step);
                doc.spans.push(span);
            }
            Statement::Marker(kind) => doc.markers.push(Marker { position: doc.steps.len(), kind }),
        }
    }
    Ok(doc)
}

/// Parses an axiom file: a proof file made only of `A` statements.
pub fn parse_axioms<C: Scalar>(text: &str) -> Result<ProofDocument<C>, ParseError> {
    let doc = parse_proof(text)?;
    for (step, span) in doc.steps.iter().zip(&doc.spans) {
        if !matches!(step, Step::Axiom { .. }) {
            return Err(ParseError::Syntax {
                line: span.span.line,
                column: span.span.column,
                message: format!("axiom files may only contain `A` statements, found {}", step.kind()),
            });
        }
    }
    Ok(doc)
}

/// Parses a target file: `<poly> ;`.
pub fn parse_target<C: Scalar>(text: &str) -> Result<Polynomial<C>, ParseError> {
    let mut p = StatementParser::new(text);
    let poly = p.parse_polynomial()?;
    p.expect_semicolon()?;
    p.expect_end()?;
    Ok(poly)
}

/// Canonical text of a target file.
pub fn serialize_target<C: Scalar>(target: &Polynomial<C>) -> String {
    format!("{target} ;\n")
}
