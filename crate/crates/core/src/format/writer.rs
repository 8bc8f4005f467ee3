use std::fmt::{self, Write};

use super::ast::*;
use crate::scalar::Scalar;

/// Writes one step in canonical form, without a trailing newline.
pub fn write_step<C: Scalar>(out: &mut impl Write, step: &Step<C>) -> fmt::Result {
    match step {
        Step::Axiom { index, poly } => write!(out, "A {index}, {poly} ;"),
        Step::Deletion { index } => write!(out, "D {index} ;"),
        Step::LinComb { index, terms, conclusion } => {
            write!(out, "L {index}, {conclusion}")?;
            for (coeff, operand) in terms {
                write!(out, ", ({coeff})*{operand}")?;
            }
            out.write_str(" ;")
        }
        Step::Ext { index, var, def } => write!(out, "E {index}, {var}, {def} ;"),
        Step::PatternNew(decl) => {
            write!(out, "N {} {{ inputs [ ", decl.id)?;
            for (k, (idx, poly)) in decl.inputs.iter().enumerate() {
                if k > 0 {
                    out.write_str(", ")?;
                }
                write!(out, "{idx} : {poly}")?;
            }
            out.write_str(" ] steps [ ")?;
            for inner in &decl.body {
                write_step(out, inner)?;
                out.write_char(' ')?;
            }
            out.write_str("] outputs [ ")?;
            write_joined(out, decl.outputs.iter())?;
            out.write_str(" ] } ;")
        }
        Step::PatternApply(app) => {
            write!(out, "U {} {{ fresh [ ", app.id)?;
            for v in &app.fresh {
                write!(out, "{v} ")?;
            }
            out.write_str("] map [ ")?;
            for (k, (v, image)) in app.phi.iter().enumerate() {
                if k > 0 {
                    out.write_str(", ")?;
                }
                write!(out, "{v} -> {image}")?;
            }
            out.write_str(" ] in [ ")?;
            write_joined(out, app.inputs.iter())?;
            out.write_str(" ] out [ ")?;
            for (k, (idx, poly)) in app.outputs.iter().enumerate() {
                if k > 0 {
                    out.write_str(", ")?;
                }
                write!(out, "{idx} : {poly}")?;
            }
            out.write_str(" ] } ;")
        }
    }
}

fn write_joined<T: fmt::Display>(out: &mut impl Write, items: impl Iterator<Item = T>) -> fmt::Result {
    for (k, item) in items.enumerate() {
        if k > 0 {
            out.write_str(", ")?;
        }
        write!(out, "{item}")?;
    }
    Ok(())
}

fn write_marker(out: &mut impl Write, kind: MarkerKind) -> fmt::Result {
    match kind {
        MarkerKind::FragmentBegin => out.write_str("# frag-begin\n"),
        MarkerKind::FragmentEnd => out.write_str("# frag-end\n"),
    }
}

/// Canonical text of a document: one step per line.
pub fn serialize<C: Scalar>(doc: &ProofDocument<C>) -> String {
    let mut out = String::new();
    let mut markers = doc.markers.iter().peekable();
    for (k, step) in doc.steps.iter().enumerate() {
        while let Some(m) = markers.next_if(|m| m.position <= k) {
            write_marker(&mut out, m.kind).unwrap();
        }
        write_step(&mut out, step).unwrap();
        out.push('\n');
    }
    for m in markers {
        write_marker(&mut out, m.kind).unwrap();
    }
    out
}

impl<C: Scalar> fmt::Display for Step<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_step(f, self)
    }
}
