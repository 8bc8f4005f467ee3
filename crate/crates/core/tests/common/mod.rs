//! Shared fixtures and oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use lpac::checker::CheckError;
use lpac::format::{parse_axioms, parse_proof, parse_target, ProofDocument};
use lpac::{Poly, Var};
use num_traits::Zero;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn all_fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_path(""))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    names
}

pub fn load(proof: &str, axioms: &str, target: &str) -> (ProofDocument, ProofDocument, Poly) {
    (
        parse_axioms(&fixture(axioms)).unwrap(),
        parse_proof(&fixture(proof)).unwrap(),
        parse_target(&fixture(target)).unwrap(),
    )
}

/// Example 2 with a second extension variable reaching an output.
pub const EXAMPLE2_TWO_EXT: &str = "A l1, x*y ;
A l2, y*z-y-z+1 ;
N 1 { inputs [ p1 : v1*v2, p2 : v2*v3-v2-v3+1 ] steps [ E p3, w3, 1-v3 ; L p4, v1*w3, (w3)*p1, (v1)*p2, (v1*v2-v1)*p3 ; E p5, w5, 1-v1 ; ] outputs [ p3, p4, p5 ] } ;
U 1 { fresh [ zbar, xbar ] map [ v1 -> x, v2 -> y, v3 -> z, w3 -> zbar, w5 -> xbar ] in [ l1, l2 ] out [ l3 : -zbar+1-z, l4 : x*zbar, l5 : -xbar+1-x ] } ;
";

pub struct Mutation {
    pub name: &'static str,
    /// Fixture file name, or `None` for [`EXAMPLE2_TWO_EXT`].
    pub base: Option<&'static str>,
    pub line: usize,
    pub from: &'static str,
    pub to: &'static str,
    /// Line of the step that must be reported.
    pub expect_line: usize,
    pub expect: fn(&CheckError) -> bool,
}

impl Mutation {
    pub fn source(&self) -> String {
        match self.base {
            Some(name) => fixture(name),
            None => EXAMPLE2_TWO_EXT.to_string(),
        }
    }

    /// Replaces the single occurrence of `from` on `line`.
    pub fn apply(&self) -> String {
        let text = self.source();
        let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
        let target = &mut lines[self.line - 1];
        assert_eq!(target.matches(self.from).count(), 1, "{}: `{}` must occur once on line {}", self.name, self.from, self.line);
        *target = target.replacen(self.from, self.to, 1);
        lines.join("\n") + "\n"
    }

    pub fn target(&self) -> &'static str {
        match self.base {
            Some("example1.proof") => "example1.target",
            _ => "example2.target",
        }
    }
}

pub fn mutations() -> Vec<Mutation> {
    use CheckError as E;
    vec![
        Mutation {
            name: "wrong conclusion of the closing step",
            base: Some("example1.proof"),
            line: 9,
            from: "L l8, 1,",
            to: "L l8, 2,",
            expect_line: 9,
            expect: |e| matches!(e, E::ConclusionMismatch { .. }),
        },
        Mutation {
            name: "wrong coefficient in the closing step",
            base: Some("example1.proof"),
            line: 9,
            from: "(-1)*l7",
            to: "(1)*l7",
            expect_line: 9,
            expect: |e| matches!(e, E::ConclusionMismatch { .. }),
        },
        Mutation {
            name: "wrong coefficient in the pattern body",
            base: Some("example1.proof"),
            line: 6,
            from: "(2)*p2",
            to: "(3)*p2",
            expect_line: 6,
            expect: |e| matches!(e, E::ConclusionMismatch { .. }),
        },
        Mutation {
            name: "wrong conclusion in the pattern body",
            base: Some("example1.proof"),
            line: 6,
            from: "L p3, v1-2*v3",
            to: "L p3, v1-3*v3",
            expect_line: 6,
            expect: |e| matches!(e, E::ConclusionMismatch { .. }),
        },
        Mutation {
            name: "stale operand index",
            base: Some("example1.proof"),
            line: 9,
            from: "(1)*l6",
            to: "(1)*l9",
            expect_line: 9,
            expect: |e| matches!(e, E::MissingOperand(i) if i.as_str() == "l9"),
        },
        Mutation {
            name: "wrong input index",
            base: Some("example1.proof"),
            line: 7,
            from: "in [ l1, l2 ]",
            to: "in [ l1, l3 ]",
            expect_line: 7,
            expect: |e| matches!(e, E::InputMismatch { position: 2, .. }),
        },
        Mutation {
            name: "image x+y is not Boolean",
            base: Some("example1.proof"),
            line: 7,
            from: "v2 -> 1-y",
            to: "v2 -> x+y",
            expect_line: 7,
            expect: |e| matches!(e, E::PhiNotBooleanValued(v) if v.name() == "v2"),
        },
        Mutation {
            name: "output mismatch",
            base: Some("example1.proof"),
            line: 7,
            from: "l6 : x-2*z",
            to: "l6 : x-2*y",
            expect_line: 7,
            expect: |e| matches!(e, E::OutputMismatch { position: 1, .. }),
        },
        Mutation {
            name: "second application with a wrong image",
            base: Some("example1.proof"),
            line: 8,
            from: "v3 -> z",
            to: "v3 -> b",
            expect_line: 8,
            expect: |e| matches!(e, E::InputMismatch { position: 2, .. }),
        },
        Mutation {
            name: "unknown pattern id",
            base: Some("example1.proof"),
            line: 8,
            from: "U 1",
            to: "U 2",
            expect_line: 8,
            expect: |e| matches!(e, E::UnknownPattern(_)),
        },
        Mutation {
            name: "axiom index reused",
            base: Some("example1.proof"),
            line: 3,
            from: "A l3,",
            to: "A l1,",
            expect_line: 3,
            expect: |e| matches!(e, E::IndexInUse(_)),
        },
        Mutation {
            name: "fresh variable already in use",
            base: Some("example2.proof"),
            line: 4,
            from: "fresh [ zbar ]",
            to: "fresh [ y ]",
            expect_line: 4,
            expect: |e| matches!(e, E::FreshVarNotFresh(v) if v.name() == "y"),
        },
        Mutation {
            name: "extension image not fresh",
            base: Some("example2.proof"),
            line: 4,
            from: "w3 -> zbar",
            to: "w3 -> z",
            expect_line: 4,
            expect: |e| matches!(e, E::PhiExtImageNotFresh(v) if v.name() == "w3"),
        },
        Mutation {
            name: "non-injective substitution on extension variables",
            base: None,
            line: 4,
            from: "w5 -> xbar",
            to: "w5 -> zbar",
            expect_line: 4,
            expect: |e| matches!(e, E::PhiNotInjectiveOnExt { .. }),
        },
        Mutation {
            name: "wrong coefficient in the Example 2 body",
            base: Some("example2.proof"),
            line: 3,
            from: "(v1*v2-v1)*p3",
            to: "(v1*v2+v1)*p3",
            expect_line: 3,
            expect: |e| matches!(e, E::ConclusionMismatch { .. }),
        },
        Mutation {
            name: "Example 2 output mismatch",
            base: Some("example2.proof"),
            line: 4,
            from: "l4 : x*zbar",
            to: "l4 : x*z",
            expect_line: 4,
            expect: |e| matches!(e, E::OutputMismatch { position: 2, .. }),
        },
        Mutation {
            name: "changed axiom breaks the input match",
            base: Some("example2.proof"),
            line: 2,
            from: "-z+1",
            to: "-z+2",
            expect_line: 4,
            expect: |e| matches!(e, E::InputMismatch { position: 2, .. }),
        },
        Mutation {
            name: "extension definition not Boolean",
            base: Some("example2.proof"),
            line: 3,
            from: "E p3, w3, 1-v3",
            to: "E p3, w3, 2-v3",
            expect_line: 3,
            expect: |e| matches!(e, E::NotBooleanValued(_)),
        },
    ]
}

/// A polynomial as raw integer terms; exponents are not reduced.
#[derive(Clone, Debug)]
pub struct RawPoly {
    pub terms: Vec<(i64, Vec<(usize, u32)>)>,
}

impl RawPoly {
    pub fn random(rng: &mut impl Rng, vars: usize, max_terms: usize) -> Self {
        let n = rng.gen_range(0..=max_terms);
        let terms = (0..n)
            .map(|_| {
                let c = rng.gen_range(-5..=5);
                let factors = rng.gen_range(0..=3);
                let m = (0..factors).map(|_| (rng.gen_range(0..vars), rng.gen_range(1..=3))).collect();
                (c, m)
            })
            .collect();
        RawPoly { terms }
    }

    pub fn text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, m)| {
                let mut s = format!("({c})");
                for (v, e) in m {
                    s.push_str(&format!("*x{v}^{e}"));
                }
                s
            })
            .collect();
        parts.join("+")
    }

    /// Value at the cube point whose bits are `point`.
    pub fn eval(&self, point: u32) -> i64 {
        self.terms
            .iter()
            .map(|(c, m)| if m.iter().all(|(v, _)| point >> v & 1 == 1) { *c } else { 0 })
            .sum()
    }
}

/// A polynomial equal to `p` on the cube but written differently.
pub fn disguise(rng: &mut impl Rng, p: &RawPoly, vars: usize) -> RawPoly {
    let mut terms: Vec<_> = p
        .terms
        .iter()
        .map(|(c, m)| (*c, m.iter().map(|(v, _)| (*v, rng.gen_range(1..=3))).collect::<Vec<_>>()))
        .collect();
    for _ in 0..rng.gen_range(0..3) {
        let v = rng.gen_range(0..vars);
        let c = rng.gen_range(-5..=5);
        terms.push((c, vec![(v, 2)]));
        terms.push((-c, vec![(v, 1)]));
    }
    RawPoly { terms }
}

pub fn agree_on_cube(a: &RawPoly, b: &RawPoly, vars: usize) -> bool {
    (0..1u32 << vars).all(|pt| a.eval(pt) == b.eval(pt))
}

/// Value of a reduced polynomial at an assignment of `vars`.
pub fn eval_poly(p: &Poly, vars: &[Var], point: u32) -> num_rational::BigRational {
    let mut total = num_rational::BigRational::zero();
    for (m, c) in p.terms() {
        let on = m.vars().iter().all(|v| {
            let k = vars.iter().position(|w| w == v).expect("variable in list");
            point >> k & 1 == 1
        });
        if on {
            total += c.clone();
        }
    }
    total
}

pub fn vars_of<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Vec<Var> {
    let mut set = BTreeSet::new();
    for p in polys {
        p.collect_vars(&mut set);
    }
    set.into_iter().collect()
}
