mod common;

use common::*;
use lpac::checker::{run_check_with, CheckOptions};
use lpac::format::{parse_polynomial, parse_proof, ProofDocument};
use lpac::{Poly, Var};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const VARS: usize = 8;

/// Introduces every cube variable; not used as an operand.
const INTRO: &str = "A vars, x0*x1*x2*x3*x4*x5*x6*x7 ;\n";

fn cube_vars() -> Vec<Var> {
    (0..VARS).map(|k| Var::new(format!("x{k}"))).collect()
}

fn poly(raw: &RawPoly) -> Poly {
    parse_polynomial(&raw.text()).unwrap()
}

#[test]
fn equality_matches_the_cube() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut equal, mut unequal) = (0, 0);
    for k in 0..500 {
        let a = RawPoly::random(&mut rng, VARS, 6);
        let b = match k % 3 {
            0 => disguise(&mut rng, &a, VARS),
            1 => RawPoly::random(&mut rng, VARS, 6),
            _ => {
                let mut b = disguise(&mut rng, &a, VARS);
                if let Some(t) = b.terms.first_mut() {
                    t.0 += 1;
                }
                b
            }
        };
        let oracle = agree_on_cube(&a, &b, VARS);
        assert_eq!(poly(&a).equal_mod_boolean(&poly(&b)), oracle, "{} vs {}", a.text(), b.text());
        if oracle { equal += 1 } else { unequal += 1 }
    }
    assert!(equal > 100 && unequal > 100);
}

#[test]
fn normal_form_keeps_cube_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let vars = cube_vars();
    for _ in 0..300 {
        let a = RawPoly::random(&mut rng, VARS, 8);
        let p = poly(&a);
        for pt in 0..1u32 << VARS {
            assert_eq!(eval_poly(&p, &vars, pt), num_rational::BigRational::from_integer(a.eval(pt).into()));
        }
    }
}

#[test]
fn accepted_lincomb_conclusions_vanish_on_common_zeros() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let vars = cube_vars();
    let mut checked = 0;
    while checked < 200 {
        let count = rng.gen_range(1..=3);
        let ops: Vec<RawPoly> = (0..count).map(|_| RawPoly::random(&mut rng, VARS, 3)).collect();
        let coeffs: Vec<RawPoly> = (0..count).map(|_| RawPoly::random(&mut rng, VARS, 3)).collect();
        let mut text = INTRO.to_string();
        for (k, g) in ops.iter().enumerate() {
            text.push_str(&format!("A g{k}, {} ;\n", g.text()));
        }
        let terms: Vec<String> = coeffs.iter().enumerate().map(|(k, c)| format!("({})*g{k}", c.text())).collect();
        let unreduced: Vec<String> =
            coeffs.iter().zip(&ops).map(|(c, g)| format!("({})*({})", c.text(), g.text())).collect();
        text.push_str(&format!("L h, {}, {} ;\n", unreduced.join("+"), terms.join(", ")));
        let doc: ProofDocument = parse_proof(&text).unwrap();
        let (v, checker) = run_check_with(&ProofDocument::new(), &doc, None, CheckOptions::default());
        assert!(v.is_accepted(), "{text}: {:?}", v.failure);
        let stored = checker.state().get(&"h".into()).unwrap().clone();
        for pt in 0..1u32 << VARS {
            if ops.iter().all(|g| g.eval(pt) == 0) {
                assert!(eval_poly(&stored, &vars, pt).is_zero(), "{text}");
            }
        }
        checked += 1;
    }
}

#[test]
fn random_flat_proofs_are_sound() {
    // Stored polynomials vanish wherever the axioms and extension
    // definitions vanish.
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..50 {
        let mut text = "A vars, x0*x1*x2*x3*x4*x5 ;\n".to_string();
        let mut constraints = vec![];
        let mut indices = vec![];
        for k in 0..3 {
            let g = RawPoly::random(&mut rng, 6, 3);
            text.push_str(&format!("A a{k}, {} ;\n", g.text()));
            constraints.push(format!("a{k}"));
            indices.push(format!("a{k}"));
        }
        text.push_str("E e0, t0, x0*x1 ;\nE e1, t1, 1-x2 ;\n");
        constraints.extend(["e0".to_string(), "e1".to_string()]);
        indices.extend(["e0".to_string(), "e1".to_string()]);
        let mut doc: ProofDocument = parse_proof(&text).unwrap();
        for k in 0..4 {
            let picks: Vec<&String> = (0..2).map(|_| &indices[rng.gen_range(0..indices.len())]).collect();
            let coeffs: Vec<Poly> = (0..2).map(|_| poly(&RawPoly::random(&mut rng, 6, 2))).collect();
            let conclusion = {
                let state_doc = run_check_with(&ProofDocument::new(), &doc, None, CheckOptions::default()).1;
                let ops: Vec<Poly> = picks.iter().map(|i| state_doc.state().get(&i.as_str().into()).unwrap().clone()).collect();
                Poly::linear_combination(coeffs.iter().zip(&ops))
            };
            let index = format!("d{k}");
            doc.push(lpac::format::Step::LinComb {
                index: index.as_str().into(),
                terms: coeffs.into_iter().zip(picks.iter().map(|i| i.as_str().into())).collect(),
                conclusion,
            });
            indices.push(index);
        }
        let (v, checker) = run_check_with(&ProofDocument::new(), &doc, None, CheckOptions::default());
        assert!(v.is_accepted(), "{:?}", v.failure);
        let state = checker.state();
        let all: Vec<Poly> = state.polys().filter(|(i, _)| i.as_str() != "vars").map(|(_, p)| p.clone()).collect();
        let vars = vars_of(&all);
        assert!(vars.len() <= 10);
        let cons: Vec<&Poly> = constraints.iter().map(|i| state.get(&i.as_str().into()).unwrap()).collect();
        for pt in 0..1u32 << vars.len() {
            if cons.iter().all(|c| eval_poly(c, &vars, pt).is_zero()) {
                for p in &all {
                    assert!(eval_poly(p, &vars, pt).is_zero());
                }
            }
        }
    }
}

fn raw_strategy() -> impl Strategy<Value = RawPoly> {
    let term = (-5i64..=5, prop::collection::vec((0usize..VARS, 1u32..=3), 0..4));
    prop::collection::vec(term, 0..6).prop_map(|terms| RawPoly { terms })
}

proptest! {
    #[test]
    fn display_parses_back(raw in raw_strategy()) {
        let p = poly(&raw);
        let again: Poly = parse_polynomial(&p.to_string()).unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn substitution_by_renaming_commutes_with_evaluation(raw in raw_strategy(), shift in 1usize..VARS) {
        let p = poly(&raw);
        let phi: lpac::Substitution = (0..VARS)
            .map(|k| (Var::new(format!("x{k}")), Poly::var(Var::new(format!("x{}", (k + shift) % VARS)))))
            .collect();
        let q = p.substitute(&phi).unwrap();
        let vars = cube_vars();
        for pt in 0..1u32 << VARS {
            let rotated = (0..VARS).fold(0u32, |acc, k| acc | ((pt >> ((k + shift) % VARS) & 1) << k));
            prop_assert_eq!(eval_poly(&q, &vars, pt), eval_poly(&p, &vars, rotated));
        }
    }
}
