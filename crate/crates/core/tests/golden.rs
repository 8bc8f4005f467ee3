mod common;

use common::*;
use lpac::checker::{run_check, run_check_with, CheckOptions, Status};
use lpac::format::PatternId;
use lpac::Var;

#[test]
fn example_one_single_file() {
    let (axioms, proof, target) = load("example1.proof", "example1.axioms", "example1.target");
    let v = run_check(&axioms, &proof, Some(&target), CheckOptions::default());
    assert_eq!(v.status, Status::Accepted);
    assert_eq!(v.target_hit.unwrap().as_str(), "l8");
    assert_eq!(proof.len(), 9);
}

#[test]
fn example_one_split_files() {
    let (axioms, proof, target) = load("example1-split.proof", "example1-split.axioms", "example1.target");
    let v = run_check(&axioms, &proof, Some(&target), CheckOptions::default());
    assert!(v.is_accepted());
    assert_eq!(v.target_hit.unwrap().as_str(), "l8");
}

#[test]
fn example_one_flat_variant() {
    let (axioms, proof, target) = load("example1-flat.proof", "example1-split.axioms", "example1.target");
    assert!(run_check(&axioms, &proof, Some(&target), CheckOptions::default()).is_accepted());
}

#[test]
fn example_two_adds_one_fresh_variable() {
    for (proof, axioms) in [("example2.proof", "example2.axioms"), ("example2-split.proof", "example2-split.axioms")] {
        let (axioms, proof, target) = load(proof, axioms, "example2.target");
        let (v, checker) = run_check_with(&axioms, &proof, Some(&target), CheckOptions::default());
        assert!(v.is_accepted(), "{:?}", v.failure);
        let state = checker.state();
        let before: Vec<Var> = ["x", "y", "z"].map(Var::new).to_vec();
        let mut now = state.sorted_vars().into_iter().collect::<Vec<_>>();
        now.retain(|v| !before.contains(v));
        assert_eq!(now, vec![Var::new("zbar")]);
        let pattern = state.pattern(&PatternId::from("1")).unwrap();
        assert_eq!(pattern.ext_vars.iter().cloned().collect::<Vec<_>>(), vec![Var::new("w3")]);
    }
}

#[test]
fn two_extension_variant_is_accepted() {
    let proof: lpac::format::ProofDocument = lpac::format::parse_proof(EXAMPLE2_TWO_EXT).unwrap();
    for options in [CheckOptions::default(), CheckOptions::debug()] {
        let v = run_check(&Default::default(), &proof, None, options);
        assert!(v.is_accepted(), "{:?}", v.failure);
    }
}
