mod common;

use common::*;
use lpac::checker::{run_check, CheckOptions};
use lpac::format::{parse_proof, parse_target, serialize, serialize_target, ProofDocument};
use lpac::genbench::{generate_chain, ChainSpec, Flavor, Template};
use lpac::miner::{compress_proof, FragmentationConfig};

fn fixpoint(name: &str, text: &str) {
    if name.ends_with(".target") {
        let t: lpac::Poly = parse_target(text).unwrap();
        let once = serialize_target(&t);
        assert_eq!(serialize_target::<lpac::Rational>(&parse_target(&once).unwrap()), once, "{name}");
        return;
    }
    let doc: ProofDocument = parse_proof(text).unwrap();
    let once = serialize(&doc);
    let again: ProofDocument = parse_proof(&once).unwrap();
    assert!(doc.same_content(&again), "{name}");
    assert_eq!(serialize(&again), once, "{name}");
}

#[test]
fn fixtures_round_trip() {
    for name in all_fixture_names() {
        fixpoint(&name, &fixture(&name));
    }
}

#[test]
fn generated_files_round_trip() {
    for template in [Template::Resolution, Template::Example1] {
        for n in [1, 2, 4, 8, 16] {
            for flavor in [Flavor::Flat, Flavor::Pattern] {
                let chain = generate_chain(&ChainSpec { blocks: n, template, ..ChainSpec::default() }, flavor);
                fixpoint("axioms", &serialize(&chain.axioms));
                fixpoint("proof", &serialize(&chain.proof));
            }
        }
    }
}

#[test]
fn compression_preserves_acceptance_and_lincomb_count() {
    for template in [Template::Resolution, Template::Example1] {
        for arity in [2, 3] {
            for n in [1, 2, 3, 8, 20] {
                let spec = ChainSpec { blocks: n, arity, template, ..ChainSpec::default() };
                let flat = generate_chain(&spec, Flavor::Flat);
                let pattern = generate_chain(&spec, Flavor::Pattern);
                let (out, report) = compress_proof(&flat.axioms, &flat.proof, FragmentationConfig::default()).unwrap();
                let v = run_check(&flat.axioms, &out, Some(&flat.target), CheckOptions::debug());
                assert!(v.is_accepted(), "{spec:?}: {:?}", v.failure);
                assert!(report.lincomb_after <= report.lincomb_before);
                if n >= 2 {
                    let stats = lpac::stats::StatsReport::scan(&pattern.proof);
                    assert_eq!(report.pattern_new, stats.pattern_new_count, "{spec:?}");
                    assert_eq!(report.pattern_apply, stats.pattern_apply_count, "{spec:?}");
                    assert_eq!(report.lincomb_after, stats.lincomb_count, "{spec:?}");
                }
            }
        }
    }
}

#[test]
fn pattern_file_smaller_for_wider_blocks_from_three() {
    for n in 3..=12 {
        let spec = ChainSpec { blocks: n, arity: 3, ..ChainSpec::default() };
        let flat = serialize(&generate_chain(&spec, Flavor::Flat).proof).len();
        let pattern = serialize(&generate_chain(&spec, Flavor::Pattern).proof).len();
        assert!(pattern < flat, "n={n}: {pattern} >= {flat}");
    }
}

#[test]
fn pattern_file_smaller_for_binary_blocks_from_eight() {
    for n in (8..=64).step_by(4) {
        let spec = ChainSpec::new(n);
        let flat = serialize(&generate_chain(&spec, Flavor::Flat).proof).len();
        let pattern = serialize(&generate_chain(&spec, Flavor::Pattern).proof).len();
        assert!(pattern < flat, "n={n}: {pattern} >= {flat}");
    }
}

#[test]
fn both_flavors_share_the_final_conclusion() {
    for n in [2, 5, 9] {
        let spec = ChainSpec::new(n);
        let flat = generate_chain(&spec, Flavor::Flat);
        let pattern = generate_chain(&spec, Flavor::Pattern);
        let a = run_check(&flat.axioms, &flat.proof, Some(&flat.target), CheckOptions::default());
        let b = run_check(&pattern.axioms, &pattern.proof, Some(&pattern.target), CheckOptions::default());
        assert!(a.is_accepted() && b.is_accepted());
        assert_eq!(a.target_hit, b.target_hit);
    }
}
