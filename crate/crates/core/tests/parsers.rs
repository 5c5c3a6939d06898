//! Parser invariants replayed over the checked-in fuzz seeds.

use std::fs;
use std::path::PathBuf;

use mfsing::cli::bundle::{parse_bundle, LoadOptions};
use mfsing::ring::{MonomialOrder, Ring};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files.iter().filter_map(|p| fs::read_to_string(p).ok()).collect()
}

#[test]
fn polynomial_seeds_print_and_reparse() {
    let ring = Ring::new(32003, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
    let texts = seeds("parse_poly");
    assert!(!texts.is_empty());
    for text in texts {
        if let Ok(f) = ring.parse(&text) {
            assert_eq!(ring.parse(&f.to_string()).unwrap(), f, "{text}");
        }
    }
}

#[test]
fn bundle_seeds_have_stable_canonical_form() {
    let opts = LoadOptions::default();
    let texts = seeds("parse_bundle");
    assert!(!texts.is_empty());
    for text in texts {
        let b = parse_bundle(&text, &opts).unwrap();
        let again = parse_bundle(&b.to_string(), &opts).unwrap();
        assert_eq!(again.to_string(), b.to_string());
    }
}

#[test]
fn hostile_inputs_are_rejected_without_panicking() {
    let ring = Ring::new(32003, &["x", "y"], MonomialOrder::Grevlex).unwrap();
    for text in ["x^99999999999", "x^70000", "((", "x**y", "", "3/x", "x^-1", "y^65536*y"] {
        assert!(ring.parse(text).is_err(), "{text}");
    }
    let opts = LoadOptions::default();
    for text in [
        "",
        "ring 32003 x\nmf A 1\nx\n/\nx^2\n",
        "ring 4 x\npotential x\n",
        "ring 32003 x\npotential x^2\nmf A 99999999999\n",
        "ring 32003 x\npotential x^2\nmf A 1\nx, x\n/\nx\n",
    ] {
        assert!(parse_bundle(text, &opts).is_err(), "{text:?}");
    }
}
