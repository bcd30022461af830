//! Replays the fuzz corpus seeds through the fuzz-target assertions.

use std::fs;
use std::path::PathBuf;

use kwflow::arith::{format_rational, parse_rational};
use kwflow::registry::IndexRange;
use kwflow::virasoro::fixture::parse_fixture;

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> =
        fs::read_dir(&dir).unwrap().map(|e| fs::read_to_string(e.unwrap().path()).unwrap()).collect();
    out.sort();
    assert!(!out.is_empty(), "{}", dir.display());
    out
}

#[test]
fn rational_seeds() {
    let mut accepted = 0;
    for s in seeds("parse_rational") {
        if let Ok(q) = parse_rational(&s) {
            assert_eq!(parse_rational(&format_rational(&q)), Ok(q));
            accepted += 1;
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn fixture_seeds() {
    let mut accepted = 0;
    for s in seeds("parse_fixture") {
        if let Ok(f) = parse_fixture(&s) {
            assert!(f.poly.max_weight() <= f.weight_bound);
            accepted += 1;
        }
    }
    assert_eq!(accepted, 2);
}

#[test]
fn range_seeds() {
    let mut accepted = 0;
    for s in seeds("parse_range") {
        if let Ok(r) = s.parse::<IndexRange>() {
            assert!(r.lo <= r.hi);
            assert_eq!(format!("{}..{}", r.lo, r.hi).parse::<IndexRange>(), Ok(r));
            accepted += 1;
        }
    }
    assert_eq!(accepted, 2);
}
