//! One PASS/FAIL line per reproduction criterion.
//!
//! Criterion 4 is expected to stay red: the bundled census puts 10_82 among
//! the unresolved knots (21 / 209 / 17 / 3), because every algebraic bound
//! for it stops at 2 below its genus of 4. The test pins that exact
//! difference and requires every other criterion to pass.

use std::io::Write;

use concordance_genus::knotdb::load_bundled;
use concordance_genus::reproduce::{run_all, Criterion};

const SEED: u64 = 20_240_601;

/// Written straight to stderr so the lines survive output capture.
fn show(cs: &[Criterion]) {
    let mut err = std::io::stderr().lock();
    writeln!(err).unwrap();
    for c in cs {
        writeln!(err, "{c}").unwrap();
    }
}

#[test]
fn acceptance() {
    let records = load_bundled().unwrap();
    let criteria = run_all(&records, SEED).unwrap();
    show(&criteria);
    assert_eq!(criteria.iter().map(|c| c.id).collect::<Vec<_>>(), (1..=9).collect::<Vec<_>>());

    let census = &criteria[3];
    assert!(!census.passed);
    assert!(
        census.detail.starts_with("21 / 209 / 17 / 3 (published 21 / 210 / 17 / 2), groups match; extra exceptions 10_82"),
        "{}",
        census.detail
    );
    assert!(!census.detail.contains("missing"));

    for c in criteria.iter().filter(|c| c.id != 4) {
        assert!(c.passed, "{c}");
    }
}
