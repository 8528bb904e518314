use std::process::Command;

use concordance_genus::cli::{run, EXIT_DOMAIN, EXIT_INTEGRITY, EXIT_OK, EXIT_VERIFICATION};
use concordance_genus::knotdb::BUNDLED_TABLE;

fn cg(args: &[&str]) -> concordance_genus::cli::CommandResult {
    run(std::iter::once("concordance-genus").chain(args.iter().copied()))
}

fn field<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(" | ")))
        .unwrap_or_else(|| panic!("no {key} in\n{out}"))
}

#[test]
fn invariants_of_table_knot() {
    let r = cg(&["invariants", "6_2", "--format", "machine"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert_eq!(field(&r.stdout, "irreducible"), "true");
    assert_eq!(field(&r.stdout, "gc_lower"), "2");
    assert_eq!(field(&r.stdout, "gc_upper"), "2");
    assert_eq!(field(&r.stdout, "h1-double-cover"), "Z11");
}

#[test]
fn invariants_of_matrix_polynomial_and_sum() {
    let r = cg(&["invariants", "-1,1;0,-1", "--format", "machine"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert_eq!(field(&r.stdout, "signature"), "-2");
    let r = cg(&["invariants", "1,-2,3,-2,1", "--format", "machine"]);
    assert_eq!(field(&r.stdout, "fox-milnor"), "passes (slice-compatible), f = t^2 - t + 1");
    let r = cg(&["--format", "machine", "invariants", "3_1#-3_1"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert_eq!(field(&r.stdout, "gc_lower"), "0");
    let r = cg(&["--format", "machine", "invariants", "3_1#3_1"]);
    assert_eq!(field(&r.stdout, "gc_lower"), "2");
}

#[test]
fn domain_errors_exit_one() {
    assert_eq!(cg(&["invariants", "1,2"]).code, EXIT_DOMAIN);
    assert_eq!(cg(&["invariants", "1,1;1,1"]).code, EXIT_DOMAIN);
    assert_eq!(cg(&["invariants", "99_9"]).code, EXIT_DOMAIN);
    assert_eq!(cg(&["metabolizers", "3_1", "--prime", "5"]).code, EXIT_DOMAIN);
    assert_eq!(cg(&["metabolizers", "hyperbolic", "--prime", "4"]).code, EXIT_DOMAIN);
    assert_eq!(cg(&["verify-sec5", "--genus", "5"]).code, EXIT_DOMAIN);
    assert_eq!(cg(&["no-such-command"]).code, EXIT_DOMAIN);
    assert_eq!(cg(&["--help"]).code, EXIT_OK);
}

#[test]
fn broken_tables_exit_two() {
    let dir = std::env::temp_dir().join(format!("cg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("6_2 | 6 | 1,-3,3,-3,1", "6_2 | 6 | 1,-3,5,-3,1"),
        ("| 3_1 |", "| 99_1 |"),
    ];
    for (i, (from, to)) in cases.iter().enumerate() {
        let path = dir.join(format!("t{i}.tbl"));
        std::fs::write(&path, BUNDLED_TABLE.replacen(from, to, 1)).unwrap();
        let r = cg(&["--table", path.to_str().unwrap(), "enumerate"]);
        assert_eq!(r.code, EXIT_INTEGRITY, "{}", r.stderr);
        assert!(r.stderr.contains("integrity"), "{}", r.stderr);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn enumerate_machine_format_has_one_row_per_knot() {
    let r = cg(&["enumerate", "--format", "machine"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.stdout.lines().filter(|l| !l.starts_with('#')).count(), 250);
    assert_eq!(r.stdout.lines().last(), Some("# counts | 21 | 209 | 17 | 3"));
}

#[test]
fn metabolizer_listing() {
    let r = cg(&["metabolizers", "hyperbolic", "--rank", "2", "--prime", "3", "--format", "machine"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.stdout.lines().count(), 8);
    let r = cg(&["metabolizers", "3_1#-3_1", "--prime", "3", "--format", "machine"]);
    assert_eq!(r.stdout, "3 | 1 | [1,1]\n3 | 1 | [1,2]\n");
}

#[test]
fn doubling_schedule_is_a_verification_failure() {
    let r = cg(&["verify-sec5", "--genus", "3", "--trials", "2", "--schedule", "doubling"]);
    assert_eq!(r.code, EXIT_VERIFICATION);
    assert!(r.stderr.contains("separation fails"), "{}", r.stderr);
    let r = cg(&["verify-sec5", "--genus", "2,3", "--trials", "5"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("N=3: all cases pass (34 cases)"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_concordance-genus");
    let out = Command::new(bin).args(["invariants", "6_2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("gc_lower"));
    let out = Command::new(bin).args(["invariants", "banana"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
