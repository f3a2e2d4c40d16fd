//! Behavior checks that the transcript suite does not pin: help text,
//! semantic rejections, and the corners of each listing mode.

use std::path::{Path, PathBuf};
use std::process::Command;

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_prefmodels"))
        .args(args)
        .current_dir(fixture_dir())
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("no signal"),
    )
}

#[test]
fn help_and_version_succeed() {
    for args in [&["--help"][..], &["--version"][..], &["synthesize", "--help"][..]] {
        let (stdout, _, code) = run(args);
        assert_eq!(code, 0, "{args:?} should succeed");
        assert!(!stdout.is_empty());
    }
}

#[test]
fn reserved_atoms_are_rejected_with_a_usage_exit() {
    let (stdout, stderr, code) = run(&["defaults", "-d", "birds.dft", "-q", "ab_0"]);
    assert_eq!(code, 2);
    assert_eq!(stdout, "");
    assert!(stderr.contains("ab_0"), "the offending atom is named: {stderr}");
}

#[test]
fn minimization_modes_can_pick_different_worlds() {
    let (subset, _, code_subset) = run(&["deontic", "-o", "pq.obl", "-t", "pq.thy"]);
    let (count, _, code_count) = run(&["deontic", "-o", "pq.obl", "-t", "pq.thy", "--count"]);
    assert_eq!(code_subset, 0);
    assert_eq!(code_count, 0);
    assert_eq!(subset, "00  !p !q\n11  p q\n");
    assert_eq!(count, "11  p q\n");
}

#[test]
fn unsatisfiable_premises_entail_vacuously() {
    let (stdout, _, code) = run(&["nml-entail", "-t", "efq.thy", "-s", "single.struct", "-q", "F"]);
    assert_eq!(code, 0, "no minimal models, so every query holds");
    assert_eq!(stdout, "YES\n");
}

#[test]
fn structures_over_the_wrong_universe_are_rejected() {
    // pair.struct declares four models, efq.thy only has two
    let (stdout, stderr, code) =
        run(&["nml-entail", "-t", "efq.thy", "-s", "pair.struct", "-q", "p"]);
    assert_eq!(code, 2);
    assert_eq!(stdout, "");
    assert!(stderr.contains("pair.struct"), "the structure file is named: {stderr}");
}
