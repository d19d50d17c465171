//! End-to-end runs of the `ncp` binary.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Exit code and raw stdout.
fn run_raw(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ncp")).args(args).output().expect("ncp runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).unwrap())
}

fn run(args: &[&str]) -> (i32, Value) {
    let (code, text) = run_raw(args);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad report {}: {}", e, text)))
}

fn statuses(report: &Value) -> Vec<(String, String)> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["status"].as_str().unwrap().to_string()))
        .collect()
}

fn all_proved(report: &Value) -> bool {
    let s = statuses(report);
    !s.is_empty() && s.iter().all(|(_, st)| st == "PROVED")
}

#[test]
fn one_pair_is_quasi_poisson() {
    let (code, r) = run(&["verify", "quasi-poisson", "--builtin", "one-pair"]);
    assert_eq!(code, 0);
    assert!(all_proved(&r), "{}", r);
}

#[test]
fn hamiltonian_moment_on_the_loop() {
    let (code, r) = run(&["verify", "moment", "--builtin", "hamiltonian", "--quiver", &data("loop.json")]);
    assert_eq!(code, 0);
    assert_eq!(statuses(&r), vec![("moment.additive".to_string(), "PROVED".to_string())]);
}

#[test]
fn jacobi_at_a_point_has_zero_residual() {
    let (code, r) = run(&["rep", "check", "--quiver", &data("loop.json"), "--dims", "2", "--seed", "1", "--check", "jacobi"]);
    assert_eq!(code, 0);
    assert!(all_proved(&r), "{}", r);
    for c in r["checks"].as_array().unwrap() {
        assert_eq!(c["residual"], "0");
    }
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "loday", "--bracket", &data("quadratic_bracket.json"), "--seed", "7", "--samples", "20"];
    assert_eq!(run_raw(&args), run_raw(&args));
    let args = ["rep", "eval", "--quiver", &data("two_cycle.json"), "--dims", "2,1", "--seed", "4", "--expr", "a b - 1/3 e(1)"];
    let (code, text) = run_raw(&args);
    assert_eq!(code, 0);
    assert_eq!(run_raw(&args).1, text);
    let r: Value = serde_json::from_str(&text).unwrap();
    assert!(!r["outputs"]["value"].as_str().unwrap().contains('.'), "no floats in reports: {}", text);
}

#[test]
fn build_then_verify_agrees_with_in_memory() {
    let out = scratch("general.json");
    let q = data("two_cycle.json");
    let (code, _) = run(&["build", "--builtin", "general-quasi", "--quiver", &q, "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (c1, from_file) = run(&["verify", "quasi-poisson", "--structure", out.to_str().unwrap()]);
    let (c2, in_memory) = run(&["verify", "quasi-poisson", "--builtin", "general-quasi", "--quiver", &q]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(from_file["checks"], in_memory["checks"]);
}

#[test]
fn fusing_a_built_structure_stays_quasi_hamiltonian() {
    let out = scratch("for_fusion.json");
    run(&["build", "--builtin", "general-quasi", "--quiver", &data("two_cycle.json"), "--out", out.to_str().unwrap()]);
    let (code, r) = run(&["fuse", "--structure", out.to_str().unwrap(), "--merge", "1", "2"]);
    assert_eq!(code, 0, "{}", r);
    assert!(all_proved(&r));
    assert!(r["outputs"]["structure"].as_str().unwrap().contains("vertices"));
}

#[test]
fn fusion_coherence_reports_the_order() {
    let (code, r) = run(&["fuse", "--coherence", "--quiver", &data("two_cycle.json"), "--order", "b,a,b*,a*"]);
    assert_eq!(code, 0, "{}", r);
    assert_eq!(r["checks"][0]["params"]["order"], "b,a,b*,a*");
}

#[test]
fn broken_bracket_fails_with_witness_and_oracle_note() {
    let (code, r) = run(&["verify", "double-poisson", "--bracket", &data("broken_bracket.json")]);
    assert_eq!(code, 1);
    let c = &r["checks"][0];
    assert_eq!(c["status"], "FAIL");
    assert_eq!(c["witness"], "(t, t, t)");
    assert!(c["params"]["oracle"].as_str().unwrap().starts_with("nonzero at"));

    let (code, r) = run(&["--oracle-fallback", "false", "verify", "double-poisson", "--bracket", &data("broken_bracket.json")]);
    assert_eq!(code, 1);
    assert!(r["checks"][0]["params"].get("oracle").is_none());
    assert_eq!(r["outputs"]["oracle_fallback"], "off");
}

#[test]
fn input_errors_exit_2() {
    let (code, r) = run(&["verify", "moment", "--builtin", "hamiltonian", "--quiver", "/nonexistent/q.json"]);
    assert_eq!(code, 2);
    assert_eq!(r["checks"][0]["name"], "input");

    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"vertices\":\n [\"1\",}").unwrap();
    let (code, r) = run(&["verify", "moment", "--builtin", "hamiltonian", "--quiver", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(r["checks"][0]["residual"].as_str().unwrap().contains("line 2"));

    let (code, r) = run(&["necklace", "--quiver", &data("loop.json"), "--x", "t s", "--y", "t"]);
    assert_eq!(code, 2);
    assert!(r["checks"][0]["residual"].as_str().unwrap().contains("unknown arrow `s`"));

    let (code, _) = run_raw(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn necklace_bracket_on_the_doubled_loop() {
    let (code, r) = run(&["necklace", "--quiver", &data("loop.json"), "--x", "t t*", "--y", "t"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["value"], "- t");
}

#[test]
fn standard_form_is_bisymplectic() {
    let (code, r) = run(&["verify", "bisymplectic", "--quiver", &data("two_cycle.json")]);
    assert_eq!(code, 0, "{}", r);
    assert_eq!(statuses(&r).len(), 7);
    assert!(all_proved(&r));
}

#[test]
fn loday_and_rep_checks_pass() {
    for args in [
        vec!["verify", "loday", "--builtin", "loop-linear", "--samples", "50"],
        vec!["verify", "double-poisson", "--builtin", "loop-quadratic"],
        vec!["rep", "check", "--builtin", "one-pair", "--dims", "2,1", "--seed", "3", "--check", "moment"],
        vec!["rep", "check", "--builtin", "loop-linear", "--dims", "3", "--check", "trace"],
        vec!["rep", "check", "--quiver", &data("two_cycle.json"), "--dims", "2,1", "--check", "gauge"],
        vec!["rep", "check", "--quiver", &data("loop.json"), "--dims", "3", "--check", "lie-poisson"],
    ] {
        let (code, r) = run(&args);
        assert_eq!(code, 0, "{:?}: {}", args, r);
        assert!(all_proved(&r), "{:?}: {}", args, r);
    }
}

#[test]
fn timings_are_opt_in() {
    let args = ["verify", "quasi-poisson", "--builtin", "one-pair"];
    let (_, r) = run(&args);
    assert!(r["checks"][0].get("wall_ms").is_none());
    let (_, r) = run(&["--timings", "verify", "quasi-poisson", "--builtin", "one-pair"]);
    assert!(r["checks"][0]["wall_ms"].is_u64());
}
