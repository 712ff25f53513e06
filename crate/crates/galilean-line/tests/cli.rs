//! Command-line behaviour: exit codes, determinism, config layering and
//! output formats.

use std::io::Write as _;
use std::process::{Command, Output};

use galilean_line::cli::{run_with, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

fn glg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glg")).args(args).env_remove("GLG_CONFIG").output().unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let full: Vec<&str> = std::iter::once("glg").chain(args.iter().copied()).collect();
    let code = run_with(full, None, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_path(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("glg-test-{}-{name}", std::process::id()))
}

#[test]
fn passing_suite_exits_zero_with_canonical_json() {
    let (code, out, _) = run(&["verify", "generators"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["suite"], "generators");
    assert!(!out.contains(": "), "canonical json has no whitespace");
}

#[test]
fn reruns_are_byte_identical() {
    let a = glg(&["--trials", "5", "verify", "extension"]);
    let b = glg(&["--trials", "5", "verify", "extension"]);
    assert_eq!(a.status.code(), Some(EXIT_PASS));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn failing_checks_exit_one() {
    let (code, out, _) = run(&["obstruction", "--n-max", "3"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains(r#""pass":false"#));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "nonsense"]).0, EXIT_USAGE);
    assert_eq!(run(&["--order", "1", "verify", "group"]).0, EXIT_USAGE);
    assert_eq!(run(&["--format", "xml", "verify", "group"]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["semigroup", "inverse", "--profile", "nope"]).0, EXIT_USAGE);
    let (code, out, err) = run(&["--config", "/nonexistent/glg.conf", "verify", "group"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(!err.is_empty());
    assert_eq!(run(&["--help"]).0, EXIT_PASS);
}

#[test]
fn csv_has_one_row_per_check() {
    let (_, json, _) = run(&["verify", "generators"]);
    let (code, csv, _) = run(&["--format", "csv", "verify", "generators"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let n = v["checks"].as_array().unwrap().len();
    assert_eq!(csv.lines().count(), n + 1);
    assert!(csv.starts_with("suite,name,relation,residual,criterion,pass\n"));
}

#[test]
fn config_file_from_environment_and_flag_precedence() {
    let path = temp_path("env.conf");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# test config\nseed = 7\nformat = csv").unwrap();
    drop(f);
    let via_env = Command::new(env!("CARGO_BIN_EXE_glg"))
        .args(["obstruction", "--n-max", "2"])
        .env("GLG_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(via_env.status.code(), Some(EXIT_PASS));
    assert!(String::from_utf8_lossy(&via_env.stdout).starts_with("suite,"));
    let overridden = Command::new(env!("CARGO_BIN_EXE_glg"))
        .args(["--format", "json", "obstruction", "--n-max", "2"])
        .env("GLG_CONFIG", &path)
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&overridden.stdout).unwrap();
    assert_eq!(v["metadata"]["seed"], 7);
    std::fs::remove_file(&path).ok();
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let path = temp_path("report.json");
    let (code, out, _) = run(&["--out", path.to_str().unwrap(), "obstruction", "--n-max", "2"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with(r#"{"checks":"#));
    std::fs::remove_file(&path).ok();
}

#[test]
fn equivalence_simulation_modes() {
    let csv = temp_path("eq.csv");
    let csv_s = csv.to_str().unwrap();
    let base = ["simulate", "equivalence", "--steps", "200", "--outputs", "4"];
    let mut args: Vec<&str> = vec!["--out", csv_s];
    args.extend(base);
    let (code, out, _) = run(&args);
    assert_eq!(code, EXIT_PASS, "{out}");
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), 5);
    assert!(rows.starts_with("b,fidelity,normA,normB,fidelity_unaligned\n"));

    let mut mismatch = args.clone();
    mismatch.extend(["--mg", "1.2"]);
    let (code, out, _) = run(&mismatch);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("equivalence_violated"));
    mismatch.extend(["--mode", "assert"]);
    assert_eq!(run(&mismatch).0, EXIT_FAIL);
    std::fs::remove_file(&csv).ok();
}

#[test]
fn semigroup_inverse_reports_residuals() {
    let (code, out, _) = run(&["--degree", "3", "semigroup", "inverse", "--profile", "spacetime_shift"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["residual_by_degree"].as_array().unwrap().len(), 4);
}
