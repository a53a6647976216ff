//! End-to-end tests of the compiled binary: flag parsing, report content,
//! exit codes, and output determinism.

use serde_json::Value;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_levi-slope"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_gl6_degree_two() {
    let out = run(&["analyze", "--gl", "6", "--degree-lift", "0,0,0,0,0,2"]);
    let v = stdout_json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["group"]["name"], "GL6");
    assert_eq!(v["minimal_parabolic"]["nodes"], serde_json::json!([1, 2, 4, 5]));
    assert_eq!(v["minimal_parabolic"]["levi_type"], "A2 x A2");
    assert_eq!(v["minimal_parabolic"]["gl_block_degrees"], serde_json::json!([1, 1]));
    assert_eq!(v["relative_weyl"]["label"], "A1");
    assert_eq!(v["relative_weyl"]["order"], "2");
    assert_eq!(v["relative_weyl"]["fixes_degree"], true);
    assert_eq!(v["stability"]["exists_stable"], false);
    let slope: Vec<&str> =
        v["slope"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(slope, vec!["1/3"; 6]);
}

#[test]
fn analyze_degree_flag_means_k_times_e_n_for_gl() {
    // --degree k and the explicit lift k*e_n give identical reports.
    let a = run(&["analyze", "--gl", "6", "--degree", "2"]);
    let b = run(&["analyze", "--gl", "6", "--degree-lift", "0,0,0,0,0,2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_gl1_degree_seven_is_stable() {
    let out = run(&["analyze", "--gl", "1", "--degree", "7"]);
    let v = stdout_json(&out);
    assert_eq!(v["minimal_parabolic"]["is_full_group"], true);
    assert_eq!(v["stability"]["exists_stable"], true);
}

#[test]
fn analyze_adjoint_e7_matches_table_row() {
    // The nontrivial class of adjoint E_7 (the simply connected form has a
    // trivial component group, hence no nonzero class to analyze).
    let out = run(&["analyze", "--simple", "E7", "--degree", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["minimal_parabolic"]["levi_type"], "A1 x A1 x A1");
    assert_eq!(v["relative_weyl"]["label"], "F4");
    assert_eq!(v["relative_weyl"]["order"], "1152");
    assert_eq!(v["stability"]["exists_stable"], false);
}

#[test]
fn analyze_product_and_isogeny_flags() {
    let out = run(&[
        "analyze",
        "--product",
        "GL3,A2:sc",
        "--degree-lift",
        "0,0,1,0,0",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["group"]["name"], "GL3 x A2 (sc)");
    assert_eq!(v["group"]["lattice_rank"], 5);
}

#[test]
fn analyze_datum_json_builders() {
    let dir = std::env::temp_dir();
    let path = dir.join("levi_slope_test_datum.json");
    std::fs::write(
        &path,
        r#"{ "builder": "explicit",
             "coroots": [[1, -1], [0, 1]],
             "roots": [[1, -1], [-1, 2]] }"#,
    )
    .unwrap();
    let out = run(&[
        "analyze",
        "--datum-json",
        path.to_str().unwrap(),
        "--degree-lift",
        "1,0",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["group"]["num_simple_roots"], 2);
    std::fs::remove_file(&path).ok();
}

#[test]
fn exit_two_on_bad_input() {
    // Wrong lift length.
    let out = run(&["analyze", "--gl", "6", "--degree-lift", "1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown family letter.
    let out = run(&["analyze", "--simple", "Z9", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // Missing degree entirely (usage error from the parser).
    let out = run(&["analyze", "--gl", "3"]);
    assert_eq!(out.status.code(), Some(2));
    // Unparseable lift entry.
    let out = run(&["analyze", "--gl", "2", "--degree-lift", "1,x"]);
    assert_eq!(out.status.code(), Some(2));
    // --degree on a datum with no single natural generator.
    let out = run(&["analyze", "--simple", "D4", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_three_on_resource_cap() {
    let out = run(&["analyze", "--simple", "D9", "--degree", "1", "--orbit-cap", "1000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_are_byte_stable() {
    let a = run(&["analyze", "--simple", "E6", "--degree", "1"]);
    let b = run(&["analyze", "--simple", "E6", "--degree", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["table", "--families", "A,B,C,D", "--max-rank", "5", "--format", "json"]);
    let b = run(&["table", "--families", "A,B,C,D", "--max-rank", "5", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timings_flag_adds_the_only_unstable_field() {
    let out = run(&["analyze", "--gl", "2", "--degree", "1", "--timings"]);
    let v = stdout_json(&out);
    assert!(v["timing_ms"].is_number());
    let out = run(&["analyze", "--gl", "2", "--degree", "1"]);
    let v = stdout_json(&out);
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn table_checks_against_expected_rows() {
    let out = run(&["table", "--families", "A,B,C,D", "--max-rank", "5", "--check"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    // Spot checks against the closed-form rows.
    assert!(text.contains("| B4 | (1) | [4] | A1 | C3 | 48 |"), "got:\n{text}");
    assert!(text.contains("| D5 | (2) | [4, 5] | A1 x A1 | C3 | 48 |"), "got:\n{text}");
}

#[test]
fn verify_passes_clean_and_fails_with_injected_fault() {
    let out = run(&["verify", "--max-rank", "3"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("verify output is JSON");
    assert_eq!(v["schema"], 1);
    assert!(v["failures"].as_array().unwrap().is_empty());
    assert!(v["sweeps"].as_array().unwrap().len() == 6);

    let out = run(&["verify", "--max-rank", "3", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).expect("failing output is JSON");
    let failures = v["failures"].as_array().unwrap();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0]["sweep"], "oracle_equivalence");
    assert!(failures[0]["detail"].as_str().unwrap().contains("disagree"));
}

#[test]
fn latex_and_markdown_render() {
    let out = run(&["analyze", "--simple", "B4", "--degree", "1", "--format", "latex"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\\begin{tabular}"));
    assert!(text.contains("C_{3}"));
    let out = run(&["table", "--families", "B", "--max-rank", "4", "--format", "latex"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("$W_{M,G}$"));
}
