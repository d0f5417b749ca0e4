//! End-to-end runs of the binary: JSON payload shapes and the 0/1/2 exit
//! code contract.

use serde_json::Value;
use std::process::{Command, Output};

fn hallmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hallmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({}): {}",
            e,
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn group_reports_order_and_generators() {
    let out = hallmap(&["group", "alt:5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["degree"], 5);
    assert_eq!(v["order"], "60");
    assert!(v["generators"].as_array().unwrap().len() >= 2);
}

#[test]
fn factorize_certifies_the_singer_complement() {
    let out = hallmap(&["factorize", "--group", "psl:3,2", "--sub", "stab:0", "--k", "singer"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["hall"], true);
    assert_eq!(v["core_free"], true);
    assert_eq!(v["h_order"], "24");
    assert_eq!(v["k_order"], 7);
}

#[test]
fn factorize_rejects_a_bad_complement_with_exit_one() {
    let out = hallmap(&["factorize", "--group", "sym:4", "--sub", "stab:0", "--k", "(1,2,3)"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["ok"], false);
    assert!(v["reason"].as_str().unwrap().contains("24"));
}

#[test]
fn factorize_reports_shapes() {
    let out = hallmap(&["factorize", "--group", "sym:4", "--sub", "d8", "--k", "(1,2,3)", "--shape"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["shape"]["shape"], 1);
    assert_eq!(v["shape"]["core_order"], "4");
}

#[test]
fn skew_derives_the_order_three_morphism() {
    let out = hallmap(&["skew", "--H", "d8", "--via", "sym:4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["order"], 3);
    assert_eq!(v["trivial"], false);
    assert_eq!(v["hall"], true);
}

#[test]
fn map_census_matches_the_sphere() {
    let out = hallmap(&["map", "rota", "--group", "alt:5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["V"], 12);
    assert_eq!(v["E"], 30);
    assert_eq!(v["F"], 20);
    assert_eq!(v["chi"], 2);
    assert_eq!(v["genus"], 0);
}

#[test]
fn map_graph_dot_output() {
    let out = hallmap(&["map", "graph", "--group", "sym:3", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph cosets {"));
    assert!(text.contains("0 -- 1;"));
}

#[test]
fn numth_rejects_violated_hypotheses_with_exit_two() {
    let out = hallmap(&["numth", "gcd", "3", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("gcd(3, 4-1)"));
}

#[test]
fn numth_checked_false_exits_one() {
    let out = hallmap(&["numth", "solvable", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["admissible"], false);
}

#[test]
fn numth_family_passes() {
    let out = hallmap(&["numth", "family", "2", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["family"], serde_json::json!([5, 7]));
}

#[test]
fn verify_suite_reports_items() {
    let out = hallmap(&["verify", "lemma21"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["items"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_unknown_suite_exits_two() {
    let out = hallmap(&["verify", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_arguments_exit_two() {
    let out = hallmap(&["map", "rota", "--group", "alt:5", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}
