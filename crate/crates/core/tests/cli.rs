use std::process::{Command, Output};

use clap::Parser;
use mirabolic::cli::{run_command, Cli, EXIT_FAILED, EXIT_OK, EXIT_SCALE, EXIT_USAGE};
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mirabolic"))
        .args(args)
        .env_remove("MIRABOLIC_MAX_WORK")
        .output()
        .unwrap()
}

fn run(args: &[&str]) -> (i32, String) {
    let cli = Cli::try_parse_from(std::iter::once("mirabolic").chain(args.iter().copied())).unwrap();
    let o = run_command(&cli);
    (o.status, o.payload)
}

#[test]
fn basis_json() {
    let (status, out) = run(&["basis", "--n", "1", "--m", "1", "--d", "1", "--output", "json"]);
    assert_eq!(status, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["elements"], serde_json::json!(["[[1]]{}", "[[1]]{(1,1)}"]));
}

#[test]
fn act_by_basis_index() {
    let (status, out) = run(&["act", "--side", "left", "--token", "L", "--n", "1", "--m", "1", "--d", "1", "--basis-index", "0"]);
    assert_eq!(status, EXIT_OK);
    assert_eq!(out.trim(), "(v^-2)*[[1]]{} + (v^-1)*[[1]]{(1,1)}");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["verify", "--profile", "desk", "--no-timings", "--output", "json"];
    let (s1, a) = run(&args);
    let (s2, b) = run(&args);
    assert_eq!((s1, s2), (EXIT_OK, EXIT_OK));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 8);
}

#[test]
fn exit_codes() {
    let ok = bin(&["dims", "--n", "2", "--m", "2", "--d", "2", "--q", "2,3"]);
    assert_eq!(ok.status.code(), Some(EXIT_OK));

    let failed = bin(&["--convention", "or-ordered", "verify", "--check", "oracle-agreement", "--no-timings"]);
    assert_eq!(failed.status.code(), Some(EXIT_FAILED));
    assert!(String::from_utf8_lossy(&failed.stdout).contains("FAIL oracle-agreement"));

    for args in [
        &["oracle-orbits", "--n", "1", "--m", "1", "--d", "1", "--q", "4"][..],
        &["act", "--side", "left", "--token", "E3", "--n", "2", "--m", "1", "--d", "1", "--basis-index", "0"],
        &["basis", "--n", "0", "--m", "1", "--d", "1"],
        &["frobnicate"],
    ] {
        assert_eq!(bin(args).status.code(), Some(EXIT_USAGE), "{args:?}");
    }

    let scale = bin(&["oracle-orbits", "--n", "2", "--m", "2", "--d", "2", "--q", "2", "--max-work", "10"]);
    assert_eq!(scale.status.code(), Some(EXIT_SCALE));
    assert!(String::from_utf8_lossy(&scale.stderr).contains("scale exceeded"));
}

#[test]
fn work_budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_mirabolic"))
        .args(["oracle-orbits", "--n", "2", "--m", "2", "--d", "2", "--q", "2"])
        .env("MIRABOLIC_MAX_WORK", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_SCALE));
}

#[test]
fn json_errors_go_to_stdout() {
    let out = bin(&["act", "--side", "left", "--token", "E3", "--n", "2", "--m", "1", "--d", "1", "--basis-index", "0", "--output", "json"]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["error"].as_str().unwrap().contains("E3"));
}

#[test]
fn oracle_check_and_relations() {
    let (s, out) = run(&["oracle-check", "--n", "2", "--m", "2", "--d", "2", "--q", "2", "--seed", "7", "--samples", "20"]);
    assert_eq!(s, EXIT_OK, "{out}");
    let (s, out) = run(&["relations", "--n", "2", "--m", "2", "--d", "2", "--side", "right"]);
    assert_eq!(s, EXIT_OK, "{out}");
    let (s, out) = run(&["bimodule", "--n", "2", "--m", "1", "--d", "1"]);
    assert_eq!(s, EXIT_OK, "{out}");
}

#[test]
fn desk_check_refuses_large_contexts() {
    let (s, _) = run(&["centralizer", "--n", "4", "--m", "4", "--d", "4"]);
    assert_eq!(s, EXIT_SCALE);
}
