use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cremer-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn payload(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).expect("json report");
    assert_eq!(report["schema_version"], "1");
    assert_eq!(report["command"], args[0]);
    report["payload"].clone()
}

fn labels(v: &Value) -> Vec<String> {
    v.as_array()
        .expect("array")
        .iter()
        .map(|e| e.as_str().expect("string").to_string())
        .collect()
}

#[test]
fn string_reproduces_worked_examples() {
    let x = payload(&["string", "--word", "011", "--count", "3"]);
    assert_eq!(labels(&x["elements"]), ["01*", "01101*", "01101101*"]);
    assert_eq!(x["basic_length"], 1);
    let z = payload(&["string", "--word", "0110111", "--count", "3"]);
    assert_eq!(labels(&z["elements"]), ["01*", "01101*", "011011101*"]);
    assert_eq!(z["basic_length"], 2);
}

#[test]
fn plan_matches_figure3_report() {
    let plan = payload(&["plan", "--u", "011", "--v", "0110111"]);
    assert_eq!(plan["m"], 2);
    assert_eq!(plan["n"], 32);
    assert_eq!(plan["last_common"], "01101*");
    let report = payload(&["figure3-report", "--leaf-depth", "7", "--ray-depth", "40"]);
    assert_eq!(report["plan"], plan);
}

#[test]
fn pullback_tree_json_and_graph() {
    let tree = payload(&["pullback-tree", "--n", "4"]);
    assert_eq!(tree["nodes"].as_array().unwrap().len(), 16);
    assert_eq!(tree["edges"].as_array().unwrap().len(), 15);

    let out = run(&["pullback-tree", "--n", "2", "--format", "graph"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut edges: Vec<[&str; 2]> = text
        .lines()
        .map(|l| {
            let (a, b) = l.split_once(" -- ").expect("edge line");
            let mut e = [a.trim_matches('"'), b.trim_matches('"')];
            e.sort_unstable();
            e
        })
        .collect();
    edges.sort_unstable();
    assert_eq!(edges, [["001*", "01*"], ["01*", "1*"], ["1*", "101*"]]);
}

#[test]
fn figure2_layout_joins_the_common_pullbacks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a5.gv");
    let out = run(&["figure2-layout", "--n", "5", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 31);
    assert!(text.lines().any(|l| l == r#""01*" -- "01101*""# || l == r#""01101*" -- "01*""#));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["string", "--word", "01a"]).status.code(), Some(1));

    let out = run(&["string", "--word", "111"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "NoZeros");

    let out = run(&["rotation-set", "--p", "2", "--q", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "InvalidRotation");
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cremer-lab"))
        .args(["rotation-set", "--p", "1", "--q", "12"])
        .env("CREMER_LAB_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "DepthTooLarge");
}

#[test]
fn rotation_set_methods_agree() {
    let brute = payload(&["rotation-set", "--p", "2", "--q", "3"]);
    let sturm = payload(&["rotation-set", "--p", "2", "--q", "3", "--method", "sturmian"]);
    assert_eq!(brute, sturm);
    assert_eq!(labels(&brute["orbit"]), ["3/7", "5/7", "6/7"]);
}
