use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tamaripop"))
        .args(args)
        .env_remove("TAMARIPOP_MAX_ELL")
        .output()
        .expect("binary runs")
}

fn json_out(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn enum_lists_catalan_many_records() {
    let out = run(&["enum", "--n", "3"]);
    assert!(out.status.success());
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0]["path"], "NENENE");
    let out = run(&["enum", "--nu", "NE"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn enum_refuses_large_inputs() {
    let out = run(&["enum", "--n", "20"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn env_var_lowers_the_bound() {
    let out = Command::new(env!("CARGO_BIN_EXE_tamaripop"))
        .args(["enum", "--n", "3"])
        .env("TAMARIPOP_MAX_ELL", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let forced = Command::new(env!("CARGO_BIN_EXE_tamaripop"))
        .args(["enum", "--n", "3", "--force"])
        .env("TAMARIPOP_MAX_ELL", "4")
        .output()
        .unwrap();
    assert!(forced.status.success());
}

#[test]
fn pop_trajectories() {
    let v = json_out(&["pop", "--perm", "321"]);
    assert_eq!(v["trajectory"], json!([[3, 2, 1], [1, 2, 3]]));
    assert_eq!(v["sortability_time"], 1);
    let v = json_out(&["pop", "--vector", "0,0,1,1,2,2", "--nu", "ENENE"]);
    assert_eq!(v["sortability_time"], 0);
    let v = json_out(&["pop", "--vector", "2,0,1,1,2,2", "--nu", "ENENE", "--trace"]);
    assert_eq!(v["sortability_time"], 2);
    assert_eq!(v["trajectory"][1], json!([1, 0, 1, 1, 2, 2]));
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
    // E(NE)^2 is inferred from the length
    assert_eq!(json_out(&["pop", "--vector", "2,0,1,1,2,2"])["nu"], "ENENE");
}

#[test]
fn pop_rejects_bad_input() {
    assert_eq!(run(&["pop", "--vector", "1,0,2,1,2,2", "--nu", "ENENE"]).status.code(), Some(2));
    assert_eq!(run(&["pop", "--perm", "312"]).status.code(), Some(2));
    assert_eq!(run(&["pop", "--perm", "112"]).status.code(), Some(2));
    assert_eq!(run(&["pop"]).status.code(), Some(2));
}

#[test]
fn tables() {
    assert_eq!(
        json_out(&["series", "--t", "2", "--terms", "6"]),
        json!(["1", "2", "5", "12", "29", "70"])
    );
    let v = json_out(&["image", "--n", "3", "--qpoly"]);
    assert_eq!(v["size"], 2);
    assert_eq!(v["motzkin"], 2);
    assert_eq!(v["qpoly"], json!({"1": 1, "2": 1}));
    assert_eq!(v["formula"], json!({"1": "1", "2": "1"}));
    assert_eq!(json_out(&["sortable", "--n", "3", "--t", "1"])["count"], 4);
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "--suite", "theorem-1", "--max-n", "9", "--max-t", "4"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
    let names: Vec<&str> = v["reports"][0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn verify_all_small() {
    let v = json_out(&["verify", "--suite", "all", "--max-n", "5", "--max-t", "3", "--seed", "11"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 9);
}

#[test]
fn verify_unknown_suite_is_a_usage_error() {
    let out = run(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}
