use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitdh")).args(args).output().expect("spawn orbitdh")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid json");
    assert_eq!(v["schema"], "orbitdh/1");
    v
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn density_example() {
    let v = run_json(&["density", "--type", "A2", "--lambda", "1,1", "--mu", "0,0", "--out", "json"]);
    assert_eq!(v["result"], json!({"num": "1", "den": "1"}));
}

#[test]
fn partition_example() {
    let v = run_json(&["partition", "--type", "A2", "--x", "1,1", "--out", "json"]);
    assert_eq!(v["result"], "2");
}

#[test]
fn su2_convergence_is_rejected() {
    let out = run(&["converge", "--type", "A1", "--lambda", "3", "--mu", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("A1") && err.contains("hypothesis"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn validation_errors_exit_2() {
    assert_eq!(code(&["density", "--type", "A2", "--lambda", "1/0,1", "--mu", "0,0"]), 2);
    assert_eq!(code(&["density", "--type", "A2", "--lambda", "a,1", "--mu", "0,0"]), 2);
    assert_eq!(code(&["density", "--type", "A2", "--lambda", "1,1", "--mu", "0,0", "--bogus"]), 2);
    assert_eq!(code(&["density", "--type", "E9", "--lambda", "1,1", "--mu", "0,0"]), 2);
    assert_eq!(code(&["density", "--type", "A2", "--lambda", "0,1", "--mu", "0,0"]), 2);
    assert_eq!(code(&["density", "--type", "A2", "--lambda", "1,1,1", "--mu", "0,0"]), 2);
    assert_eq!(code(&["grid", "--type", "A3", "--lambda", "1,1,1"]), 2);
    assert_eq!(code(&["sample-orbit", "--type", "B2", "--lambda", "1,1"]), 2);
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn negative_and_fractional_coordinates() {
    let v = run_json(&["density", "--type", "A2", "--lambda", "2,1", "--mu", "-1/2,1/3"]);
    assert_eq!(v["mu"][0], json!({"num": "-1", "den": "2"}));
    assert_eq!(v["hull"], "interior");
    assert_eq!(v["on_wall"], false);
}

#[test]
fn grid_csv_has_resolution_squared_rows() {
    let out = run(&["grid", "--type", "A2", "--lambda", "2,1", "--grid-resolution", "7", "--out", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "mu_0,mu_1,density,density_exact");
    assert_eq!(lines.len(), 49 + 1);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 4));
    let v = run_json(&["grid", "--type", "A2", "--lambda", "2,1", "--grid-resolution", "7"]);
    assert_eq!(v["result"].as_array().unwrap().len(), 49);
}

#[test]
fn every_subcommand_emits_json() {
    let cases: [&[&str]; 11] = [
        &["roots", "--type", "G2"],
        &["weyl", "--type", "B2"],
        &["partition", "--type", "B2", "--x", "2,3"],
        &["volume", "--type", "B2", "--x", "2,3"],
        &["density", "--type", "G2", "--lambda", "1,1", "--mu", "1,0"],
        &["multiplicity", "--type", "A2", "--lambda", "1,0", "--mu", "0,-1"],
        &["support", "--type", "A2", "--lambda", "1,1"],
        &["converge", "--type", "A2", "--lambda", "2,1", "--mu", "1,0", "--k-list", "2,4,8"],
        &["grid", "--type", "B2", "--lambda", "1,1", "--grid-resolution", "3"],
        &["sample-orbit", "--type", "A1", "--lambda", "2", "--samples", "1000", "--bins", "5"],
        &["pfaffian-check", "--type", "A3", "--lambda", "1,2,1"],
    ];
    for args in cases {
        let v = run_json(args);
        assert_eq!(v["command"], args[0]);
        assert!(!v["result"].is_null(), "{args:?}");
    }
}

#[test]
fn spot_values() {
    assert_eq!(run_json(&["volume", "--type", "B2", "--x", "2,3"])["result"], json!({"num": "7", "den": "4"}));
    assert_eq!(run_json(&["multiplicity", "--type", "A2", "--lambda", "1,1", "--mu", "0,0"])["result"], "2");
    let support = run_json(&["support", "--type", "A2", "--lambda", "1,1"]);
    assert_eq!(support["result"]["dimension"], "8");
    assert_eq!(support["result"]["weights"].as_array().unwrap().len(), 7);
    let w = run_json(&["weyl", "--type", "G2"]);
    assert_eq!(w["result"]["order"], 12);
    let pf = run_json(&["pfaffian-check", "--type", "G2", "--lambda", "1,2"]);
    assert_eq!(pf["result"]["all_agree"], true);
    let c = run_json(&["converge", "--type", "A2", "--lambda", "1,1", "--mu", "0,0", "--k-max", "8"]);
    assert_eq!(c["result"]["rows"][7]["multiplicity"], "9");
    assert_eq!(c["result"]["on_wall"], true);
}

#[test]
fn csv_outputs() {
    let out = run(&["sample-orbit", "--type", "A2", "--lambda", "1,1", "--samples", "500", "--bins", "4", "--out", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 17);
    let out = run(&["converge", "--type", "A2", "--lambda", "1,1", "--mu", "0,0", "--k-max", "4", "--out", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(2).unwrap(), "2,3,3/2,1,1/2,0.5");
}

#[test]
fn seeds_are_reproducible() {
    let args = ["sample-orbit", "--type", "A1", "--lambda", "1", "--samples", "2000", "--bins", "6", "--seed", "17"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let other = ["sample-orbit", "--type", "A1", "--lambda", "1", "--samples", "2000", "--bins", "6", "--seed", "18"];
    assert_ne!(run(&args).stdout, run(&other).stdout);
}
