use std::process::{Command, Output};

use serde_json::Value;

fn detvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_detvar"))
        .args(args)
        .env_remove("DETVAR_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = detvar(&all);
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn tilt_grass_report() {
    let v = json(&["check-tilt-grass", "--l", "2", "--m", "4"]);
    assert_eq!(v["tool"], "detvar");
    assert_eq!(v["subcommand"], "check-tilt-grass");
    assert_eq!(v["pass"], true);
    // 6 summands on Grass(2,4), ordered pairs
    assert_eq!(v["cases"].as_array().unwrap().len(), 36);
}

#[test]
fn mcm_single_alpha() {
    let out = detvar(&["check-mcm", "--m", "2", "--n", "3", "--l", "1", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&["check-mcm", "--m", "2", "--n", "3", "--l", "1", "--alpha", "1"]);
    assert_eq!(v["cases"][0]["pd"], 2);
    assert_eq!(v["pass"], true);
}

#[test]
fn lr_text() {
    let out = detvar(&["lr", "--a", "1", "--b", "1"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("{(2):1,(1,1):1}"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(detvar(&["check-mcm", "--bogus"]).status.code(), Some(2));
    assert_eq!(detvar(&["check-mcm", "--m", "2", "--n", "3", "--l", "2"]).status.code(), Some(2));
    assert_eq!(detvar(&["check-mcm", "--m", "2", "--n", "3", "--l", "1", "--char", "4"]).status.code(), Some(2));
    assert_eq!(detvar(&["bott", "--l", "2", "--m", "4", "--x", "1,0", "--y", "0,0", "--char", "7"]).status.code(), Some(2));
    assert_eq!(detvar(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_reproducible() {
    let args = ["--json", "--char", "32003", "check-mcm", "--m", "3", "--n", "4", "--l", "2"];
    assert_eq!(detvar(&args).stdout, detvar(&args).stdout);
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_detvar"))
        .args(["--json", "check-mcm", "--m", "2", "--n", "2", "--l", "1"])
        .env("DETVAR_SEED", "99")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 99);
    assert_eq!(json(&["check-mcm", "--m", "2", "--n", "2", "--l", "1"])["seed"], 1729);
}

#[test]
fn dump_then_resolve() {
    let path = std::env::temp_dir().join(format!("detvar-dump-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = detvar(&["build-talpha", "--m", "3", "--n", "3", "--l", "1", "--alpha", "1", "--dump", p]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&["resolve", "--load", p]);
    std::fs::remove_file(&path).ok();
    let direct = json(&["resolve", "--m", "3", "--n", "3", "--l", "1", "--alpha", "1"]);
    assert_eq!(v["cases"][0]["betti"], direct["cases"][0]["betti"]);
    assert_eq!(v["cases"][0]["projective_dimension"], 4);
}

#[test]
fn injected_fault_fails() {
    let out = detvar(&["--inject-fault", "check-mcm", "--m", "2", "--n", "2", "--l", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn non_split_expression_vanishes() {
    let v = json(&["bott", "--l", "2", "--m", "4", "--expr", "wedge_q_dual:2,sym_q:2"]);
    assert_eq!(v["pass"], true);
}
