use std::process::{Command, Output};

use serde_json::Value;

fn altcenter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altcenter")).args(args).env_remove("ALTCENTER_CACHE_DIR").output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = altcenter(&all);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().unwrap())
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &Value) {
    let s = schema();
    let errors: Vec<String> = s.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{v:#}");
}

#[test]
fn check_identity_two() {
    let (v, code) = json(&["check", "--expr", "J(a,b,c) - 6*(a,b,c)"]);
    assert_eq!(code, 0);
    assert_eq!(v["overall"], "pass");
    assert_valid(&v);
}

#[test]
fn check_associator_fails_with_witness() {
    let (v, code) = json(&["check", "--expr", "(a,b,c)"]);
    assert_eq!(code, 1);
    assert_eq!(v["checks"][0]["status"], "fail");
    assert!(v["checks"][0]["witness"].as_str().unwrap().contains('c'));
    assert_valid(&v);
}

#[test]
fn check_trivial_and_super() {
    assert_eq!(json(&["check", "--expr", "[a,b] + [b,a]"]).1, 0);
    assert_eq!(json(&["check", "--expr", "(x,y,a) - (y,x,a)", "--odd", "x,y"]).1, 0);
    assert_eq!(json(&["check", "--expr", "(x,y,a) + (y,x,a)", "--odd", "x,y"]).1, 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(altcenter(&["check", "--expr", "(a,b"]).status.code(), Some(2));
    assert_eq!(altcenter(&["check", "--expr", "(a,b,c) d e f g"]).status.code(), Some(2));
    assert_eq!(altcenter(&["reproduce", "nope"]).status.code(), Some(2));
    assert_eq!(altcenter(&["eval", "--expr", "a", "--algebra", "sedenion"]).status.code(), Some(2));
    assert_eq!(altcenter(&["eval", "--expr", "a b", "--assign", "a=1"]).status.code(), Some(2));
    assert_eq!(altcenter(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn eval_at_explicit_assignment() {
    let (v, code) = json(&["eval", "--expr", "[v1, w1]", "--assign", "v1=v1,w1=w1"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["witness"], "-1 + 2*e");
    assert_eq!(v["input"]["assignment"]["v1"], "v1");
    assert_valid(&v);
    let (v, _) = json(&["eval", "--expr", "0"]);
    assert_eq!(v["checks"][0]["witness"], "0");
}

#[test]
fn eval_is_deterministic() {
    let a = altcenter(&["eval", "--expr", "(a,b,c)^2", "--seed", "5", "--format", "json"]);
    let b = altcenter(&["eval", "--expr", "(a,b,c)^2", "--seed", "5", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let c = altcenter(&["eval", "--expr", "(a,b,c)^2", "--seed", "6", "--format", "json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn eval_super_parity_is_enforced() {
    let out = altcenter(&["eval", "--expr", "x x", "--odd", "x", "--algebra", "medvedev:1", "--assign", "x=v0"]);
    assert_eq!(out.status.code(), Some(2));
    let (v, code) = json(&["eval", "--expr", "x x", "--odd", "x", "--algebra", "medvedev:1", "--assign", "x=x"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["witness"], "0");
}

#[test]
fn dims_small_degrees() {
    let (v, code) = json(&["dims", "--degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["witness"], "12");
    assert_eq!(v["checks"][2]["witness"], "7");
    assert_valid(&v);
    assert_eq!(altcenter(&["dims", "--degree", "7"]).status.code(), Some(2));
}

#[test]
fn reproduce_cap_semantics_and_stability() {
    let args = ["reproduce", "identities", "--degree-cap", "4", "--format", "json"];
    let first = altcenter(&args);
    assert_eq!(first.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_valid(&v);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["status"] == "skipped"));
    assert!(checks.iter().all(|c| c["status"] != "fail"));
    let second = altcenter(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn reproduce_u_small_and_ms_table() {
    let (v, code) = json(&["reproduce", "ms-table"]);
    assert_eq!(code, 0, "{v:#}");
    assert_valid(&v);
}

#[test]
fn reproduce_prop5_reports_its_value() {
    let (v, _) = json(&["reproduce", "prop5-s", "--k", "1"]);
    assert_valid(&v);
    assert_eq!(v["seed"], 1);
    assert_eq!(v["input"]["k"], 1);
    assert!(v["checks"][0]["witness"].is_string());
}

#[test]
fn listings() {
    for what in ["targets", "algebras", "catalog", "identities"] {
        let out = altcenter(&["list", what]);
        assert_eq!(out.status.code(), Some(0));
        assert!(!out.stdout.is_empty());
    }
    let out = altcenter(&["list", "catalog", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().any(|e| e["name"] == "u4"));
}
