use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn regcore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regcore")).args(args).output().expect("run regcore")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn worked_example(dir: &TempDir) -> PathBuf {
    write(dir, "i.json", &json!({"field": "Q", "gens": ["x^3", "x*y", "y^2"]}))
}

#[test]
fn closure_of_the_worked_example() {
    let dir = TempDir::new().unwrap();
    let i = worked_example(&dir);
    let v = stdout_json(&regcore(&["closure", "--ideal", s(&i)]));
    assert_eq!(v["exact"], json!(true));
    assert_eq!(v["closure"]["gens"], json!(["x^3", "x*y", "y^2"]));
    assert_eq!(v["closure"]["colength"], json!(4));
}

#[test]
fn adjoint_by_both_methods() {
    let dir = TempDir::new().unwrap();
    let i = worked_example(&dir);
    let v = stdout_json(&regcore(&["adjoint", "--ideal", s(&i), "--method", "both"]));
    assert_eq!(v["agreement"], json!(true));
    assert_eq!(v["colon"]["gens"], json!(["x", "y"]));
    assert_eq!(v["howald"]["gens"], json!(["x", "y"]));
}

#[test]
fn core_fitting_and_multiplicities() {
    let dir = TempDir::new().unwrap();
    let i = worked_example(&dir);
    let core = stdout_json(&regcore(&["core", "--ideal", s(&i)]));
    assert_eq!(core["generators"], json!([["x^4"], ["x^2*y"], ["x*y^2"], ["y^3"]]));

    let a = write(&dir, "a.json", &json!({"field": "Q", "presentation": [["y", "0"], ["-x^2", "y"], ["0", "-x"]]}));
    let i2 = stdout_json(&regcore(&["fitting", "--presentation", s(&a), "--k", "2"]));
    assert_eq!(i2["gens"], json!(["x^3", "x*y", "y^2"]));
    let i1 = stdout_json(&regcore(&["fitting", "--presentation", s(&a), "--k", "1"]));
    assert_eq!(i1["gens"], json!(["x", "y"]));

    let e = stdout_json(&regcore(&["mult", "--ideal", s(&i)]));
    assert_eq!(e["multiplicity"], json!(5));
    assert_eq!(e["reduction"], e["differences"]);

    let mm = write(&dir, "m.json", &json!({"field": "Q", "rank": 2, "generators": [["x", "0"], ["y", "0"], ["0", "x"], ["0", "y"]]}));
    assert_eq!(stdout_json(&regcore(&["br", "--module", s(&mm)]))["multiplicity"], json!(3));
}

#[test]
fn reduction_reports_a_certificate() {
    let dir = TempDir::new().unwrap();
    let i = worked_example(&dir);
    let v = stdout_json(&regcore(&["reduction", "--ideal", s(&i)]));
    assert_eq!(v["reduction"]["colength"], json!(5));
    assert_eq!(v["lhs_colength"], v["rhs_colength"]);
    assert_eq!(v["seed"], json!(42));
}

#[test]
fn emitted_ideals_are_valid_input() {
    let dir = TempDir::new().unwrap();
    let i = write(&dir, "i.json", &json!({"field": "F65537", "gens": ["x^4", "y^3"]}));
    let closed = stdout_json(&regcore(&["closure", "--ideal", s(&i)]))["closure"].clone();
    let back = write(&dir, "closed.json", &closed);
    let again = stdout_json(&regcore(&["closure", "--ideal", s(&back)]));
    assert_eq!(again["closure"], closed);
    assert_eq!(closed["field"], json!("F65537"));
}

#[test]
fn out_flag_writes_the_file() {
    let dir = TempDir::new().unwrap();
    let i = worked_example(&dir);
    let out = dir.path().join("result.json");
    let run = regcore(&["mult", "--ideal", s(&i), "--out", s(&out)]);
    assert!(run.status.success());
    assert!(run.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["multiplicity"], json!(5));
}

#[test]
fn text_format_draws_the_staircase() {
    let dir = TempDir::new().unwrap();
    let i = worked_example(&dir);
    let run = regcore(&["closure", "--ideal", s(&i), "--format", "text"]);
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.contains("n0 = 3, colength = 4"), "{text}");
}

fn exit_code(args: &[&str]) -> (i32, String) {
    let out = regcore(args);
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let i = worked_example(&dir);
    let principal = write(&dir, "x2.json", &json!({"field": "Q", "gens": ["x^2"]}));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{oops").unwrap();

    let (code, err) = exit_code(&["closure", "--ideal", s(&principal)]);
    assert_eq!(code, 1);
    assert!(err.contains("ideal is not m-primary"), "{err}");

    assert_eq!(exit_code(&["closure", "--ideal", s(&bad)]).0, 2);
    assert_eq!(exit_code(&["closure", "--ideal", s(&dir.path().join("missing.json"))]).0, 2);
    assert_eq!(exit_code(&["closure", "--ideal", s(&i), "--field", "F65537"]).0, 2);
    assert_eq!(exit_code(&["closure", "--ideal", s(&i), "--ceiling", "1"]).0, 2);
    assert_eq!(exit_code(&["frobnicate"]).0, 2);
    assert_eq!(exit_code(&["verify", "--family", "nonsense", "--count", "0"]).0, 2);
    assert_eq!(exit_code(&["verify", "--family", "counterexamples", "--count", "0"]).0, 0);
}
