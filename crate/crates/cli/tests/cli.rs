use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_koszulkit"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../harness/fixtures").join(name)
}

fn run_with_stdin(args: &[&str], stdin: &Value) -> Output {
    let mut child =
        bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.to_string().as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn snf_from_stdin() {
    let o = run_with_stdin(&["snf"], &json!({ "entries": [[2, 4], [6, 8]] }));
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["result"]["divisors"], json!([2, 4]));
}

#[test]
fn snf_over_a_polynomial_ring() {
    let o = run_with_stdin(&["snf", "--ring", "fpx:2"], &json!({ "entries": [[[0, 1], [1]], [[1], [1, 1]]] }));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["ring"], json!("fpx:2"));
}

#[test]
fn homology_of_z_mod_six() {
    let x = json!({ "ranks": { "1": 1, "0": 1 }, "differentials": { "1": { "entries": [[6]] } } });
    let o = run_with_stdin(&["homology"], &x);
    assert_eq!(o.status.code(), Some(0));
    let h = &stdout_json(&o)["result"]["homology"];
    assert_eq!(h["0"]["torsion"], json!([6]));
    assert_eq!(h["1"]["free_rank"], json!(0));
}

#[test]
fn in_and_out_files() {
    let dir = tempfile::tempdir().unwrap();
    let (input, output) = (dir.path().join("x.json"), dir.path().join("k.json"));
    let x = json!({ "ranks": { "1": 2, "0": 2 }, "differentials": { "1": { "entries": [[2, 1], [0, 3]] } } });
    fs::write(&input, x.to_string()).unwrap();
    let o = bin().args(["k0", "--in", input.to_str().unwrap(), "--out", output.to_str().unwrap()]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(v["result"]["isom"]["rank"], json!(2));
    assert_eq!(v["result"]["qis"], json!([{ "prime": 2, "mult": 1 }, { "prime": 3, "mult": 1 }]));
}

#[test]
fn every_operation_accepts_a_small_instance() {
    let x = json!({ "ranks": { "1": 1, "0": 1 }, "differentials": { "1": { "entries": [[2]] } } });
    let id = json!({ "source": x, "target": x, "components": { "1": { "entries": [[1]] }, "0": { "entries": [[1]] } } });
    let cases = [
        ("cone", id.clone()),
        ("cyl", id.clone()),
        ("truncate", json!({ "complex": x, "n": 0 })),
        ("split", json!({ "complex": x, "n": 0 })),
        ("factorize", id.clone()),
        ("kappa", x.clone()),
        ("resolve", x.clone()),
        ("efunctor", x.clone()),
        ("eddecompose", x.clone()),
        ("k0", json!({ "module": { "torsion": [4] } })),
    ];
    for (cmd, input) in cases {
        let o = run_with_stdin(&[cmd], &input);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout_json(&o)["operation"], json!(cmd));
    }
}

#[test]
fn fixtures_drive_the_operation() {
    let o = bin().arg("--fixture").arg(fixture("excision_first_coordinate.json")).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["operation"], json!("excise"));
    assert_eq!(v["result"]["report"]["kernel_acyclic"], json!(false));
}

#[test]
fn error_fixtures_exit_with_invalid_input() {
    for name in ["non_injective_d.json", "non_idempotent_e.json", "kernel_image_hypothesis.json", "not_a_complex.json"] {
        let o = bin().arg("--fixture").arg(fixture(name)).output().unwrap();
        assert_eq!(o.status.code(), Some(2), "{name}");
        let err: Value = serde_json::from_slice(&o.stderr).unwrap();
        assert!(err["error"].is_string(), "{name}");
    }
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(run_with_stdin(&["snf"], &json!({ "entries": [[1, 2], [3]] })).status.code(), Some(2));
    assert_eq!(run_with_stdin(&["snf", "--ring", "fpx:4"], &json!({ "entries": [] })).status.code(), Some(2));
    let mut child = bin().arg("homology").stdin(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(b"{ not json").unwrap();
    assert_eq!(child.wait().unwrap().code(), Some(2));
    assert_eq!(bin().args(["suite", "no_such_suite"]).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().arg("--fixture").arg("/nonexistent.json").output().unwrap().status.code(), Some(2));
}

#[test]
fn suite_reports_are_deterministic() {
    let args = ["suite", "remark3_2", "--seed", "5", "--trials", "20"];
    let a = bin().args(args).output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!((v["suite"].clone(), v["trials"].clone(), v["passed"].clone()), (json!("remark3_2"), json!(20), json!(true)));
}

#[test]
fn suite_over_f2x() {
    let o = bin().args(["suite", "k0_theorems", "--ring", "fpx:2", "--trials", "30", "--seed", "3"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["failures"], json!([]));
}
