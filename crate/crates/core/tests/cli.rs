use std::path::{Path, PathBuf};
use std::process::Command;

use dsforge::cli::{run, EXIT_INPUT, EXIT_NO, EXIT_UNDECIDED, EXIT_YES, MAX_FIELD_ORDER_ENV};
use serde_json::Value;

fn problem(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("problems").join(name)
}

fn cli(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["dsforge"];
    full.extend_from_slice(args);
    let (code, text) = run(full);
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"));
    (code, v)
}

fn on(cmd: &str, file: &Path, extra: &[&str]) -> (i32, Value) {
    let path = file.to_str().unwrap();
    let mut args = vec![cmd, "--input", path];
    args.extend_from_slice(extra);
    cli(&args)
}

#[test]
fn closure_verdicts_follow_exit_codes() {
    for (file, code) in [
        ("hypergeometric_d4.json", EXIT_YES),
        ("hypergeometric_d4_no.json", EXIT_NO),
        ("three_by_three.json", EXIT_YES),
        ("not_a_root.json", EXIT_NO),
        ("nilpotent_additive.json", EXIT_YES),
    ] {
        let (got, report) = on("decide-closure", &problem(file), &[]);
        assert_eq!(got, code, "{file}: {report}");
        let answer = report["verdict"]["answer"].as_str().unwrap();
        assert_eq!(answer == "yes", code == EXIT_YES, "{file}");
    }
}

#[test]
fn rigid_verdicts() {
    let (code, report) = on("decide-rigid", &problem("hypergeometric_d4.json"), &[]);
    assert_eq!(code, EXIT_YES);
    assert_eq!(report["conjecture"]["label"], "CONJECTURAL");
    let (code, report) = on("decide-rigid", &problem("not_a_root.json"), &[]);
    assert_eq!(code, EXIT_NO);
    assert_eq!(report["verdict"]["reason"], "not a root");
    let (code, _) = on("decide-rigid", &problem("three_by_three.json"), &[]);
    assert_eq!(code, EXIT_NO);
}

#[test]
fn rigid_certificate_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let (code, report) = on("solve-rigid", &problem("hypergeometric_d4.json"), &["--emit-certificate", cert.to_str().unwrap()]);
    assert_eq!(code, EXIT_YES, "{report}");
    let (code, check) = on("check-solution", &cert, &[]);
    assert_eq!(code, EXIT_YES, "{check}");
    assert_eq!(check["valid"], true);

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    v["matrices"][0][0][0] = Value::String("z7^2".into());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let (code, check) = on("check-solution", &bad, &[]);
    assert_eq!(code, EXIT_NO);
    assert_eq!(check["valid"], false);
    assert_eq!(check["first_failure"], "A_1 ... A_k != 1");
}

#[test]
fn closure_certificate_with_triples_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("closure.json");
    let (code, _) = on("decide-closure", &problem("three_by_three.json"), &["--emit-certificate", cert.to_str().unwrap()]);
    assert_eq!(code, EXIT_YES);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(v["check"], "closure");
    assert!(v["triples"].as_array().unwrap().iter().all(|t| !t.is_null()));
    let (code, check) = on("check-solution", &cert, &[]);
    assert_eq!(code, EXIT_YES, "{check}");
}

#[test]
fn decomposition_certificate_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("decomposition.json");
    let (code, _) = on("decide-additive", &problem("nilpotent_additive.json"), &["--emit-certificate", cert.to_str().unwrap()]);
    assert_eq!(code, EXIT_YES);
    let (code, check) = on("check-solution", &cert, &[]);
    assert_eq!(code, EXIT_YES, "{check}");
    assert_eq!(check["kind"], "decomposition");
}

#[test]
fn reports_are_deterministic() {
    let path = problem("pochhammer_3.json");
    let args = ["dsforge", "solve-rigid", "--input", path.to_str().unwrap()];
    assert_eq!(run(args), run(args));
    let a = run(["dsforge", "generic-xi", "--weights", "2,2,2", "--vector", "2,1,1,1", "--seed", "9"]);
    let b = run(["dsforge", "generic-xi", "--weights", "2,2,2", "--vector", "2,1,1,1", "--seed", "9"]);
    assert_eq!(a, b);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"classes\": [").unwrap();
    let (code, v) = on("decide-closure", &bad, &[]);
    assert_eq!(code, EXIT_INPUT);
    assert!(v["error"]["message"].as_str().unwrap().contains("line"));

    std::fs::write(&bad, r#"{"classes": [{"eigenvalues": ["z3", "2 +"], "dims": [2, 1]}]}"#).unwrap();
    let (code, v) = on("decide-closure", &bad, &[]);
    assert_eq!(code, EXIT_INPUT);
    assert!(v["error"]["message"].as_str().unwrap().contains("$.classes[0].eigenvalues[1]"), "{v}");

    let (code, _) = on("decide-closure", &dir.path().join("missing.json"), &[]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _) = run(["dsforge", "decide-closure"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _) = run(["dsforge", "--help"]);
    assert_eq!(code, EXIT_YES);
}

#[test]
fn classify_root_reports_tags() {
    let (code, v) = cli(&["classify-root", "--weights", "2,2,2", "--vector", "2,1,1,1"]);
    assert_eq!(code, EXIT_YES);
    assert_eq!(v["classification"]["tag"], "real root");
    assert_eq!(v["p"], 0);
    let (code, v) = cli(&["classify-root", "--weights", "3,3,3", "--vector", "3,2,1,2,1,2,1"]);
    assert_eq!(code, EXIT_YES);
    assert_eq!(v["classification"]["tag"], "imaginary root");
    let (code, v) = cli(&["classify-root", "--weights", "2,2,2", "--vector", "3,1,1,1"]);
    assert_eq!(code, EXIT_NO);
    assert_eq!(v["classification"]["tag"], "not a root");
}

fn binary(args: &[&str], env: Option<(&str, &str)>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dsforge"));
    cmd.args(args).env_remove(MAX_FIELD_ORDER_ENV);
    if let Some((k, v)) = env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn field_order_cap_from_environment() {
    let path = problem("hypergeometric_d4.json");
    let p = path.to_str().unwrap();
    let (code, out) = binary(&["decide-closure", "--input", p], Some((MAX_FIELD_ORDER_ENV, "12")));
    assert_eq!(code, EXIT_INPUT);
    assert!(out.contains("field-order"), "{out}");
    let (code, _) = binary(&["decide-closure", "--input", p], None);
    assert_eq!(code, EXIT_YES);
    let (code, out) = binary(
        &["generic-xi", "--weights", "2,2,2", "--vector", "2,1,1,1"],
        Some((MAX_FIELD_ORDER_ENV, "6")),
    );
    assert_eq!(code, EXIT_UNDECIDED, "{out}");
    let (code, _) = binary(&["decide-closure", "--input", p], Some((MAX_FIELD_ORDER_ENV, "zero")));
    assert_eq!(code, EXIT_INPUT);
}
