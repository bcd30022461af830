use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn kwflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kwflow")).args(args).env_remove("KWFLOW_ORDER").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("kwflow-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn coeffs_json_shape() {
    let o = kwflow(&["coeffs", "b", "--order", "4"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["family"], "b");
    assert_eq!(v["order"], 4);
    let values: Vec<&str> = v["coeffs"].as_array().unwrap().iter().map(|c| c["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["1", "1/3", "1/36", "-1/270"]);
    assert_eq!(v["coeffs"][0]["index"], 1);
}

#[test]
fn coeffs_csv_to_file() {
    let path = std::env::temp_dir().join(format!("kwflow-cli-{}-c.csv", std::process::id()));
    let o = kwflow(&["coeffs", "c", "--order", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "index,value\n1,1\n2,2/3\n3,4/9\n");
}

#[test]
fn order_guard_and_unknown_names_exit_2() {
    for args in [
        &["coeffs", "b", "--order", "0"][..],
        &["coeffs", "b", "--order", "201"],
        &["coeffs", "zeta"],
        &["verify", "nope"],
        &["verify", "iden", "--order", "2"],
        &["verify", "grading", "--range", "3..1"],
    ] {
        assert_eq!(kwflow(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn order_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_kwflow"))
        .args(["coeffs", "bernoulli"])
        .env("KWFLOW_ORDER", "2")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 2);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_pass_and_perturb() {
    let o = kwflow(&["verify", "k-functional", "--order", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o)[0]["status"], "PASS");
    assert!(String::from_utf8_lossy(&o.stderr).contains("1 passed"));

    let o = kwflow(&["verify", "k-functional", "--order", "12", "--perturb"]);
    assert_eq!(o.status.code(), Some(1));
    let r = &lines(&o)[0];
    assert_eq!(r["status"], "FAIL");
    assert_eq!(r["first_mismatch"]["exponent"], 4);
}

#[test]
fn heisenberg_reports_skipped_cases() {
    let o = kwflow(&["verify", "heisenberg-commutators", "--weight", "4", "--range", "-2..2"]);
    assert_eq!(o.status.code(), Some(0));
    let statuses: Vec<String> = lines(&o).iter().map(|r| r["status"].as_str().unwrap().to_string()).collect();
    assert_eq!(statuses, ["PASS", "SKIPPED"]);
}

#[test]
fn malformed_fixture_is_a_usage_error() {
    let garbage = scratch("garbage.json", "{\"oracle\": 3}");
    assert_eq!(kwflow(&["verify", "kw-constraints", "--fixture", garbage.to_str().unwrap()]).status.code(), Some(2));
    let missing = std::env::temp_dir().join("kwflow-cli-no-such-file.json");
    assert_eq!(kwflow(&["verify", "kw-constraints", "--fixture", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn perturbed_shipped_fixture_fails_at_weight_one() {
    let shipped = include_str!("../../core/fixtures/kw_fixture.json");
    let broken = shipped.replacen(r#""coefficient":"1/24""#, r#""coefficient":"1/23""#, 1);
    assert_ne!(broken, shipped);
    let path = scratch("broken.json", &broken);
    let o = kwflow(&["verify", "kw-constraints", "--fixture", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(lines(&o)[0]["first_mismatch"]["exponent"], 1);
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let run = || {
        let o = kwflow(&["verify", "grading", "--weight", "5", "--seed", "7", "--perturb"]);
        let mut reports = lines(&o);
        for r in &mut reports {
            r.as_object_mut().unwrap().remove("elapsed_ms");
        }
        reports
    };
    assert_eq!(run(), run());
}
