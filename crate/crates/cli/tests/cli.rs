use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn comodcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_comodcheck")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn covering(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/coverings").join(format!("{name}.json"))
}

#[test]
fn list_suites_as_json() {
    let o = comodcheck(&["list-suites", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    let suites = v.as_array().unwrap();
    assert_eq!(suites.len(), 15);
    assert!(suites.iter().all(|s| s["name"].is_string() && s["topic"].is_string() && s["numeric"].is_boolean()));
    let md = comodcheck(&["list-suites"]);
    assert!(String::from_utf8_lossy(&md.stdout).contains("frame-obstruction"));
}

#[test]
fn unknown_suite_is_a_config_error() {
    let o = comodcheck(&["verify", "--suite", "hopf-axiom"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.starts_with("CONFIG_ERROR"), "{err}");
    assert!(err.contains("did you mean hopf-axioms?"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn bad_grid_and_q_are_config_errors() {
    assert_eq!(code(&comodcheck(&["verify", "--suite", "quantum-rp2", "--grid-circle", "100"])), 2);
    assert_eq!(code(&comodcheck(&["verify", "--suite", "frame-obstruction", "--q", "0"])), 2);
    assert_eq!(code(&comodcheck(&["verify", "--suite", "covering", "--covering", "/nonexistent.json"])), 2);
}

#[test]
fn frame_obstruction_exit_codes() {
    let formal = comodcheck(&["verify", "--suite", "frame-obstruction"]);
    assert_eq!(code(&formal), 0);
    let two = comodcheck(&["verify", "--suite", "frame-obstruction", "--q", "2"]);
    assert_eq!(code(&two), 1);
    let v = stdout_json(&two);
    assert_eq!(v["pass"], false);
    let verdict = v["records"].as_array().unwrap().iter().find(|r| r["check"] == "frame-obstruction/verdict").unwrap();
    assert_eq!(verdict["witness"], "7*μ*x");
    for key in ["check", "params", "max_residual", "pass", "seed", "runtime_ms"] {
        assert!(verdict.get(key).is_some(), "{key}");
    }
}

#[test]
fn reports_are_reproducible_across_jobs() {
    let run = |jobs: &str| {
        let o = comodcheck(&["verify", "--suite", "peter-weyl", "--trials", "20", "--jobs", jobs, "--seed", "5"]);
        assert_eq!(code(&o), 0);
        let mut v = stdout_json(&o);
        v["runtime_ms"] = Value::Null;
        for r in v["records"].as_array_mut().unwrap() {
            r["runtime_ms"] = Value::Null;
        }
        v
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn export_then_verify_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("su_q2.json");
    let o = comodcheck(&["export", "--algebra", "su_q2", "--out", file.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let p: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(p["name"], "su_q2");
    assert!(p["hopf"]["delta"]["alpha"].is_string());
    let o = comodcheck(&["verify", "--suite", "hopf-axioms", "--algebra", file.to_str().unwrap(), "--degree", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(code(&comodcheck(&["export", "--algebra", "su_q3", "--out", file.to_str().unwrap()])), 2);
}

#[test]
fn covering_file_and_markdown_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.md");
    let path = covering("cross_z2");
    let o = comodcheck(&[
        "verify",
        "--suite",
        "covering",
        "--covering",
        path.to_str().unwrap(),
        "--format",
        "md",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let md = std::fs::read_to_string(&out).unwrap();
    assert!(md.starts_with("# Suite `covering`"));
    assert!(md.contains("| check | status |"));
}
