use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_orthoforms");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("ORTHOFORMS_OUT_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("orthoforms-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

#[test]
fn weights_e7_plain() {
    let o = run(&["weights", "E7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4 6 10 12 14 16 18 22 24 30\n");
    // resolved configuration goes to stderr in plain mode
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"system\":\"E7\""));
}

#[test]
fn hurwitz_check() {
    let o = run(&["hurwitz-check", "--max", "200"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "200/200 agree");
}

#[test]
fn hilbert_and_bound() {
    let o = run(&["hilbert", "A1", "--order", "12"]);
    // 1/((1-t^4)(1-t^6)(1-t^10)(1-t^12))
    assert_eq!(stdout(&o).trim(), "1 0 0 0 1 0 1 0 1 0 2 0 3");
    let o = run(&["bound", "E7", "-k", "16"]);
    assert_eq!(stdout(&o).trim(), "5");
    let o = run(&["identity-check", "D8", "--order", "30"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["weights"]).status.code(), Some(64));
    assert_eq!(run(&["weights", "E8"]).status.code(), Some(64));
    assert_eq!(run(&["pullback", "A5", "-k", "4"]).status.code(), Some(64));
    assert_eq!(run(&["certify", "D8", "--schedule", "4y4"]).status.code(), Some(64));
    assert_eq!(run(&["eisenstein", "D8", "-k", "6", "--orbit", "1"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_is_reproducible() {
    let args = ["lift", "E6", "-k", "4", "--nq", "2", "--nxi", "2", "--format", "json"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["config"]["command"]["nq"], 2);
    assert_eq!(v["result"]["level"], 12);
    assert_eq!(v["result"]["coefficients"]["0,0,0"], serde_json::json!([1, 240]));
}

#[test]
fn pullback_vector_override_echoes_norm() {
    let o = run(&["pullback", "E7", "-k", "4", "--nmax", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["norm"], 12);
    assert_eq!(v["result"]["index"], 12);

    let o = run(&["pullback", "D8", "-k", "4", "--nmax", "1", "--vector", "1,0,0,0,0,0,0,0"]);
    let s = stdout(&o);
    assert!(s.starts_with("Q(v) = 1;"), "{s}");
    assert_eq!(run(&["pullback", "D8", "-k", "4", "--vector", "1,0"]).status.code(), Some(64));
}

#[test]
fn output_directory_from_environment() {
    let dir = scratch("env");
    let o = Command::new(BIN)
        .args(["weights", "D8", "--format", "json"])
        .env("ORTHOFORMS_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("weights.json")).unwrap()).unwrap();
    assert_eq!(v["result"]["weights"], serde_json::json!([4, 4, 6, 8, 10, 10, 12, 12, 14, 16, 18]));

    let o = Command::new(BIN)
        .args(["table", "G2", "--output", "g2.txt"])
        .env("ORTHOFORMS_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(dir.join("g2.txt")).unwrap(), "(0,1),(2,1),(6,2)\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn certify_streams_progress() {
    let o = run(&["certify", "E7", "--wmax", "10", "--schedule", "2x2,3x3"]);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8_lossy(&o.stderr);
    let records: Vec<Value> = err
        .lines()
        .filter_map(|l| serde_json::from_str::<Value>(l).ok())
        .filter(|v| v.get("progress").is_some())
        .collect();
    let ws: Vec<i64> = records.iter().map(|r| r["progress"]["w"].as_i64().unwrap()).collect();
    assert_eq!(ws, [0, 4, 6, 8, 10]);
}

#[test]
fn verify_e14_small() {
    let o = run(&["verify-e14", "--nq", "2", "--nxi", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("coefficients: 1330560 2640 -11088"));
}
