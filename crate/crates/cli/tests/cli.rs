use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn abel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abel"))
        .args(args)
        .output()
        .expect("abel runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write_temp(dir: &tempfile::TempDir, name: &str, v: &Value) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn example1_end_to_end() {
    let out = abel(&["example1", "--grid", "120"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["degrees"], json!({"A": 5, "P1": 3, "P2": 2, "identity": true}));
    assert_eq!(v["invariant"], json!({"P1": true, "P2": true}));
    assert_eq!(v["bound"], json!(2));
    assert_eq!(v["darboux_independent"], json!(true));
    assert_eq!(v["B"]["cos"], json!(["-1", "-20", "-9", "0"]));
}

#[test]
fn verify_reports_then_exits_2_on_tampered_b() {
    let dir = tempfile::tempdir().unwrap();
    let built = stdout_json(&abel(&["construct", "--random", "--seed", "9"]));
    let doc = json!({"A": built["A"], "B": built["B"], "P": built["P1"]});
    let ok = abel(&["verify", &write_temp(&dir, "ok.json", &doc)]);
    assert!(ok.status.success());
    assert_eq!(stdout_json(&ok)["invariant"], json!(true));

    let mut bad = doc.clone();
    bad["B"]["cos"][0] = json!("12345");
    let out = abel(&["verify", &write_temp(&dir, "bad.json", &bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["invariant"], json!(false));
    assert!(String::from_utf8_lossy(&out.stderr).contains("CondInv violated"));
}

#[test]
fn construct_then_recover_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let built = stdout_json(&abel(&["--seed", "21", "construct", "--random"]));
    let doc = json!({"A": built["A"], "B": built["B"], "P1": built["P1"], "P2": built["P2"]});
    let recovered = stdout_json(&abel(&["recover", &write_temp(&dir, "eq.json", &doc)]));
    let again = abel(&["construct", &write_temp(&dir, "params.json", &recovered)]);
    assert!(again.status.success());
    let again = stdout_json(&again);
    for key in ["A", "B", "P1", "P2"] {
        assert_eq!(again[key], built[key], "{key}");
    }
}

#[test]
fn random_construction_is_seed_deterministic() {
    let a = abel(&["construct", "--random", "--seed", "5"]);
    let b = abel(&["construct", "--random", "--seed", "5"]);
    let c = abel(&["construct", "--random", "--seed", "6"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn parse_errors_exit_1_with_byte_offset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"cos\": [1, 2,]}").unwrap();
    let out = abel(&["factor", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte offset 14"));
}

#[test]
fn factor_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_abel"))
        .args(["factor", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    // (cos t + 2)(sin t + 3)
    let p = json!({"cos": ["6", "3"], "sin": ["2", "1/2"]}).to_string();
    child.stdin.take().unwrap().write_all(p.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["degree"], json!(2));
    assert_eq!(v["zero_free"], json!(true));
    assert_eq!(v["factorization"]["factors"].as_array().unwrap().len(), 2);
}

#[test]
fn poincare_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let built = stdout_json(&abel(&["example1", "--grid", "20"]));
    let eq = write_temp(&dir, "eq.json", &json!({"A": built["A"], "B": built["B"]}));
    let csv = dir.path().join("samples.csv");
    let out = abel(&[
        "poincare",
        &eq,
        "--xmin",
        "-0.05",
        "--xmax",
        "0.2",
        "--grid",
        "50",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["count_nontrivial"], json!(2));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 52);
}
