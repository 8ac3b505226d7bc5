use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kellerlab"))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str], files: &[&Path]) -> Output {
    let mut cmd = bin();
    cmd.env_remove("KELLERLAB_BUDGET");
    let mut all: Vec<&std::ffi::OsStr> = Vec::new();
    let mut files = files.iter();
    for a in args {
        if *a == "@" {
            all.push(files.next().unwrap().as_os_str());
        } else {
            all.push(std::ffi::OsStr::new(a));
        }
    }
    cmd.args(all).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

const KELLER_FAIL: &str = r#"{"field": "Q", "nvars": 3, "polys": ["x1 + x2*x3", "x2 - x1*x3", "x3"]}"#;
const ZERO_MAP_F2: &str = r#"{"field": {"Fp": 2}, "nvars": 1, "polys": ["x1 - x1^2"]}"#;
const SUBDIAG: &str = r#"[["0","0","0"],["1","0","0"],["0","1","0"]]"#;

#[test]
fn keller_golden_output() {
    let dir = TempDir::new().unwrap();
    let map = write(&dir, "map.json", KELLER_FAIL);
    let out = run(&["keller", "@"], &[&map]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    // digest of KELLER_FAIL taken with an external sha256 tool
    assert_eq!(
        text,
        r#"{
  "command": "keller",
  "field": "Q",
  "input_sha256": "f99f1155f7b8f9baf1a72d930f4e424920712c6edbaa3c45ef8b67380e301dc4",
  "result": {
    "det": "x3^2 + 1",
    "keller": false
  }
}
"#
    );
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let map = write(
        &dir,
        "map.json",
        r#"{"field": {"Fp": 5}, "nvars": 2, "polys": ["x1^2 + x2", "x2^2 + 3*x1"]}"#,
    );
    let first = run(&["collide", "@", "-r", "2"], &[&map]);
    let second = run(&["collide", "@", "-r", "2"], &[&map]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout_json(&first)["result"]["count"].as_u64().unwrap() > 0);
}

#[test]
fn druzkowski_then_inverse_degree() {
    let dir = TempDir::new().unwrap();
    let matrix = write(&dir, "a.json", SUBDIAG);
    let out = run(&["druzkowski", "--matrix", "@", "--deg", "2"], &[&matrix]);
    let file = stdout_json(&out);
    assert_eq!(file["polys"], serde_json::json!(["x1", "x1^2 + x2", "x2^2 + x3"]));
    let map = write(&dir, "map.json", &String::from_utf8(out.stdout).unwrap());
    let out = run(&["inverse-degree", "@"], &[&map]);
    assert_eq!(stdout_json(&out)["result"], serde_json::json!({"degree": 4}));

    let out = run(&["druzkowski", "--matrix", "@", "--deg", "3"], &[&matrix]);
    let mut child = bin()
        .args(["inverse-degree", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&out.stdout).unwrap();
    let piped = child.wait_with_output().unwrap();
    assert_eq!(stdout_json(&piped)["result"]["degree"], 9);
}

#[test]
fn collide_on_zero_map() {
    let dir = TempDir::new().unwrap();
    let map = write(&dir, "map.json", ZERO_MAP_F2);
    let out = run(&["collide", "@", "-r", "2"], &[&map]);
    let rep = stdout_json(&out);
    let ws = rep["result"]["witnesses"].as_array().unwrap();
    assert_eq!(ws.len(), 1);
    assert_eq!(ws[0]["det_jac_nonconstant"], false);
    assert_eq!(ws[0]["params"], serde_json::json!(["0", "1"]));
}

#[test]
fn budget_flag_and_environment() {
    let dir = TempDir::new().unwrap();
    let map = write(&dir, "map.json", ZERO_MAP_F2);
    let out = run(&["collide", "@", "-r", "2", "--budget", "1"], &[&map]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "BudgetExceeded");

    let out = bin()
        .args(["collide", map.to_str().unwrap(), "-r", "2"])
        .env("KELLERLAB_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin()
        .args(["collide", map.to_str().unwrap(), "-r", "2", "--budget", "10"])
        .env("KELLERLAB_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn invert_reports() {
    let dir = TempDir::new().unwrap();
    let map = write(
        &dir,
        "map.json",
        r#"{"field": "Q", "nvars": 3, "polys": ["x1", "x2 + x1^2", "x3 + x1*x2"]}"#,
    );
    let rep = stdout_json(&run(&["invert", "@"], &[&map]));
    assert_eq!(rep["result"]["verdict"], "PolynomialInverse");
    assert_eq!(
        rep["result"]["inverse"],
        serde_json::json!(["x1", "-x1^2 + x2", "x1^3 - x1*x2 + x3"])
    );

    let cubic = write(
        &dir,
        "cubic.json",
        r#"{"field": "Q", "nvars": 1, "polys": ["x1 + x1^3"]}"#,
    );
    let rep = stdout_json(&run(&["invert", "@", "--max-deg", "5"], &[&cubic]));
    assert_eq!(rep["result"]["verdict"], "NotPolynomialUpToBound");
    assert_eq!(rep["result"]["inverse"], Value::Null);

    let out = run(&["inverse-degree", "@"], &[&cubic]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "NotInvertibleUpToBound");
}

#[test]
fn reduce_report() {
    let dir = TempDir::new().unwrap();
    let map = write(
        &dir,
        "map.json",
        r#"{"field": "Q", "nvars": 2, "polys": ["x1 + (x1 + x2)^2", "x2"]}"#,
    );
    let rep = stdout_json(&run(&["reduce", "@"], &[&map]));
    let res = &rep["result"];
    assert_eq!(res["r"], 1);
    assert_eq!(res["paired"], serde_json::json!(["x1^2 + x1"]));
    // det jac = 1 + 2(x1 + x2): no inverse, hence no bound to satisfy
    assert_eq!(res["degree_bound"]["inverse_degree"], Value::Null);
    assert_eq!(res["degree_bound"]["satisfied"], false);

    let map = write(
        &dir,
        "tri.json",
        r#"{"field": "Q", "nvars": 3, "polys": ["x1", "x2 + x1^2", "x3 + x1*x2"]}"#,
    );
    let rep = stdout_json(&run(&["reduce", "@"], &[&map]));
    let bound = &rep["result"]["degree_bound"];
    assert_eq!((bound["r"].as_u64(), bound["bound"].as_u64()), (Some(2), Some(4)));
    assert_eq!(bound["inverse_degree"], 3);
    assert_eq!(bound["satisfied"], true);
    assert_eq!(bound["escalated"], false);
}

#[test]
fn rank_drop_and_line_check() {
    let dir = TempDir::new().unwrap();
    let map = write(
        &dir,
        "map.json",
        r#"{"field": {"Fp": 5}, "nvars": 2, "polys": ["x1^2", "x2"]}"#,
    );
    let rep = stdout_json(&run(&["rank-drop", "@", "--dir", "1,0", "--params", "1,4"], &[&map]));
    assert_eq!(rep["result"]["param"], "0");
    assert_eq!(rep["result"]["jacobian_rank"], 1);

    let zero = write(&dir, "zero.json", ZERO_MAP_F2);
    let rep = stdout_json(&run(&["line-check", "@", "--point", "1"], &[&zero]));
    assert_eq!(rep["result"]["collision"], serde_json::json!(["0", "1"]));

    let q = write(
        &dir,
        "q.json",
        r#"{"field": "Q", "nvars": 2, "polys": ["x1", "x2 + x1^2"]}"#,
    );
    let rep = stdout_json(&run(&["line-check", "@", "--point", "-1/2,3"], &[&q]));
    assert_eq!(rep["result"]["injective"], true);
}

#[test]
fn vandermonde_report() {
    let out = bin()
        .args(["vandermonde", "--points", "1,2,3", "--degrees", "0,1,3", "--field", "5"])
        .output()
        .unwrap();
    let rep = stdout_json(&out);
    assert_eq!(rep["field"], "F_5");
    assert_eq!(rep["result"]["rank"], 3);
    assert_eq!(rep["result"]["matrix"][2], serde_json::json!(["1", "3", "2"]));
}

#[test]
fn usage_and_parse_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"]["kind"], "Usage");

    let bad = write(&dir, "bad.json", r#"{"field": "Q", "nvars": 1, "polys": ["x1 +"]}"#);
    let out = run(&["keller", "@"], &[&bad]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["error"]["kind"], "Syntax");

    let composite = write(&dir, "c.json", r#"{"field": {"Fp": 6}, "nvars": 1, "polys": ["x1"]}"#);
    assert_eq!(run(&["keller", "@"], &[&composite]).status.code(), Some(1));

    let out = run(&["keller", "@"], &[Path::new("/nonexistent/map.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn precondition_failures_exit_two() {
    let dir = TempDir::new().unwrap();
    let map = write(
        &dir,
        "map.json",
        r#"{"field": {"Fp": 5}, "nvars": 2, "polys": ["x1^2", "x2"]}"#,
    );
    let out = run(&["rank-drop", "@", "--dir", "1,0", "--params", "1,2"], &[&map]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "PreconditionFailed");

    let out = run(&["rank-drop", "@", "--dir", "0,0", "--params", "1,4"], &[&map]);
    assert_eq!(stderr_json(&out)["error"]["kind"], "ZeroDirection");

    let q = write(&dir, "q.json", KELLER_FAIL);
    assert_eq!(run(&["collide", "@", "-r", "2"], &[&q]).status.code(), Some(2));
}
