use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_bpfcheck"));
    c.env_remove("BPF_PRECISION_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    (serde_json::from_str(&stdout(&o)).expect("json report"), code(&o))
}

fn golden(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn alpha_table_minima() {
    let (r, c) = json(&["alpha-table", "--g-from", "6", "--g-to", "8"]);
    assert_eq!(c, 0);
    let minima: Vec<(u64, String)> = r["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|row| row["argmin"] == true)
        .map(|row| (row["d"].as_u64().unwrap(), row["alpha"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(minima, vec![(3, "cbrt(9/2)".into()), (3, "cbrt(4)".into()), (3, "cbrt(25/7)".into())]);
    assert_eq!(r["verdict"], "PASS");
}

#[test]
fn alpha_table_single_g_has_one_row_per_d() {
    let (r, _) = json(&["alpha-table", "--g-from", "6", "--g-to", "6"]);
    let ds: Vec<u64> = r["rows"].as_array().unwrap().iter().map(|row| row["d"].as_u64().unwrap()).collect();
    assert_eq!(ds, vec![2, 3, 4]);
    for key in ["tool_version", "command", "inputs", "rows", "verdict"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn alpha_table_rejects_small_g() {
    assert_eq!(code(&run(&["alpha-table", "--g-from", "5", "--g-to", "8"])), 64);
    assert_eq!(code(&run(&["alpha-table", "--g-from", "9", "--g-to", "8"])), 64);
}

#[test]
fn pell_csv_rows() {
    let o = run(&["pell", "--d-max", "6", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[6], "6,pell,1/2;5/12,5,1,1/6 + 1/6*sqrt(6),PASS");
    assert!(lines[4].starts_with("4,perfect-square,1/2,"));
}

#[test]
fn verify_builtins_pass() {
    let (r, c) = json(&["verify"]);
    assert_eq!(c, 0);
    let rows = r["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|row| row["verdict"] == "PASS"));
}

#[test]
fn verify_falsified_exits_one() {
    let (r, c) = json(&["verify", "--falsified"]);
    assert_eq!(c, 1);
    assert!(r["rows"].as_array().unwrap().iter().all(|row| row["verdict"] == "FAIL"));
}

#[test]
fn injected_failure_in_manifest_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let manifest = r#"[
        {"id": "ok", "kind": "compare",
         "payload": {"lhs": {"op": "rat", "value": "3"}, "rhs": {"op": "root", "k": 2, "arg": {"op": "rat", "value": "8"}}, "relation": ">"}},
        {"id": "bad", "kind": "compare",
         "payload": {"lhs": {"op": "rat", "value": "2"}, "rhs": {"op": "root", "k": 2, "arg": {"op": "rat", "value": "5"}}, "relation": ">"}}
    ]"#;
    std::fs::write(&path, manifest).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&run(&["verify", "--manifest", p])), 1);
    // pinning the failure makes it expected
    let exp = dir.path().join("e.json");
    std::fs::write(&exp, r#"{"checks": {"ok": "PASS", "bad": "FAIL"}}"#).unwrap();
    assert_eq!(code(&run(&["verify", "--manifest", p, "--expect", exp.to_str().unwrap()])), 0);
}

#[test]
fn malformed_inputs_exit_65() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"[{"id": "x", "kind": "nope"}]"#).unwrap();
    assert_eq!(code(&run(&["verify", "--manifest", bad.to_str().unwrap()])), 65);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["verify", "--manifest", missing.to_str().unwrap()])), 65);
    std::fs::write(&bad, r#"{"unknown_key": 1}"#).unwrap();
    assert_eq!(code(&run(&["pell", "--d-max", "6", "--expect", bad.to_str().unwrap()])), 65);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&run(&[])), 64);
    assert_eq!(code(&run(&["classify"])), 64);
    assert_eq!(code(&run(&["pell", "--d-max", "six"])), 64);
    assert_eq!(code(&run(&["verify", "--precision-digits", "31"])), 64);
    assert_eq!(code(&run(&["chain", "--g", "3"])), 64);
    assert_eq!(code(&run(&["chain", "--g", "6", "--m", "1/0"])), 64);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn precision_env_override() {
    let o = bin().env("BPF_PRECISION_CAP", "40").args(["verify", "--format", "json"]).output().unwrap();
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["inputs"]["precision_digits"], 40);
    let o = bin().env("BPF_PRECISION_CAP", "8").arg("verify").output().unwrap();
    assert_eq!(code(&o), 64);
    let o = bin().env("BPF_PRECISION_CAP", "8").args(["verify", "--precision-digits", "64"]).output().unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn classify_golden_files() {
    for g in ["4", "5", "6"] {
        let o = run(&["classify", "--g", g, "--format", "json", "--expect", &golden(&format!("classify_g{g}.json"))]);
        assert_eq!(code(&o), 0, "g = {g}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let dir = tempfile::tempdir().unwrap();
    let exp = dir.path().join("e.json");
    std::fs::write(&exp, r#"{"exceptional": [[1, 3, 3, 3, 3]]}"#).unwrap();
    let o = run(&["classify", "--g", "5", "--expect", exp.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceptional types"));
}

#[test]
fn classify_g6_lists_exceptional_types() {
    let (r, c) = json(&["classify", "--g", "6"]);
    assert_eq!(c, 0);
    assert_eq!(r["summary"]["threshold"], "3125");
    let ex = r["summary"]["exceptional"].as_array().unwrap();
    assert!(ex.contains(&serde_json::json!([1, 3, 3, 3, 3, 3])));
}

#[test]
fn chains_pass() {
    let (r, c) = json(&["chain", "--g", "5"]);
    assert_eq!(c, 0);
    assert_eq!(r["inputs"]["m"], "801/100");
    assert!(r["summary"]["assumptions"].as_array().unwrap().iter().any(|a| a.as_str().unwrap().contains("divisor")));
    for g in 6..=12 {
        let o = run(&["chain", "--g", &g.to_string()]);
        assert_eq!(code(&o), 0, "g = {g}");
    }
    // m = 8 sits on the threshold and is rejected
    let (r, c) = json(&["chain", "--g", "5", "--m", "8"]);
    assert_eq!(c, 1);
    assert_eq!(r["summary"]["m_above_threshold"], false);
}

#[test]
fn stirling_runs() {
    let (r, c) = json(&["stirling", "--g-max", "30", "--refined"]);
    assert_eq!(c, 0);
    assert_eq!(r["rows"].as_array().unwrap().len(), 29);
}

#[test]
fn output_is_deterministic_and_round_trips() {
    for args in [
        vec!["classify", "--g", "5"],
        vec!["verify"],
        vec!["pell", "--d-max", "40"],
        vec!["alpha-table", "--g-from", "6", "--g-to", "10"],
    ] {
        for format in ["json", "csv"] {
            let mut a = args.clone();
            a.extend(["--format", format]);
            let (x, y) = (stdout(&run(&a)), stdout(&run(&a)));
            assert_eq!(x, y, "{a:?}");
            if format == "json" {
                let v: Value = serde_json::from_str(&x).unwrap();
                let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
                assert_eq!(again, v);
            }
        }
    }
}
