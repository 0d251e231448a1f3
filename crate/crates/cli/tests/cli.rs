use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycle-minion"))
        .args(args)
        .env_remove("CYCLE_MINION_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect()
}

#[test]
fn enum_binary_k3() {
    let out = run(&["enum", "--k", "3", "--n", "2", "--target", "K3"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[12]["count"], 12);
    assert_eq!(lines[12]["complete"], true);
    assert_eq!(lines[0]["arity"], 2);
}

#[test]
fn enum_unary_k5_and_limit() {
    let lines = stdout_lines(&run(&["enum", "--k", "5", "--n", "1"]));
    assert_eq!(lines.last().unwrap()["count"], 30);
    let limited = stdout_lines(&run(&["enum", "--k", "5", "--n", "1", "--limit", "4"]));
    assert_eq!(limited.len(), 5);
    assert_eq!(limited[4]["complete"], false);
    assert_eq!(&limited[..4], &lines[..4]);
}

#[test]
fn enum_budget_refusal_and_sampling() {
    let out = run(&["enum", "--k", "5", "--n", "3"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--sample"));
    let a = run(&[
        "enum", "--k", "5", "--n", "3", "--sample", "3", "--seed", "9",
    ]);
    let b = run(&[
        "enum", "--k", "5", "--n", "3", "--sample", "3", "--seed", "9",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_lines(&a).len(), 4);
}

#[test]
fn enum_targets() {
    let dk = stdout_lines(&run(&["enum", "--k", "9", "--n", "1", "--target", "Dk:9"]));
    assert!(dk.last().unwrap()["count"].as_u64().unwrap() > 0);
    let c = stdout_lines(&run(&["enum", "--k", "9", "--n", "1", "--target", "Ck:3"]));
    assert_eq!(c.last().unwrap()["count"], 510);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k3.json");
    fs::write(&path, r#"{"vertices":3,"edges":[[0,1],[0,2],[1,2]]}"#).unwrap();
    let f = stdout_lines(&run(&[
        "enum",
        "--k",
        "5",
        "--n",
        "1",
        "--target",
        path.to_str().unwrap(),
    ]));
    assert_eq!(f.last().unwrap()["count"], 30);
}

#[test]
fn eta_then_degrees() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table.json");
    let out = run(&[
        "eta",
        "--coeffs",
        "1,-1,1",
        "--k",
        "9",
        "--out",
        table.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let parsed: Value = serde_json::from_str(&fs::read_to_string(&table).unwrap()).unwrap();
    assert_eq!(parsed["values"].as_array().unwrap().len(), 729);
    let degrees = stdout_lines(&run(&["degrees", table.to_str().unwrap()]));
    assert_eq!(
        degrees[0],
        serde_json::json!({"degrees": [1, -1, 1], "N": 3, "in_Z_leq_N": true})
    );
}

#[test]
fn degrees_of_remark_table() {
    // h = (0,1,0,1,2) on the first coordinate
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    let values: Vec<usize> = (0..25).map(|x| [0, 1, 0, 1, 2][x / 5]).collect();
    let table = serde_json::json!({"arity": 2, "domain": 5, "target": 3, "values": values});
    fs::write(&path, table.to_string()).unwrap();
    let lines = stdout_lines(&run(&["degrees", path.to_str().unwrap()]));
    assert_eq!(
        lines[0],
        serde_json::json!({"degrees": [1, 0], "N": 1, "in_Z_leq_N": true})
    );
}

#[test]
fn degrees_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"arity":1,"domain":3,"target":3,"values":[0,0,1]}"#,
    )
    .unwrap();
    let out = run(&["degrees", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("edge"));
    fs::write(&bad, "{\"arity\":\n  1,").unwrap();
    let out = run(&["degrees", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn verify_reports() {
    let out = run(&["verify", "unary-degree", "--m", "9", "--l", "3"]);
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["properties"][0]["instances"], 510);
    assert_eq!(report["seed"], 0);

    let out = run(&["verify", "local-global", "--k", "5", "--n", "2"]);
    assert!(out.status.success());

    assert!(!run(&["verify", "unknown-suite"]).status.success());
}

#[test]
fn verify_is_deterministic() {
    let strip = |out: &Output| {
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("duration_ms");
        v
    };
    let args = ["verify", "chains", "--sample", "30", "--seed", "5"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn verify_eta_suite_exit_status_follows_report() {
    let out = run(&["verify", "appendix-a", "--k", "9"]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let all = report["properties"]
        .as_array()
        .unwrap()
        .iter()
        .all(|p| p["passed"] == p["instances"]);
    assert_eq!(out.status.success(), all);
    let roundtrip = report["properties"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["id"] == "delta-eta-identity")
        .unwrap();
    assert_eq!(roundtrip["passed"], roundtrip["instances"]);
}
