use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_rqi-bundle"));
    c.env("RQI_THREADS", "2");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn rqi-bundle")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn list_prints_every_scenario() {
    let o = run(&["list"]);
    assert!(o.status.success());
    let names: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(names.len(), 7);
    for n in ["pst-entropy", "ga-concurrence", "dirac-fw", "position-plancherel"] {
        assert!(names.iter().any(|s| s == n), "{n} missing");
    }
}

#[test]
fn csv_has_rapidity_and_error_columns() {
    let o = run(&["run", "--scenario", "pst-entropy", "--rapidity", "0,0.5", "--order", "8"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header[0], "rapidity");
    assert_eq!(header[1], "entropy");
    assert_eq!(header[2], "entropy_err");
    assert_eq!(header.len() % 2, 1);
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0][1].abs() < 1e-9);
    assert!(rows[1][1] > 0.04 && rows[1][1] < 0.05, "{}", rows[1][1]);
}

#[test]
fn unknown_scenario_exits_with_config_error() {
    let o = run(&["run", "--scenario", "no-such-thing"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no-such-thing"));
}

#[test]
fn bad_config_values_exit_with_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    for body in ["scenario = pst-entropy\nm = -1\n", "scenario = pst-entropy\nbogus = 3\n", "just text\n"] {
        std::fs::write(&cfg, body).unwrap();
        let o = run(&["run", cfg.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "config {body:?}");
    }
    let o = run(&["run", "--scenario", "pst-entropy", "--rapidity", "1:0:0.5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin().args(["run", "--scenario", "pst-entropy"]).env("RQI_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_drives_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# spin-1 packet\n[scenario]\nscenario = pl-covariance\ntwice_s = 2\nrapidities = 0.5\norder = 8 ; coarse\n",
    )
    .unwrap();
    let o = run(&["run", cfg.to_str().unwrap(), "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["provenance"]["config"]["twice_s"], 2);
    assert_eq!(doc["records"].as_array().unwrap().len(), 1);
    assert!(doc["records"][0]["defect"].as_f64().unwrap() < 1e-5);
}

#[test]
fn json_report_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    let o = run(&[
        "run", "--scenario", "dirac-fw", "--rapidity", "0,1", "--seed", "11", "--format", "json", "--out",
        first.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["run", first.to_str().unwrap(), "--out", second.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (a, b) = (read_json(&first), read_json(&second));
    assert_eq!(a["records"], b["records"]);
    assert_eq!(b["provenance"]["config"]["seed"], 11);
    assert_eq!(a["provenance"]["library"], "rqi-bundle");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["run", "--scenario", "tau-noncovariance", "--rapidity", "0.5", "--order", "8"];
    let one = bin().args(args).env("RQI_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("RQI_THREADS", "4").output().unwrap();
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
}
