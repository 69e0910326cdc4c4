use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cluster-teleport"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn without_clock(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_clock_seconds");
    v
}

#[test]
fn teleport_exact_report() {
    let v = json(&run(&["teleport", "--protocol", "chain", "--n", "2"]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "teleport");
    assert!((v["f_process"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["f_process_error"].as_f64().unwrap(), 0.0);
    assert_eq!(v["f_c_threshold"].as_f64().unwrap(), 0.683);
    assert_eq!(v["inputs"].as_array().unwrap().len(), 4);
    assert!(v["wall_clock_seconds"].is_number());
    assert!(v["chi"]["entries"].is_array());
}

#[test]
fn sampled_reports_repeat_exactly() {
    let args = ["teleport", "--n", "4", "--mode", "sampled", "--seed", "12", "--shots", "1024", "--reps", "2"];
    let a = without_clock(json(&run(&args)));
    let b = without_clock(json(&run(&args)));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let mut other = args;
    other[6] = "13";
    let c = without_clock(json(&run(&other)));
    assert_ne!(a, c);
}

#[test]
fn configuration_errors_exit_with_one() {
    for args in [
        vec!["teleport", "--mode", "sampled"],
        vec!["teleport", "--n", "14"],
        vec!["teleport", "--n", "5"],
        vec!["teleport", "--format", "csv"],
        vec!["teleport", "--noise", "depolarizing:1.5"],
        vec!["teleport", "--protocol", "ring"],
        vec!["witness", "--n", "8"],
        vec!["sweep", "--n", "4,14"],
        vec!["bogus"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_succeeds() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for sub in ["teleport", "witness", "noise-compare", "sweep"] {
        assert!(text.contains(sub), "{sub}");
    }
}

#[test]
fn witness_states() {
    let v = json(&run(&["witness", "--protocol", "box", "--n", "6"]));
    assert!((v["value"].as_f64().unwrap() + 1.0).abs() < 1e-10);
    assert_eq!(v["settings"][0], "XZZXXZ");
    assert_eq!(v["terms"].as_array().unwrap().len(), 6);
    let v = json(&run(&["witness", "--protocol", "chain", "--n", "6", "--state", "product"]));
    assert!((v["value"].as_f64().unwrap() - 5.0).abs() < 1e-10);
    let v = json(&run(&["witness", "--n", "8", "--generalized"]));
    assert_eq!(v["extrapolated"], true);
    let v = json(&run(&["witness", "--protocol", "chain", "--mode", "sampled", "--seed", "4"]));
    let (value, err) = (v["value"].as_f64().unwrap(), v["error"].as_f64().unwrap());
    assert!((value + 1.0).abs() <= 5.0 * err);
}

#[test]
fn noise_compare_from_file_and_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("teleport.json");
    let out = run(&["teleport", "--noise", "depolarizing", "--out", report.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v = json(&run(&["noise-compare", "--chi", report.to_str().unwrap()]));
    assert_eq!(v["source"], "file");
    assert!(v["channel_fidelities"]["depolarizing"].as_f64().unwrap() > 0.999);

    let v = json(&run(&["noise-compare", "--noise", "phase-damping", "--n", "4"]));
    assert_eq!(v["source"], "run");
    assert!(v["channel_fidelities"]["phase_damping"].as_f64().unwrap() > 0.999);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(run(&["noise-compare", "--chi", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn sweep_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("sweep.csv");
    let out = run(&["sweep", "--protocol", "box,chain", "--n", "4,6", "--format", "csv", "--out", csv_path.to_str().unwrap()]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "protocol");
    assert!(headers.iter().any(|h| h == "f_c_threshold"));
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(&rows[2][0], "chain");

    let v = json(&run(&["sweep", "--n", "4,6,8"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"protocol": "chain", "n": 8, "mode": "sampled", "seed": 5, "shots": 256, "reps": 1}"#).unwrap();
    let v = json(&run(&["teleport", "--config", cfg.to_str().unwrap(), "--n", "4"]));
    assert_eq!(v["config"]["protocol"], "chain");
    assert_eq!(v["config"]["n"], 4);
    assert_eq!(v["config"]["shots"], 256);
    assert_eq!(v["inputs"][0]["branches"], 16);

    let missing = Path::new("/nonexistent/cfg.json");
    assert_eq!(run(&["teleport", "--config", missing.to_str().unwrap()]).status.code(), Some(1));
}
