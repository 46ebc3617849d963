use std::process::{Command, Output};

use newton_quintic::cli::RunRecord;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_newton-quintic"));
    cmd.env_remove("NEWTON_QUINTIC_WORKERS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn reduce_reports_family() {
    let out = run(&["reduce", "--a", "1", "--b", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PPlus"));
    let out = run(&["reduce", "--a", "-2", "--b", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let c = v["variant"]["c"].as_f64().unwrap();
    assert!((c - 2f64.powf(0.2)).abs() < 1e-12);
}

#[test]
fn bad_input_exits_nonzero() {
    let out = run(&["reduce", "--a", "nan", "--b", "1"]);
    assert!(!out.status.success());
    let out = run(&[
        "find-window",
        "--word",
        "(RLRC)^inf",
        "--c-min",
        "1.2",
        "--c-max",
        "1.25",
    ]);
    assert!(!out.status.success());
}

#[test]
fn empty_bifurcation_range_is_header_only() {
    let out = run(&["bifurcation", "--c-min", "1.0", "--c-max", "1.0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "c,x\n");
}

#[test]
fn bifurcation_shows_rlrc_window() {
    let found = run(&[
        "find-window",
        "--word",
        "(RLRC)^inf",
        "--c-min",
        "1.33",
        "--c-max",
        "1.34",
    ]);
    let c = stdout(&found).trim().to_string();
    let out = run(&[
        "bifurcation",
        "--c-min",
        &c,
        "--c-max",
        "1.4",
        "--samples",
        "1",
    ]);
    let rows: Vec<String> = stdout(&out).lines().skip(1).map(String::from).collect();
    assert_eq!(rows.len(), 4, "{rows:?}");
}

#[test]
fn sweeps_are_deterministic_and_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = [
        "entropy-curve",
        "--c-min",
        "0.5",
        "--c-max",
        "1.6",
        "--samples",
        "24",
    ];
    assert!(bin()
        .args(args)
        .arg("--out")
        .arg(&a)
        .status()
        .unwrap()
        .success());
    assert!(bin()
        .args(args)
        .arg("--out")
        .arg(&b)
        .env("NEWTON_QUINTIC_WORKERS", "1")
        .status()
        .unwrap()
        .success());
    let ca = std::fs::read(&a).unwrap();
    assert_eq!(ca, std::fs::read(&b).unwrap());
    let text = String::from_utf8(ca).unwrap();
    assert!(text.starts_with("c,entropy,method,period\n"));
    assert_eq!(text.lines().count(), 25);

    let record: RunRecord =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.csv.run.json")).unwrap())
            .unwrap();
    assert_eq!(record.command, "entropy-curve");
    assert_eq!(record.config["samples"], 24);
    record.verify().unwrap();
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    std::fs::write(&cfg, "c_min = 1.0\nc_max = 1.5\nsamples = 9\n").unwrap();
    let out = run(&[
        "entropy-curve",
        "--config",
        cfg.to_str().unwrap(),
        "--samples",
        "3",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 4);
}

#[test]
fn tree_json_and_text() {
    let out = run(&["tree", "--max-level", "4", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert!(rows
        .iter()
        .any(|r| r["word"] == "(RLRC)^inf" && r["d_y"] == serde_json::json!([1, 0, -2, -2, -1])));
    assert!(rows.iter().any(|r| r["terminal"] == "A"));
    let out = run(&["tree", "--max-level", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "");
}

#[test]
fn verify_reports() {
    let out = run(&["verify", "markov-rlrc"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], true);
    let out = run(&["verify", "admissibility"]);
    assert!(out.status.success());
    let out = run(&["verify", "entropy-routes"]);
    assert!(out.status.success());
}

#[test]
fn itinerary_of_critical_point() {
    let found = run(&[
        "find-window",
        "--word",
        "(RLRC)^inf",
        "--c-min",
        "1.33",
        "--c-max",
        "1.34",
    ]);
    let c = stdout(&found).trim().to_string();
    let out = run(&["itinerary", "--c", &c, "--length", "40"]);
    assert_eq!(stdout(&out).trim(), "C(RLRC)^inf");
}
