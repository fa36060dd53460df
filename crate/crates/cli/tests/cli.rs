use std::io::Write;
use std::process::{Command, Output};

fn dualsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualsym")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_algebras_is_green() {
    let o = dualsym(&["verify", "algebras"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"].as_str().unwrap().ends_with("jacobi")));
    assert!(checks.iter().any(|c| c["name"].as_str().unwrap().ends_with("realization")));
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn verify_invariants_renders_zero_residuals() {
    let o = dualsym(&["verify", "invariants", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("suite,check,pass,detail\n"));
    assert!(text.contains("invariants,X invariant,true,residual = 0\n"));
}

#[test]
fn markdown_sections_follow_the_suites() {
    let o = dualsym(&["verify", "all", "--format", "markdown"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let order = ["## Symmetry algebras", "## Dynamical invariants", "## Bateman representation", "## Classical", "## Spectra", "## Infinite"];
    let pos: Vec<usize> = order.iter().map(|h| text.find(h).unwrap_or_else(|| panic!("{h} missing"))).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn equilibrium_simulation_is_all_zero() {
    let o = dualsym(&["simulate", "--x", "0", "--p-y", "0", "--t-end", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x,p_x,y,p_y,H"));
    for l in lines {
        assert!(l.split(',').skip(1).all(|v| v == "0"), "{l}");
    }
}

#[test]
fn simulation_summary_reports_drift_and_reduction() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("traj.csv");
    let json = dir.path().join("sum.json");
    let o = dualsym(&[
        "simulate", "--reduction", "--x0", "1", "--v0", "0",
        "--out", csv.to_str().unwrap(), "--summary", json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(v["energy_drift_relative"].as_f64().unwrap() <= 1e-9);
    assert!(v["reduction"]["max_deviation"].as_f64().unwrap() <= 1e-7);
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("t,x,p_x,y,p_y,H\n"));
}

#[test]
fn spectrum_grid_has_fifteen_rows() {
    let o = dualsym(&["spectrum", "--regime", "under", "--first=-2..2", "--lambda=-1,0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 15);
    assert!(rows.iter().all(|r| r["residual_max"].as_f64().unwrap() <= 1e-9));
}

#[test]
fn spectrum_examples() {
    let o = dualsym(&["spectrum", "--regime", "critical", "--first", "0", "--lambda", "0"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows[0]["E"].as_f64(), Some(0.0));
    let o = dualsym(&["spectrum", "--regime", "over", "--omega-tilde", "0.3", "--first", "1", "--lambda", "0"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((rows[0]["E"].as_f64().unwrap() - 0.3).abs() < 1e-12);
    assert_eq!(rows[0]["regime"], "over");
}

#[test]
fn exit_codes() {
    assert_eq!(dualsym(&["spectrum", "--first", "0.5"]).status.code(), Some(2));
    assert_eq!(dualsym(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(dualsym(&["verify", "all", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(dualsym(&["simulate", "--tol", "1e-300"]).status.code(), Some(3));
    assert_eq!(dualsym(&["--help"]).status.code(), Some(0));
    // the critical-regime spectra checks need gamma > 0
    assert_eq!(dualsym(&["verify", "spectra", "--gamma", "0"]).status.code(), Some(1));
}

#[test]
fn config_file_is_read_and_flags_win() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "[params]\ngamma = 0.8\n\n[run]\nformat = json\nseed = 3\n\n[spectrum]\nregime = under\nfirst = 2\nlambda = 0.5").unwrap();
    let path = f.path().to_str().unwrap();
    let o = dualsym(&["spectrum", "--config", path]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    let cap = (1.0f64 - 0.16).sqrt();
    assert!((rows[0]["E"].as_f64().unwrap() - (2.0 * cap + 0.5 * 0.8)).abs() < 1e-12);
    let o = dualsym(&["spectrum", "--config", path, "--gamma", "0.4", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("regime,first,lambda,E,residual_max,samples\n"));
    let e: f64 = text.lines().nth(1).unwrap().split(',').nth(3).unwrap().parse().unwrap();
    assert!((e - (2.0 * (1.0f64 - 0.04).sqrt() + 0.2)).abs() < 1e-12);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "[params]\ngama = 1").unwrap();
    assert_eq!(dualsym(&["verify", "algebras", "--config", bad.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_goes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let o = dualsym(&["verify", "appendix", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(p).unwrap().contains("truncation N = 3"));
}
