use serde_json::Value;
use std::process::{Command, Output};

fn bouncer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bouncer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = bouncer(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

/// Column `name` of a CSV table as numbers.
fn column(text: &str, name: &str) -> Vec<f64> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let idx = r.headers().unwrap().iter().position(|h| h == name).unwrap();
    r.records().map(|rec| rec.unwrap()[idx].parse().unwrap()).collect()
}

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

#[test]
fn table_one_energies() {
    let d = [1.4066, 2.4592, 3.3211, 4.0827, 4.7790, 5.4278, 6.0400];
    let g = [1.3356, 2.3888, 3.2511, 4.0131, 4.7098, 5.3590, 5.9713];
    let o = bouncer(&["spectrum", "--lambda", "0.11928", "--n-max", "7", "--dirichlet-reference"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let e = column(&text, "energy_pev");
    let ed = column(&text, "energy_dirichlet_pev");
    for i in 0..7 {
        assert!((round4(e[i]) - g[i]).abs() <= 1e-4 + 1e-12);
        assert!((round4(ed[i]) - d[i]).abs() <= 1e-4 + 1e-12);
    }
    let o = bouncer(&["spectrum", "--lambda", "0", "--n-max", "7"]);
    let e = column(&stdout(&o), "energy_pev");
    assert!((e[0] - 1.4066).abs() < 1e-4);
}

#[test]
fn neumann_limit_row() {
    let o = bouncer(&["spectrum", "--lambda", "1e9", "--n-max", "1"]);
    let z = column(&stdout(&o), "zeta");
    assert!((z[0] + 1.01879).abs() < 1e-5);
    let o = bouncer(&["spectrum", "--lambda", "neumann", "--n-max", "2"]);
    assert!(o.status.success());
}

#[test]
fn sweeps() {
    let o = bouncer(&["sweep", "--lambda-min", "0", "--lambda-max", "1", "--steps", "41", "--observable", "transition(1,6)"]);
    let v = column(&stdout(&o), "value");
    assert!(v.windows(2).all(|w| w[1] >= w[0]));
    let o = bouncer(&["sweep", "--lambda-min", "0", "--lambda-max", "1", "--steps", "2", "--observable", "transition(1,2)"]);
    assert!((column(&stdout(&o), "value")[0] - 254.54).abs() < 0.05);
    let o = bouncer(&["sweep", "--lambda-min", "0", "--lambda-max", "1", "--steps", "2", "--observable", "uncertainty_bound(1)"]);
    assert_eq!(column(&stdout(&o), "value")[0], 0.5);
    let o = bouncer(&["sweep", "--lambda-min", "-0.5", "--lambda-max", "0.5", "--steps", "3", "--observable", "energy(1)"]);
    assert!(o.status.success());
}

#[test]
fn fit_json() {
    let v = json(&["fit", "--nu", "972.842", "--sigma", "0.0456057", "--transition", "1:6"]);
    let row = &v["rows"][0];
    let l = row["lambda_min"].as_f64().unwrap();
    assert!((0.105..=0.125).contains(&l));
    assert!(row["chi2_min"].as_f64().unwrap() < 1e-6);
    assert!(row["delta_lambda"].as_f64().unwrap() > 0.0);
    assert_eq!(v["meta"]["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn fit_recovers_dirichlet() {
    let o = bouncer(&["--precision", "17", "sweep", "--lambda-min", "0", "--lambda-max", "1", "--steps", "2", "--observable", "transition(1,6)"]);
    let nu = column(&stdout(&o), "value")[0];
    let v = json(&["fit", "--nu", &nu.to_string(), "--sigma", "0.0456057"]);
    assert!(v["rows"][0]["lambda_min"].as_f64().unwrap().abs() < 2e-5);
}

#[test]
fn two_measurement_fit() {
    let v = json(&["fit", "--nu", "972.842", "--sigma", "0.0456057", "--extra", "866.0,1.0,2:7"]);
    assert_eq!(v["rows"][0]["measurements"].as_i64(), Some(2));
}

#[test]
fn extract_g_and_penetration() {
    let o = bouncer(&["extract-g", "--nu", "972.842"]);
    assert!((column(&stdout(&o), "g")[0] - 9.8125).abs() < 0.0015);
    let o = bouncer(&["penetration", "--lambda", "0.11928"]);
    let text = stdout(&o);
    assert!((column(&text, "p_in")[0] - 0.00082).abs() < 2e-5);
    assert!((column(&text, "kappa0")[0] / 1428451.34430 - 1.0).abs() < 1e-4);
    assert_eq!(bouncer(&["penetration", "--lambda", "0"]).status.code(), Some(1));
}

#[test]
fn other_tables() {
    let o = bouncer(&["phase-map"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 32 * 16);
    let o = bouncer(&["elements", "--lambda", "0.3", "--n-max", "2", "--operator", "x,p"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 8);
    let o = bouncer(&["eigenfunction", "--lambda", "0.5", "--n-max", "2", "--points", "11"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 22);
    let o = bouncer(&["uncertainty", "--lambda", "0", "--n-max", "3"]);
    assert!(column(&stdout(&o), "bound").iter().all(|&b| b == 0.5));
    let o = bouncer(&["sumrule", "--kind", "trk", "--lambda", "0.11928", "--m-max", "500"]);
    assert!((column(&stdout(&o), "lhs_total")[0] - 1.0).abs() < 1e-3);
}

#[test]
fn deterministic_output() {
    let args = ["--format", "json", "spectrum", "--lambda", "0.7", "--n-max", "5"];
    assert_eq!(bouncer(&args).stdout, bouncer(&args).stdout);
}

#[test]
fn precision_flag() {
    let o = bouncer(&["--precision", "4", "spectrum", "--lambda", "0", "--n-max", "1"]);
    assert!(stdout(&o).contains("-2.338,"));
}

#[test]
fn usage_errors() {
    assert_eq!(bouncer(&["spectrum"]).status.code(), Some(1));
    assert_eq!(bouncer(&["nonsense"]).status.code(), Some(1));
    assert_eq!(bouncer(&["spectrum", "--lambda", "x"]).status.code(), Some(1));
    let o = bouncer(&["sweep", "--lambda-min", "0", "--lambda-max", "1", "--steps", "1", "--observable", "energy(1)"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(bouncer(&["--help"]).status.code(), Some(0));
}

#[test]
fn fit_failure_is_numerical() {
    let o = bouncer(&["fit", "--nu", "5000", "--sigma", "0.01"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file() {
    let dir = std::env::temp_dir().join(format!("bouncer-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "[constants]\ngravity = 9.8\n").unwrap();
    let o = bouncer(&["--config", bad.to_str().unwrap(), "spectrum", "--lambda", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("gravity"));

    let good = dir.join("good.toml");
    std::fs::write(&good, "format = \"json\"\n[constants]\ng = 19.60985\n").unwrap();
    let v = json(&["--config", good.to_str().unwrap(), "spectrum", "--lambda", "0", "--n-max", "1"]);
    let e = v["rows"][0]["energy_pev"].as_f64().unwrap();
    assert!((e / 1.406553843 - 2f64.powf(2.0 / 3.0)).abs() < 1e-8);
    let plain = json(&["--format", "json", "spectrum", "--lambda", "0", "--n-max", "1"]);
    assert_ne!(v["meta"]["config_hash"], plain["meta"]["config_hash"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_suite() {
    let v = json(&["verify"]);
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["passed"] == Value::Bool(true)));
    let trk = rows
        .iter()
        .find(|r| r["check"].as_str().unwrap().starts_with("trk(n=1,lambda=0.11928"))
        .unwrap();
    assert!((trk["value"].as_f64().unwrap() - 1.0).abs() < 1e-3);

    let o = bouncer(&["verify", "--tamper-root", "1e-6"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let root = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check"] == "root-residual")
        .unwrap()
        .clone();
    assert_eq!(root["passed"], Value::Bool(false));
}
