use std::collections::HashMap;
use std::fs;
use std::process::{Command, Output};

use sqt_sim::output::PGM_LINE_LIMIT;

fn sqt_sim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqt-sim")).args(args).env_remove("SQT_SIM_WORKERS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn key_values(text: &str) -> HashMap<String, String> {
    text.lines()
        .map(|l| {
            let (k, v) = l.split_once('=').unwrap();
            (k.to_string(), v.to_string())
        })
        .collect()
}

fn field(kv: &HashMap<String, String>, k: &str) -> f64 {
    kv[k].parse().unwrap()
}

#[test]
fn metrics_for_a_moderate_resource() {
    let o = sqt_sim(&["metrics", "--r", "1", "--t", "0", "--R", "0", "--T", "1", "--gamma", "0.1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let kv = key_values(&stdout(&o));
    assert!((field(&kv, "F") - 0.8807970779778824).abs() < 1e-12);
    assert!((field(&kv, "L") - 0.21413041131121578).abs() < 1e-12);
    assert!((field(&kv, "S_ab") - 2f64.cosh().ln()).abs() < 1e-12);
    assert_eq!(kv["verdict"], "secure");
    for key in ["n_th", "N", "M", "S_ba", "r", "R", "T", "gamma", "t"] {
        assert!(kv.contains_key(key), "missing {key}");
    }
    assert!(stderr(&o).is_empty());
}

#[test]
fn metrics_for_the_classical_resource() {
    let o = sqt_sim(&["metrics", "--r", "0", "--t", "0"]);
    assert!(o.status.success());
    let kv = key_values(&stdout(&o));
    assert_eq!(field(&kv, "F"), 0.5);
    assert!((field(&kv, "L") + 1.0 / 6.0).abs() < 1e-15);
    assert_eq!(kv["verdict"], "not secure");
}

#[test]
fn metrics_json_matches_text() {
    let args = ["metrics", "--r", "3", "--t", "0", "--R", "0.1", "--T", "1", "--gamma", "0.1"];
    let text = key_values(&stdout(&sqt_sim(&args)));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&sqt_sim(&json_args))).unwrap();
    assert!((doc["L"].as_f64().unwrap() - 0.33086071017669856).abs() < 1e-12);
    assert_eq!(doc["L"].as_f64().unwrap(), field(&text, "L"));
    assert_eq!(doc["secure"], true);
    assert_eq!(doc["params"]["R"], 0.1);
}

#[test]
fn domain_errors_exit_with_two_and_name_the_parameter() {
    for (args, name) in [
        (vec!["metrics", "--r", "-1"], "r "),
        (vec!["metrics", "--gamma", "0"], "gamma"),
        (vec!["metrics", "--T", "-0.5"], "T "),
        (vec!["metrics", "--R", "-0.5"], "R "),
        (vec!["metrics", "--t", "-2"], "t "),
        (vec!["window", "--t-max", "-1"], "t_max must be positive"),
        (vec!["window", "--tol", "0"], "tol"),
        (vec!["window", "--grid", "4"], "grid"),
    ] {
        let o = sqt_sim(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = stderr(&o);
        assert!(err.contains(name), "{args:?}: {err}");
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["bogus"],
        vec!["metrics", "--axes", "t:0:1:2", "r:0:1:2"],
        vec!["sweep", "--axes", "t:0:1:2"],
        vec!["sweep", "--axes", "q:0:1:2", "r:0:1:2"],
        vec!["sweep", "--axes", "t:0:1:2", "t:0:2:2"],
        vec!["sweep", "--axes", "t:1:0:2", "r:0:1:2"],
        vec!["sweep", "--axes", "t:0:1:1", "r:0:1:2"],
        vec!["metrics", "--r", "abc"],
        vec!["sweep", "--format", "png"],
    ] {
        let o = sqt_sim(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
    let o = sqt_sim(&["sweep", "--axes", "t:zero:1", "r:0:1:2"]);
    assert!(stderr(&o).contains("'t:zero:1'"), "{}", stderr(&o));
}

#[test]
fn window_reports_a_single_interval_from_zero() {
    let o = sqt_sim(&["window", "--r", "3", "--R", "0.1", "--T", "1", "--gamma", "0.1", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "t_start,t_end");
    assert_eq!(lines.len(), 2);
    let (a, b) = lines[1].split_once(',').unwrap();
    assert_eq!(a.parse::<f64>().unwrap(), 0.0);
    assert!(b.parse::<f64>().unwrap() > 1.0);
}

#[test]
fn window_text_when_empty() {
    let o = sqt_sim(&["window", "--r", "0.01", "--R", "0.1", "--T", "1", "--gamma", "0.1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "no SQT window\n");
}

#[test]
fn small_sweep_csv_shape() {
    let o = sqt_sim(&["sweep", "--axes", "t:0:2:2", "r:0:4:2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(!out.contains('\r'));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "t,r,F,S_ab,S_ba,L,secure");
    let axes: Vec<(f64, f64)> = lines[1..]
        .iter()
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f.len(), 7);
            assert!(f[6] == "0" || f[6] == "1");
            (f[0].parse().unwrap(), f[1].parse().unwrap())
        })
        .collect();
    assert_eq!(axes, vec![(0.0, 0.0), (0.0, 4.0), (2.0, 0.0), (2.0, 4.0)]);
}

#[test]
fn sweep_grid_fills_missing_counts() {
    let o = sqt_sim(&["sweep", "--axes", "t:0:2", "R:0:1:3", "--grid", "4"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 4 * 3);
}

#[test]
fn sweep_files_are_reproducible_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["csv", "json", "pgm"] {
        let mut bytes = Vec::new();
        for workers in ["1", "3", "8"] {
            let path = dir.path().join(format!("{format}-{workers}"));
            let o = sqt_sim(&[
                "--workers",
                workers,
                "sweep",
                "--axes",
                "t:0:10:17",
                "R:0:1:9",
                "--T",
                "0.7",
                "--format",
                format,
                "--output",
                path.to_str().unwrap(),
            ]);
            assert!(o.status.success(), "{}", stderr(&o));
            assert!(o.stdout.is_empty());
            bytes.push(fs::read(&path).unwrap());
        }
        assert!(bytes.windows(2).all(|w| w[0] == w[1]), "{format}");
    }
}

#[test]
fn workers_from_environment() {
    let run = |env: &str| {
        Command::new(env!("CARGO_BIN_EXE_sqt-sim"))
            .args(["sweep", "--axes", "t:0:1:3", "r:0:4:3"])
            .env("SQT_SIM_WORKERS", env)
            .output()
            .unwrap()
    };
    let ok = run("2");
    assert!(ok.status.success());
    assert_eq!(ok.stdout, sqt_sim(&["sweep", "--axes", "t:0:1:3", "r:0:4:3"]).stdout);
    assert_eq!(run("none").status.code(), Some(2));
}

#[test]
fn pgm_layout() {
    let o = sqt_sim(&["sweep", "--axes", "t:0:20:40", "r:0:4:5", "--format", "pgm"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.len() <= PGM_LINE_LIMIT));
    let tokens: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).flat_map(str::split_whitespace).collect();
    assert_eq!(&tokens[..4], ["P2", "40", "5", "255"]);
    let px: Vec<u8> = tokens[4..].iter().map(|t| t.parse().unwrap()).collect();
    assert_eq!(px.len(), 200);
    assert!(px.iter().all(|&p| p == 0 || p == 255));
    // top row is r = 4 (secure near t = 0), bottom row is r = 0 (never secure)
    assert_eq!(px[0], 255);
    assert!(px[160..].iter().all(|&p| p == 0));
}

#[test]
fn sweep_json_nesting() {
    let o = sqt_sim(&["sweep", "--axes", "t:0:1:3", "gamma:0.1:0.3:2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["axes"][0]["name"], "t");
    assert_eq!(doc["axes"][1]["values"].as_array().unwrap().len(), 2);
    let l = doc["L"].as_array().unwrap();
    assert_eq!(l.len(), 3);
    assert_eq!(l[0].as_array().unwrap().len(), 2);
    assert_eq!(doc["fixed"]["r"], 3.0);
}

#[test]
fn unwritable_output_is_an_io_error_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let o = sqt_sim(&["sweep", "--axes", "t:0:1:2", "r:0:1:2", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains(path.to_str().unwrap()));
}

#[test]
fn in_process_run_matches_binary() {
    let args = ["sqt-sim", "metrics", "--r", "2", "--t", "3"];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(sqt_sim::run(args, &mut out, &mut err), 0);
    assert_eq!(out, sqt_sim(&args[1..]).stdout);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(sqt_sim::run(["sqt-sim", "--help"], &mut out, &mut err), 0);
    assert!(String::from_utf8(out).unwrap().contains("sweep"));
}
