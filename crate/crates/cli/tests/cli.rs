use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn pi2ch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pi2ch"))
        .args(args)
        .env_remove("PI2CH_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn shipped(name: &str) -> String {
    format!("{}/../../configs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json(path: PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_rows(path: PathBuf) -> (String, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(code(&pi2ch(&["--help"])), 0);
    assert_eq!(code(&pi2ch(&["simulate", "--help"])), 0);
    assert_eq!(code(&pi2ch(&["frobnicate"])), 1);
    assert_eq!(code(&pi2ch(&["simulate", "--n", "many"])), 1);
}

#[test]
fn config_errors_name_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let o = pi2ch(&["simulate", "--dt", "-1", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("time.dt"), "{}", stderr(&o));
    assert!(!out.exists());

    let bad = config(tmp.path(), "bad.json", r#"{"time": {"dtt": 0.1}}"#);
    let o = pi2ch(&["simulate", "--config", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("dtt"));

    let o = pi2ch(&[
        "verify",
        "--config",
        tmp.path().join("missing.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);

    let o = pi2ch(&["curvature", "--n", "7"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("grid"));
}

#[test]
fn thread_count_must_be_positive() {
    let o = Command::new(env!("CARGO_BIN_EXE_pi2ch"))
        .args(["verify", "--n", "16"])
        .env("PI2CH_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("PI2CH_THREADS"));
}

#[test]
fn constant_data_is_a_rotation() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("sim");
    let o = pi2ch(&[
        "simulate",
        "--config",
        &shipped("rotation.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));

    let (header, rows) = csv_rows(out.join("snapshots.csv"));
    assert_eq!(header, "t,x,u,r");
    assert_eq!(rows.len(), 6 * 128);
    assert!(rows
        .iter()
        .all(|r| (r[2] - 0.8).abs() <= 1e-12 && r[3].abs() <= 1e-12));

    let (header, rows) = csv_rows(out.join("diagnostics.csv"));
    assert_eq!(header, "t,energy,m1_residual,m2_residual,mean_r,min_phi_x");
    assert_eq!(rows.len(), 51);
    assert!(rows.iter().all(|r| (r[5] - 1.0).abs() <= 1e-12));

    let summary = json(out.join("summary.json"));
    assert_eq!(summary["halt"]["reason"], "completed");
    assert_eq!(summary["command"], "simulate");
}

#[test]
fn zero_data_stays_zero() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(
        tmp.path(),
        "zero.json",
        r#"{"grid": {"n": 32}, "time": {"dt": 0.01, "t_end": 0.1},
            "initial": {"u": {"preset": "zero"}, "rho": {"preset": "zero"}}}"#,
    );
    let out = tmp.path().join("zero");
    let o = pi2ch(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (_, rows) = csv_rows(out.join("snapshots.csv"));
    assert!(rows.iter().all(|r| r[2] == 0.0 && r[3] == 0.0));
    let (_, rows) = csv_rows(out.join("diagnostics.csv"));
    assert!(rows.iter().all(|r| r[1] == 0.0));
}

#[test]
fn steep_data_breaks_with_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    for cmd in ["simulate", "geodesic"] {
        let out = tmp.path().join(cmd);
        let o = pi2ch(&[
            cmd,
            "--config",
            &shipped("breaking.json"),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 2, "{cmd}: {}", stderr(&o));
        let summary = json(out.join("summary.json"));
        assert_eq!(summary["halt"]["reason"], "wave-breaking");
        let t = summary["halt"]["t"].as_f64().unwrap();
        assert!(t > 0.0 && t < 2.0);
        // what was computed before breaking is still written
        assert!(out.join("snapshots.csv").exists());
    }
}

#[test]
fn runaway_growth_is_an_instability() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(
        tmp.path(),
        "ceiling.json",
        r#"{"grid": {"n": 32}, "time": {"dt": 0.01, "t_end": 0.1}, "solver": {"sup_ceiling": 0.5}}"#,
    );
    let out = tmp.path().join("unstable");
    let o = pi2ch(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert_eq!(json(out.join("summary.json"))["halt"]["reason"], "instability");
}

#[test]
fn rotation_geodesic_matches_the_eulerian_run() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("geo");
    let o = pi2ch(&[
        "geodesic",
        "--config",
        &shipped("rotation.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = csv_rows(out.join("crosscheck.csv"));
    assert_eq!(header, "t,supnorm_diff_u,supnorm_diff_r");
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r[1] <= 1e-10 && r[2] <= 1e-10));
    for f in [
        "snapshots.csv",
        "eulerian_snapshots.csv",
        "diagnostics.csv",
        "summary.json",
    ] {
        assert!(out.join(f).exists(), "{f}");
    }
}

#[test]
fn curvature_scan_appends_the_counterexample() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(
        tmp.path(),
        "c.json",
        r#"{"grid": {"n": 64}, "curvature": {"pair_count": 10}}"#,
    );
    let out = tmp.path().join("c");
    let o = pi2ch(&[
        "curvature",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = csv_rows(out.join("curvature.csv"));
    assert_eq!(
        header,
        "pair_id,s_closed,s_direct,abs_diff,gamma_part,mu_correction"
    );
    assert_eq!(rows.len(), 11);
    let last = rows.last().unwrap();
    assert_eq!(last[0], 10.0);
    assert!((last[5] - std::f64::consts::PI.powi(2)).abs() <= 1e-9);
    let summary = json(out.join("summary.json"));
    assert!(summary["max_rel_diff"].as_f64().unwrap() <= 1e-7);

    // the reduction carries no counterexample row and no mean-value correction
    let cfg = config(
        tmp.path(),
        "ch.json",
        r#"{"grid": {"n": 64}, "curvature": {"pair_count": 10, "kind": "ch-reduced"}}"#,
    );
    let out = tmp.path().join("ch");
    assert_eq!(
        code(&pi2ch(&[
            "curvature",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ])),
        0
    );
    let (_, rows) = csv_rows(out.join("curvature.csv"));
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r[5].abs() <= 1e-12));
}

#[test]
fn verify_passes_on_a_small_grid() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("v");
    let o = pi2ch(&[
        "verify",
        "--config",
        &shipped("verify-n32.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report = json(out.join("verify.json"));
    assert_eq!(report["passed"], true);
    let ids = report["identities"].as_array().unwrap();
    assert_eq!(ids.len(), 10);
    assert!(ids.iter().all(|i| i["pass"] == true));
    assert!(!out.join("verify.csv").exists());
}

#[test]
fn injected_fault_is_caught() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("v");
    let o = pi2ch(&[
        "verify",
        "--n",
        "32",
        "--inject-fault",
        "b-sign",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("adjoint"), "{}", stderr(&o));
    let report = json(out.join("verify.json"));
    assert_eq!(report["passed"], false);
    assert_eq!(report["fault"], "b-sign");
    let failed: Vec<_> = report["identities"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|i| i["pass"] == false)
        .map(|i| i["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"adjoint"));
    assert!(!failed.contains(&"compatibility"));
}

#[test]
fn same_seed_same_bytes() {
    let tmp = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let out = tmp.path().join(name);
        let o = Command::new(env!("CARGO_BIN_EXE_pi2ch"))
            .args([
                "curvature",
                "--n",
                "64",
                "--seed",
                "3",
                "--out",
                out.to_str().unwrap(),
            ])
            .env("PI2CH_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(code(&o), 0);
        std::fs::read(out.join("curvature.csv")).unwrap()
    };
    assert_eq!(run("a", "1"), run("b", "4"));
    let other = tmp.path().join("c");
    pi2ch(&[
        "curvature",
        "--n",
        "64",
        "--seed",
        "4",
        "--out",
        other.to_str().unwrap(),
    ]);
    assert_ne!(run("d", "2"), std::fs::read(other.join("curvature.csv")).unwrap());
}
