use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dirichlet_fe::cli::{decomposition_from_json, decomposition_to_json};
use dirichlet_fe::measures::{fourier_measure, TdeDecomposition, TdeTerm};
use dirichlet_fe::verify::VerificationReport;
use dirichlet_fe::Complex64;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirichlet-fe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn eval_chi_at_one_half() {
    let out = run(&["eval", "--fn", "chi", "--s", "0.5,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1+0i");
}

#[test]
fn eval_accepts_negative_arguments() {
    let out = run(&["eval", "--fn", "zeta", "--s", "-1,0"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let re: f64 = text.trim().split('+').next().unwrap().parse().unwrap();
    assert!((re + 1.0 / 12.0).abs() < 1e-14);
}

#[test]
fn eval_at_pole_is_numeric_failure() {
    let out = run(&["eval", "--fn", "zeta", "--s", "1,0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).contains("pole"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["eval", "--fn", "chi", "--s", "0.5,0", "--bogus", "1"][..],
        &["eval", "--fn", "hurwitz", "--s", "2,0"],
        &["eval", "--fn", "nonsense", "--s", "2,0"],
        &["eval", "--fn", "chi", "--s", "a,b"],
        &["frobnicate"],
        &["verify", "--suite", "no-such-suite", "--seed", "1"],
        &["table", "--fn", "zeta", "--sigma-range", "3:2:1"],
        &[
            "decompose",
            "--in",
            "/nonexistent/measure.json",
            "--window",
            "30",
        ],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&out).is_empty(), "{args:?}");
    }
}

#[test]
fn verify_theta_passes_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let out = run(&[
        "verify",
        "--suite",
        "theta",
        "--seed",
        "1",
        "--json",
        path_str(&json),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASSED"));
    let report: VerificationReport =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.suite, "theta");
    assert_eq!(report.seed, 1);
    assert!(report.passed());
}

#[test]
fn failing_suite_exits_1() {
    // The sigma = 200 asymptotic ratio is not yet within 5%.
    let out = run(&["verify", "--suite", "gk-asymptotics", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAILED"));
}

#[test]
fn decompose_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("dec.json");
    let input = fixture("tde_quarter_half_window30.json");
    let out = run(&[
        "decompose",
        "--in",
        path_str(&input),
        "--window",
        "30",
        "--out",
        path_str(&out_path),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let dec = decomposition_from_json(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(dec.len(), 1);
    let t = dec.terms()[0];
    assert!((t.d - 0.25).abs() < 1e-12 && (t.e - 0.5).abs() < 1e-12);
    assert!((t.coefficient - Complex64::new(1.0, 0.0)).norm() < 1e-10);
}

#[test]
fn decompose_rejects_malformed_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.json");
    std::fs::write(&input, "{\"atoms\": [").unwrap();
    let out = run(&["decompose", "--in", path_str(&input), "--window", "30"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fourier_matches_library() {
    let dec = TdeDecomposition::new([
        TdeTerm {
            d: 0.3,
            e: 0.2,
            coefficient: Complex64::new(0.5, -0.25),
        },
        TdeTerm {
            d: 0.1,
            e: 0.6,
            coefficient: Complex64::new(-1.0, 0.0),
        },
    ]);
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("dec.json");
    let output = dir.path().join("dual.json");
    std::fs::write(&input, decomposition_to_json(&dec)).unwrap();
    let out = run(&[
        "fourier",
        "--in",
        path_str(&input),
        "--out",
        path_str(&output),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let dual = decomposition_from_json(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(dual, fourier_measure(&dec));
}

#[test]
fn table_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("zeta.csv");
    let out = run(&[
        "table",
        "--fn",
        "zeta",
        "--sigma-range",
        "2:4:0.5",
        "--csv",
        path_str(&csv),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "sigma,re,im");
    assert_eq!(lines.len(), 6);
    let first: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first[0], 2.0);
    assert!((first[1] - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
    assert_eq!(first[2], 0.0);
}

#[test]
fn fit_shifts_recovers_single_shift() {
    let samples: Vec<String> = (5..=20)
        .map(|n| {
            let sigma = 2.0 * n as f64;
            let g = dirichlet_fe::dirichlet::zeta_shift_g(1, Complex64::new(sigma, 0.0)).unwrap();
            format!(r#"{{"sigma":{sigma},"re":{},"im":{}}}"#, g.re, g.im)
        })
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("samples.json");
    std::fs::write(&input, format!(r#"{{"samples":[{}]}}"#, samples.join(","))).unwrap();
    let out = run(&[
        "fit-shifts",
        "--in",
        path_str(&input),
        "--k-min",
        "-2",
        "--k-max",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let fit: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let coefficients = fit["coefficients"].as_array().unwrap();
    assert_eq!(coefficients.len(), 1);
    assert_eq!(coefficients[0]["k"], 1);
    assert!((coefficients[0]["re"].as_f64().unwrap() - 1.0).abs() < 1e-7);
}

#[test]
fn eval_series_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let series = dir.path().join("series.json");
    std::fs::write(
        &series,
        r#"{"terms":[{"lambda":1,"re":1,"im":0},{"lambda":2,"re":1,"im":0}]}"#,
    )
    .unwrap();
    let out = run(&[
        "eval",
        "--fn",
        "series",
        "--series",
        path_str(&series),
        "--s",
        "1,0",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "1.5+0i");
}
