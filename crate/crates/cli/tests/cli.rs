use std::path::Path;
use std::process::Command;

use ropelength::{io, Polygon};
use ropelength_cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ropelength").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn thickness_of_unit_square() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("square.txt");
    io::write_polygon(&file, &Polygon::regular(4).unwrap()).unwrap();
    let (code, out, _) = call(&["thickness", path_str(&file)]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["delta_n"].as_f64().unwrap() - 0.125).abs() < 1e-12);
    assert_eq!(v["binding"], "curvature");
    assert_eq!(v["simple"], true);
}

#[test]
fn ngon_table_rows() {
    let (code, out, _) = call(&["ngon-table", "--min", "3", "--max", "10"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 8);
    for r in rows {
        let diff: f64 = r.split(',').nth(3).unwrap().parse().unwrap();
        assert!(diff < 1e-9, "{r}");
    }
}

#[test]
fn input_errors_exit_1() {
    let (code, _, err) = call(&["thickness", "/nonexistent/poly.txt"]);
    assert_eq!(code, 1);
    assert!(err.contains("/nonexistent/poly.txt"), "{err}");
    let (code, _, err) = call(&["frobnicate"]);
    assert_eq!(code, 1);
    assert!(err.contains("Usage"), "{err}");
    assert_eq!(call(&["ngon-table", "--min", "2"]).0, 1);
    assert_eq!(call(&["inscribe", "--curve", "square", "--n", "8"]).0, 1);
    assert_eq!(call(&["schur-campaign", "--mode", "loose"]).0, 1);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "0 0 0\n1 0 0\n0 5 0\n").unwrap();
    let (code, _, err) = call(&["thickness", path_str(&bad)]);
    assert_eq!(code, 1);
    assert!(err.contains("not equilateral"), "{err}");
}

#[test]
fn inscribe_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("tref.txt");
    let curve = dir.path().join("curve.txt");
    let (code, _, err) = call(&[
        "inscribe",
        "--curve",
        "trefoil",
        "--n",
        "48",
        "--samples",
        "4096",
        "--out",
        path_str(&poly),
        "--curve-out",
        path_str(&curve),
    ]);
    assert_eq!(code, 0, "{err}");
    let p = io::read_polygon(&poly).unwrap();
    assert_eq!(p.n(), 48);
    assert!((p.length() - 1.0).abs() < 1e-12);
    assert!(std::fs::read_to_string(&curve)
        .unwrap()
        .starts_with("# samples=4096"));
    // re-reading the emitted polygon reproduces the report
    let a = ropelength::thickness::delta_n(&p);
    let (_, out, _) = call(&["thickness", path_str(&poly)]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["inv_delta_n"].as_f64().unwrap() - a.inv_delta_n).abs() <= 1e-12 * a.inv_delta_n);
}

#[test]
fn gamma_on_circle() {
    let (code, out, _) = call(&[
        "gamma",
        "--curve",
        "circle",
        "--ns",
        "16,8",
        "--m-proxy",
        "1024",
    ]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows[0][0], "8");
    assert_eq!(rows[1][0], "16");
    let inv: f64 = rows[0][2].parse().unwrap();
    assert!((inv - 16.0 * (std::f64::consts::PI / 8.0).tan()).abs() < 1e-8);
    let (code, out, _) = call(&[
        "gamma",
        "--curve",
        "circle",
        "--ns",
        "8",
        "--m-proxy",
        "1024",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"][0]["n"], 8);
}

#[test]
fn schur_campaign_summary_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("margins.csv");
    let (code, out, _) = call(&[
        "schur-campaign",
        "--cases",
        "200",
        "--seed",
        "9",
        "--csv",
        path_str(&csv),
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("check=strict cases=200 "), "{out}");
    assert!(out.contains("violations=0"));
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 201);
    let (code, out, _) = call(&["schur-campaign", "--cases", "200", "--sphere"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("check=sphere"));
}

#[test]
fn anneal_writes_best_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let start = dir.path().join("start.txt");
    let best = dir.path().join("best.txt");
    let trace = dir.path().join("trace.csv");
    let p0 = ropelength::optimize::random_simple_polygon(9, 30, 4).unwrap();
    io::write_polygon(&start, &p0).unwrap();
    let args = [
        "anneal",
        "--input",
        path_str(&start),
        "--seed",
        "2",
        "--steps",
        "400",
        "--out",
        path_str(&best),
        "--trace",
        path_str(&trace),
    ];
    let (code, out, err) = call(&args);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("proposals=400"), "{out}");
    let text = std::fs::read_to_string(&trace).unwrap();
    assert!(text.starts_with("step,temperature,objective,accepted,i,j,theta"));
    assert_eq!(text.lines().count(), 401);
    let p = io::read_polygon(&best).unwrap();
    assert!(ropelength::thickness::is_simple(&p, 1e-9));
    // same seed, same output
    let (_, again, _) = call(&args);
    assert_eq!(out, again);
    assert_eq!(std::fs::read_to_string(&trace).unwrap(), text);
}

#[test]
fn binary_exit_codes_and_thread_variable() {
    let exe = env!("CARGO_BIN_EXE_ropelength");
    let ok = Command::new(exe)
        .args(["ngon-table", "--min", "3", "--max", "4"])
        .env("ROPELENGTH_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).lines().count(), 3);
    let bad = Command::new(exe)
        .args(["ngon-table"])
        .env("ROPELENGTH_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let missing = Command::new(exe)
        .args(["thickness", "nope.txt"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));
}
