use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pyroplate"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn error_name(out: &Output) -> String {
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).expect("JSON error on stderr");
    v["error"].as_str().unwrap().to_string()
}

#[test]
fn solve_writes_csv_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("profile.csv");
    let out = run(&[
        "solve",
        "--material",
        arg(&data("pzt.json")),
        "--problem",
        arg(&data("i13.json")),
        "--samples",
        "11",
        "--out",
        arg(&csv_path),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0].len(), 18);
    let (first, last) = (&rows[0], &rows[10]);
    assert_eq!(first[0], -1e-3);
    assert_eq!(last[0], 1e-3);
    // upper face: T, φ and the tractions t1, t6, t5 of the x1 normal
    assert!((last[1] - 20.0).abs() < 1e-12);
    assert!((last[2] - 50.0).abs() < 1e-12);
    assert!((last[6] - 1e6).abs() < 1e-6);
    assert!((last[11] + 2e6).abs() < 1e-6);
    assert!((last[10] - 5e5).abs() < 1e-6);
    // lower face: displacements, inflow and charge
    assert!((first[3] - 1e-6).abs() < 1e-18);
    assert!((first[4] + 1e-6).abs() < 1e-18);
    assert!((first[5] - 2e-6).abs() < 1e-18);
    assert!((-first[15] - 3e3).abs() < 1e-9);
    assert!((-first[12] - 1e-3).abs() < 1e-15);

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("profile.json")).unwrap()).unwrap();
    assert_eq!(report["problem"], "I.1.3");
    assert!(report["boundary_check"]["max_relative"].as_f64().unwrap() < 1e-10);
    assert!(report["reduced"]["a"].as_f64().unwrap() > 0.0);
    let lower_t = report["lower_face"]["T"].as_f64().unwrap();
    assert!((lower_t - first[1]).abs() < 1e-9 * lower_t.abs().max(1.0));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "solve",
        "--material",
        arg(&data("pzt.json")),
        "--problem",
        arg(&data("ii33.json")),
        "--samples",
        "31",
    ]
    .map(String::from);
    let a = bin().args(&args).output().unwrap();
    let b = bin().args(&args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn control_hits_target() {
    for p in ["i13.json", "i33.json", "ii13.json", "ii33.json"] {
        let out = run(&["control", "--material", arg(&data("pzt.json")), "--problem", arg(&data(p))]);
        assert!(out.status.success(), "{p}: {}", String::from_utf8_lossy(&out.stderr));
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["pass"], true);
        assert!(v["residual"].as_f64().unwrap() <= 1e-10);
    }
}

#[test]
fn verify_reports_second_order() {
    let out = run(&[
        "verify",
        "--material",
        arg(&data("pzt.json")),
        "--problem",
        arg(&data("ii13.json")),
        "--grid",
        "256",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let order = v["order"].as_f64().unwrap();
    assert!((1.8..=2.2).contains(&order), "{order}");
    assert_eq!(v["grid"], serde_json::json!([128, 256]));
}

#[test]
fn verify_failure_exit_code() {
    let out = run(&[
        "verify",
        "--material",
        arg(&data("pzt.json")),
        "--problem",
        arg(&data("i13.json")),
        "--grid",
        "16",
        "--tol",
        "1e-12",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(error_name(&out), "VerificationFailure");
}

#[test]
fn sweep_rows_follow_schedule() {
    let out = run(&[
        "sweep",
        "--material",
        arg(&data("pzt.json")),
        "--problem",
        arg(&data("i13.json")),
        "--schedule",
        arg(&data("ramp_i13.json")),
        "--times",
        "5",
        "--samples",
        "3",
        "--max-rate",
        "1e6",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stderr.is_empty());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("tau,x,T,phi"));
    assert_eq!(lines.len(), 1 + 5 * 3);
    // upper-face temperature follows the ramp: 0, 20, 40, 40, 40 at tau = 0, 5, 10, 15, 20
    let upper: Vec<f64> = lines[1..]
        .chunks(3)
        .map(|c| c[2].split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(upper, vec![0.0, 20.0, 40.0, 40.0, 40.0]);

    let slow = run(&[
        "sweep",
        "--material",
        arg(&data("pzt.json")),
        "--problem",
        arg(&data("i13.json")),
        "--schedule",
        arg(&data("ramp_i13.json")),
        "--max-rate",
        "1",
    ]);
    assert!(slow.status.success());
    assert!(String::from_utf8_lossy(&slow.stderr).contains("warning: Tbar"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = run(&["solve", "--material", "/no/such/file.json", "--problem", arg(&data("i13.json"))]);
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(error_name(&missing), "InputError");

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"orientation": "thickness1", "variant": "I", "h": 0.001, "bogus": 1}"#).unwrap();
    let schema = run(&["solve", "--material", arg(&data("pzt.json")), "--problem", arg(&bad)]);
    assert_eq!(schema.status.code(), Some(2));
    assert_eq!(error_name(&schema), "SchemaError");

    let odd = run(&[
        "verify",
        "--material",
        arg(&data("pzt.json")),
        "--problem",
        arg(&data("i13.json")),
        "--grid",
        "17",
    ]);
    assert_eq!(odd.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let mut m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(data("pzt.json")).unwrap()).unwrap();
    m["c66"] = serde_json::json!(1.0e10);
    let mat = dir.path().join("asym.json");
    std::fs::write(&mat, m.to_string()).unwrap();
    let out = run(&["solve", "--material", arg(&mat), "--problem", arg(&data("i13.json"))]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_name(&out), "SymmetryViolation");

    m["c66"] = serde_json::json!(2.325e10);
    m["omega1"] = serde_json::json!(0.0);
    std::fs::write(&mat, m.to_string()).unwrap();
    let out = run(&["solve", "--material", arg(&mat), "--problem", arg(&data("i13.json"))]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_name(&out), "DegenerateCoupling");

    // target on the upper face, where T is pinned to Tbar
    let prob = dir.path().join("pinned.json");
    let mut p: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(data("i13.json")).unwrap()).unwrap();
    p["control"] = serde_json::json!({"free": "qbar", "target": "temperature", "x": 0.001, "value": 1.0});
    std::fs::write(&prob, p.to_string()).unwrap();
    let out = run(&["control", "--material", arg(&data("pzt.json")), "--problem", arg(&prob)]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_name(&out), "Uncontrollable");
}
