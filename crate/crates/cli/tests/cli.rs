use std::process::{Command, Output};

fn ssg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_algebra_passes_with_json_schema() {
    let o = ssg(&["verify", "--suite", "algebra"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "algebra");
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        let keys: Vec<&str> = c.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 6, "{keys:?}");
        for k in [
            "name",
            "anchor",
            "status",
            "max_residual",
            "tolerance",
            "samples",
        ] {
            assert!(c.get(k).is_some(), "missing {k}");
        }
        assert_eq!(c["status"], "pass");
    }
    assert!(checks.iter().any(|c| c["anchor"] == "b5"));
}

#[test]
fn verify_solutions_with_tolerance_override() {
    let o = ssg(&[
        "verify",
        "--suite",
        "solutions",
        "--tolerance",
        "elliptic=1e-8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let d3 = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["anchor"] == "d3")
        .unwrap();
    assert_eq!(d3["status"], "pass");
    assert_eq!(d3["tolerance"], 1e-8);
}

#[test]
fn impossible_tolerance_fails_with_report_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = ssg(&[
        "verify",
        "--suite",
        "elliptic",
        "--tolerance",
        "elliptic=1e-30",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["status"] == "fail"));
}

#[test]
fn verify_is_byte_reproducible() {
    let a = ssg(&["verify", "--suite", "reductions", "--seed", "7"]);
    let b = ssg(&[
        "verify",
        "--suite",
        "reductions",
        "--seed",
        "7",
        "--jobs",
        "1",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_markdown_and_csv() {
    let md = stdout(&ssg(&["verify", "--suite", "elliptic", "--format", "md"]));
    assert!(md.starts_with("# elliptic suite"));
    assert!(md.contains("wall ms"));
    let csv = stdout(&ssg(&["verify", "--suite", "elliptic", "--format", "csv"]));
    assert!(csv.starts_with("name,anchor,status,max_residual,tolerance,samples\n"));
}

#[test]
fn usage_errors_exit_2_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.out");
    let p = out.to_str().unwrap();
    for args in [
        vec!["verify", "--suite", "nope", "--out", p],
        vec!["verify", "--generators", "3", "--out", p],
        vec!["verify", "--tolerance", "exact", "--out", p],
        vec!["verify", "--tolerance", "fast=1e-3", "--out", p],
        vec!["verify", "--grid", "0", "--out", p],
        vec![
            "solve", "--case", "S4", "--ode", "rebp", "--range", "1:0:0.1", "--out", p,
        ],
        vec![
            "solve", "--case", "S4", "--ode", "rebp", "--range", "0:1", "--out", p,
        ],
        vec!["solve", "--case", "S8", "--ode", "ginv12", "--out", p],
        vec!["solve", "--case", "S99", "--ode", "ginv12", "--out", p],
        vec![
            "solve", "--case", "S12", "--ode", "ginv12", "--y0", "1,2", "--out", p,
        ],
        vec!["bogus"],
    ] {
        let o = ssg(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!out.exists(), "{args:?} wrote output");
    }
}

#[test]
fn solve_s12_csv_residual_column() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s12.csv");
    let o = ssg(&[
        "solve",
        "--case",
        "S12",
        "--ode",
        "ginv12",
        "--range",
        "0:2:0.01",
        "--k",
        "0.5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut rd = csv::Reader::from_path(&out).unwrap();
    assert_eq!(
        rd.headers().unwrap().iter().collect::<Vec<_>>(),
        [
            "sigma",
            "alpha",
            "g",
            "f",
            "residual_body",
            "residual_soul_norm"
        ]
    );
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 201);
    for r in &rows {
        let body: f64 = r[4].parse().unwrap();
        let soul: f64 = r[5].parse().unwrap();
        assert!(body.abs() <= 1e-6 && soul <= 1e-6);
    }
    let summary: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(summary["rows"], 201);
}

#[test]
fn solve_rebp_drift_in_json() {
    let o = ssg(&[
        "solve", "--case", "S4", "--ode", "rebp", "--K0", "0", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["summary"]["first_integral_drift"].as_f64().unwrap() <= 1e-8);
    assert_eq!(v["rows"].as_array().unwrap().len(), 401);
}

#[test]
fn solve_flags_near_singular_range() {
    let o = ssg(&[
        "solve",
        "--case",
        "S1",
        "--ode",
        "d16-nu",
        "--range",
        "0.5:30:0.01",
        "--sigma0",
        "1",
        "--y0",
        "1.5,0",
        "--dy0",
        "3,1",
        "--format",
        "json",
    ]);
    assert!(o.status.code() == Some(0) || o.status.code() == Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["summary"]["rows"].as_u64().unwrap() > 0);
    assert!(!v["summary"]["flagged"].as_array().unwrap().is_empty());
}

#[test]
fn list_contents() {
    let o = ssg(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("S8: P_x + eps*P_t + mu*Q_x"));
    assert!(s.contains("d18"));
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&ssg(&["list", "--format", "json"]))).unwrap();
    assert_eq!(v["subalgebras"].as_array().unwrap().len(), 21);
    let names: Vec<&str> = v["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"d18") && names.contains(&"ginv9"));
}
