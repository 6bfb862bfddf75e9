use std::path::Path;
use std::process::{Command, Output};

const H_ATOM: &str = r#"{
  "name": "H",
  "nuclei": [{"Z": 1.0, "xyz": [0.0, 0.0, 0.0]}],
  "basis": [{"center_idx": 0, "n_star": 1.0, "l": 0, "m": 0, "zeta": 1.0}],
  "mos": [{"coeffs": [1.0], "occupancy": 0.5}],
  "harmonics": "real"
}"#;

fn stoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stoint")).args(args).output().unwrap()
}

fn write_h(dir: &Path, name: &str, z: f64) -> String {
    let path = dir.join(name);
    std::fs::write(&path, H_ATOM.replace("[0.0, 0.0, 0.0]", &format!("[0.0, 0.0, {z}]"))).unwrap();
    path.to_str().unwrap().to_string()
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().filter(|l| !l.starts_with('#')).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn potential_grid_writes_expected_columns() {
    let dir = tempfile::tempdir().unwrap();
    let h = write_h(dir.path(), "h.json", 0.0);
    let out = stoint(&["potential-grid", &h, "--min", "3,0,0", "--max", "5,0,0", "--counts", "3,1,1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# schema_version=1"));
    let rows = data_rows(&text);
    assert_eq!(rows[0], ["x", "y", "z", "nuclear", "electronic", "total"]);
    assert_eq!(rows.len(), 4);
    for row in &rows[1..] {
        let r: f64 = row[0].parse().unwrap();
        let total: f64 = row[5].parse().unwrap();
        // neutral atom: only the screened tail e^{-2r}(1 + 1/r) remains
        let expected = (-2.0 * r).exp() * (1.0 + 1.0 / r);
        assert!((total - expected).abs() < 1e-8, "{r}: {total} vs {expected}");
    }
}

#[test]
fn convergence_reports_nonincreasing_residuals() {
    let out = stoint(&["convergence", "--N", "2..8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = data_rows(&text);
    assert_eq!(rows[0], ["N", "residual_l2", "nonincreasing"]);
    assert_eq!(rows.len(), 8);
    assert!(rows[1..].iter().all(|r| r[2] == "true"));
}

#[test]
fn three_center_demo_json() {
    let out = stoint(&["integral", "--case", "three-center-demo", "--truncation", "10"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "integral");
    assert!(v["result"].is_object() || v["result"].is_array());
}

#[test]
fn warnings_give_exit_code_three_unless_allowed() {
    let args = ["integral", "--case", "three-center-demo", "--truncation", "2"];
    let strict = stoint(&args);
    assert_eq!(strict.status.code(), Some(3), "{}", String::from_utf8_lossy(&strict.stderr));
    assert!(!strict.stdout.is_empty());
    let mut loose = args.to_vec();
    loose.push("--allow-warn");
    assert_eq!(stoint(&loose).status.code(), Some(0));
}

#[test]
fn bad_input_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, H_ATOM.replace("\"occupancy\": 0.5", "\"occupancy\": 0.5, \"spin\": 1")).unwrap();
    let h = write_h(dir.path(), "h.json", 3.0);
    let out = stoint(&["interact", bad.to_str().unwrap(), &h]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("spin"));
    assert_eq!(stoint(&["interact"]).status.code(), Some(2));
}

#[test]
fn interact_sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_h(dir.path(), "a.json", 0.0);
    let b = write_h(dir.path(), "b.json", 4.0);
    let sweep = dir.path().join("sweep.csv");
    let out = stoint(&[
        "interact", &a, &b, "--n-pair", "8", "--allow-warn", "--sweep-step", "0,0,1", "--sweep-count", "2", "--sweep-csv",
        sweep.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = data_rows(&std::fs::read_to_string(&sweep).unwrap());
    assert_eq!(rows[0], ["step", "separation", "u1", "u2", "u3", "u4", "total"]);
    let seps: Vec<f64> = rows[1..].iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(seps.len(), 2);
    assert!((seps[0] - 4.0).abs() < 1e-12 && (seps[1] - 5.0).abs() < 1e-12);
    let u1: f64 = rows[2][2].parse().unwrap();
    assert!((u1 - 0.2).abs() < 1e-12);
}
