use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extremal")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn eval_u_defect_is_nonnegative() {
    let o = bin(&["eval", "--kind", "U", "--grid", "-5:5:1001"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("x,value,target,defect\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 1001);
    for r in &rows {
        let d: f64 = r[3].parse().unwrap();
        assert!(d >= -1e-9, "{r:?}");
    }
    // log|0| = −∞ and the defect there is +∞
    assert!(rows.iter().any(|r| r[0] == "0" && r[2] == "-inf" && r[3] == "inf"));
}

#[test]
fn eval_lhat_vanishes_outside_band() {
    let o = bin(&["eval", "--kind", "Lhat", "--lambda", "1", "--grid", "-1.5:1.5:7"]);
    assert_eq!(o.status.code(), Some(0));
    for r in csv_rows(&stdout(&o)) {
        let t: f64 = r[0].parse().unwrap();
        let v: f64 = r[1].parse().unwrap();
        if t.abs() >= 1.0 {
            assert_eq!(v, 0.0);
        } else {
            assert!(v > 0.0);
        }
    }
}

#[test]
fn eval_p_at_origin() {
    let o = bin(&["eval", "--kind", "p", "--lambda", "2", "--grid", "0:1:5"]);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 5);
    let v: f64 = rows[0][1].parse().unwrap();
    assert!((v - (1.0 / 1f64.tanh() - 1.0)).abs() < 1e-15);
}

#[test]
fn eval_with_target_and_json() {
    let o = bin(&["eval", "--kind", "L", "--lambda", "0.5", "--grid", "-3:3:13", "--with-target", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 13);
    for r in rows {
        assert!(r["defect"].as_f64().unwrap() >= -1e-14);
    }
    let g = bin(&["eval", "--kind", "G", "--measure", "power:0.5", "--grid", "0.5:4:8", "--with-target"]);
    assert_eq!(g.status.code(), Some(0));
    assert_eq!(csv_rows(&stdout(&g)).len(), 8);
}

#[test]
fn coeffs_log_sine_majorant() {
    let o = bin(&["coeffs", "--kind", "uN", "--N", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 17);
    let c0: f64 = rows.iter().find(|r| r[0] == "0").unwrap()[1].parse().unwrap();
    assert!((c0 - 2f64.ln() / 9.0).abs() < 1e-10);
}

#[test]
fn coeffs_majorant_admissibility() {
    let ok = bin(&["coeffs", "--kind", "h", "--measure", "power:1.5", "--N", "4"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(csv_rows(&stdout(&ok)).len(), 9);
    let bad = bin(&["coeffs", "--kind", "h", "--measure", "haar", "--N", "4"]);
    assert_eq!(bad.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&bad.stderr);
    assert!(msg.contains("haar") && msg.contains("integrability"), "{msg}");
}

#[test]
fn bounds_hls_haar_case() {
    let o = bin(&["bounds", "--kind", "hls", "--sigma", "1", "--delta", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let lower = json(&o)["results"]["lower"].as_f64().unwrap();
    assert!((lower - 4f64.ln()).abs() < 1e-15);
}

#[test]
fn bounds_et_and_form_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let roots = write(&dir, "roots.csv", "re,im\n1.3,0.2\n-0.4,0.4\n0,-0.99\n0.7,0.7\n");
    let o = bin(&["bounds", "--kind", "et", "--roots", &roots, "--N", "16"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["results"]["total"].as_f64().unwrap() >= v["results"]["sup_estimate"].as_f64().unwrap());

    let pts = write(&dir, "p.csv", "xi\n0\n1\n2.5\n3.5\n7\n");
    let coef = write(&dir, "a.csv", "re,im\n1,0\n-1,0\n1,0.5\n-1,-0.5\n0.2,0\n");
    let o = bin(&["bounds", "--kind", "form", "--measure", "haar", "--delta", "1", "--points", &pts, "--coeffs", &coef]);
    assert_eq!(o.status.code(), Some(0));
    let checks = &json(&o)["checks"];
    assert!(checks[0]["observed"].as_f64().unwrap() >= -1e-9);
}

#[test]
fn parse_errors_report_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let roots = write(&dir, "roots.csv", "re,im\n1,0\n0.5,oops\n");
    let o = bin(&["bounds", "--kind", "et", "--roots", &roots]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    let w = write(&dir, "w.csv", "lambda,weight\n1,1\n1,2\n");
    let measure = format!("atomic:{w}");
    let o = bin(&["eval", "--kind", "q", "--measure", &measure, "--grid", "0.1:0.4:3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn measures_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(&dir, "atoms.csv", "lambda,weight\n0.5,1\n2,0.25\n");
    let measure = format!("atomic:{w}");
    let o = bin(&["coeffs", "--kind", "h", "--measure", &measure, "--N", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = bin(&["eval", "--kind", "H", "--measure", &measure, "--grid", "-2:2:5", "--with-target"]);
    assert_eq!(o.status.code(), Some(0));
    for r in csv_rows(&stdout(&o)) {
        assert!(r[3].parse::<f64>().unwrap() >= -1e-12);
    }
}

#[test]
fn usage_errors_leave_no_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let out_s = out.to_str().unwrap();
    for args in [
        vec!["eval", "--kind", "X", "--grid", "0:1:3", "--out", out_s],
        vec!["eval", "--kind", "L", "--grid", "0:1", "--lambda", "1", "--out", out_s],
        vec!["eval", "--kind", "L", "--grid", "0:1:3", "--out", out_s],
        vec!["coeffs", "--kind", "h", "--measure", "haar", "--N", "2", "--out", out_s],
    ] {
        let o = bin(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!Path::new(&out).exists(), "{args:?}");
    }
    let o = bin(&["eval", "--kind", "M", "--lambda", "1", "--grid", "0:1:3", "--out", out_s]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 4);
}

#[test]
fn verify_suites() {
    let o = bin(&["verify", "--suite", "kernels", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["pass"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 3);

    let o = bin(&["verify", "--suite", "forms", "--seed", "11"]);
    let v = json(&o);
    let tables = v["criteria"][0]["tables"].as_array().unwrap();
    assert!(tables.iter().any(|t| t["name"] == "c8.sharpness_ratio"));
    // exit status mirrors the report
    let expected = if v["pass"] == true { 0 } else { 1 };
    assert_eq!(o.status.code(), Some(expected));
}
