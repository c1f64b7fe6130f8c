// End-to-end runs of the logdamp binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logdamp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Field names listed in an after-help table: leading two-space lines whose
/// first column may hold several comma-separated names.
fn documented(help: &str) -> Vec<String> {
    help.lines()
        .filter(|l| {
            l.starts_with("  ") && !l.starts_with("   ") && !l.trim_start().starts_with('-')
        })
        .filter_map(|l| l.trim_start().split("  ").next())
        .flat_map(|c| {
            c.split(", ")
                .map(|s| s.trim().to_string())
                .collect::<Vec<_>>()
        })
        .collect()
}

fn help(cmd: &str) -> String {
    let o = run(&[cmd, "--help"]);
    assert_eq!(o.status.code(), Some(0));
    stdout(&o)
}

#[test]
fn thresholds_rows() {
    let o = run(&["thresholds"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,value,residual"));
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    let names: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(names, ["delta0", "delta", "eta", "r_unit"]);
    for r in &rows {
        let res: f64 = r[2].parse().unwrap();
        assert!(res.abs() < 1e-12, "{r:?}");
    }
    let v: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(v[2] < v[1] && v[1] < v[0] && v[0] < v[3]);
}

#[test]
fn rates_both_regime() {
    let o = run(&[
        "rates",
        "--n",
        "4",
        "--l",
        "1",
        "--data-u0",
        "gaussian:alpha=1",
        "--data-u1",
        "gaussian:alpha=1",
    ]);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["regime"], "Both");
    assert_eq!(j["profile"], "phi");
    assert_eq!(j["theory_exponent"], -1.5);
    assert_eq!(j["slope_convention"], "l2_norm");
    let pass = j["pass"].as_bool().unwrap();
    assert_eq!(o.status.code(), Some(if pass { 0 } else { 1 }));
}

#[test]
fn conflicting_data_flags() {
    let o = run(&[
        "solve",
        "--n",
        "2",
        "--data",
        "gaussian",
        "--data-u0",
        "zero",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("--data") && e.contains("--data-u0"), "{e}");
}

#[test]
fn bad_selector_is_usage_error() {
    let o = run(&["solve", "--n", "2", "--data", "cauchy", "--k-max", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cauchy"));
    let o = run(&["mode", "--r", "-1", "--t", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn csv_columns_documented_with_full_precision() {
    let o = run(&["solve", "--n", "2", "--k-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(header, "t,value,err_est,n,kind,zone");
    let fields = documented(&help("solve"));
    for col in header.split(',') {
        assert!(fields.iter().any(|f| f == col), "solve help misses {col}");
    }
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        let cells: Vec<&str> = row.split(',').collect();
        for cell in &cells[..3] {
            let mant = cell
                .split('e')
                .next()
                .unwrap()
                .trim_start_matches('-')
                .replace('.', "");
            assert_eq!(mant.len(), 17, "{cell}");
        }
        let t: f64 = cells[0].parse().unwrap();
        assert!(t >= 10.0);
    }
}

#[test]
fn mode_and_thresholds_columns_documented() {
    let o = run(&["mode", "--r", "1", "--t", "5", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let header = text.lines().next().unwrap();
    let fields = documented(&help("mode"));
    for col in header.split(',') {
        assert!(fields.iter().any(|f| f == col), "mode help misses {col}");
    }
    let h = help("thresholds");
    for col in ["name", "value", "residual"] {
        assert!(h.contains(col), "thresholds help misses {col}");
    }
}

#[test]
fn json_fields_documented() {
    let o = run(&[
        "rates", "--n", "2", "--l", "1", "--t-min", "100", "--t-max", "1000",
    ]);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let fields = documented(&help("rates"));
    for key in j.as_object().unwrap().keys() {
        assert!(fields.iter().any(|f| f == key), "rates help misses {key}");
    }
    let fields = documented(&help("verify"));
    for key in [
        "check_id",
        "status",
        "observed",
        "expected",
        "tolerance",
        "seconds",
    ] {
        assert!(fields.iter().any(|f| f == key), "verify help misses {key}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["thresholds"][..],
        &[
            "mode", "--r", "0.3", "--t", "50", "--u0", "1", "--u1", "-1", "--oracle",
        ][..],
        &[
            "profile-diff",
            "--n",
            "3",
            "--profile",
            "phi1",
            "--k-max",
            "4",
        ][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let h = stdout(&o);
    for cmd in [
        "thresholds",
        "mode",
        "solve",
        "profile-diff",
        "rates",
        "verify",
    ] {
        assert!(h.contains(cmd), "top help misses {cmd}");
    }
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
