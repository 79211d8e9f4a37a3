use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tridiag-spectra"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn coulomb_ladder_rows() {
    let out = run(&["spectrum", "--case", "coulomb1", "--Z", "-1", "--l", "0", "--n-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,E"));
    let r = rows(&text);
    assert_eq!(r.len(), 3);
    for (row, want) in r.iter().zip([-0.5, -0.125, -1.0 / 18.0]) {
        assert!((row[1] - want).abs() < 1e-16, "{row:?}");
    }
}

fn trapezoid(r: &[Vec<f64>]) -> f64 {
    r.windows(2).map(|w| 0.5 * (w[1][0] - w[0][0]) * (w[0][1] + w[1][1])).sum()
}

#[test]
fn density_file_has_unit_mass() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.csv");
    let out = run(&[
        "density", "--case", "hulthen2", "--mu", "1.0", "--nu", "1.5", "--gamma", "0.2", "--N", "51", "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().next().unwrap().contains("N=51"));
    let r = rows(&text);
    assert!(r.iter().all(|row| row[1] >= 0.0));
    assert!((trapezoid(&r) - 1.0).abs() < 1e-6);
    // no temp files left behind
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn several_gammas_write_one_file_each() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("curves");
    let out = run(&["density", "--case", "hulthen1", "--mu", "1", "--nu", "1.5", "--gamma", "0,0.1,0.2", "--output", sub.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut names: Vec<String> = std::fs::read_dir(&sub).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names.len(), 3);
    for n in &names {
        let r = rows(&std::fs::read_to_string(sub.join(n)).unwrap());
        assert!((trapezoid(&r) - 1.0).abs() < 1e-6, "{n}");
    }
}

#[test]
fn morse_verification_passes() {
    let out = run(&["verify", "--case", "morse1", "--lambda", "1", "--A", "-1", "--B", "0.125", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["case", "params", "results", "meta"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["results"]["pass"], serde_json::Value::Bool(true));
    assert!(v["results"]["checks"].as_array().unwrap().len() > 30);
}

#[test]
fn failed_comparison_exits_three() {
    let out = run(&["verify", "--case", "morse1", "--A", "-1", "--B", "0.125", "--ladder-tol", "1e-15"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stdout).unwrap().contains(",false"));
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(run(&["spectrum", "--case", "oscillator1", "--omega", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--case", "powerlaw1", "--mu", "1", "--A", "1"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--case", "coulomb1"]).status.code(), Some(1));
    assert_eq!(run(&["spectrum", "--case", "coulomb1", "--Z", "-1", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["density", "--case", "morse1", "--mu", "1", "--nu", "1", "--gamma", "0"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

fn file_bytes(dir: &Path, name: &str, threads: &str, args: &[&str]) -> Vec<u8> {
    let path = dir.join(name);
    let out = bin()
        .args(args)
        .args(["--output", path.to_str().unwrap()])
        .env("TRIDIAG_SPECTRA_THREADS", threads)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::read(path).unwrap()
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--case", "hulthen2", "--A", "-5", "--B", "0.5"];
    let a = file_bytes(dir.path(), "a.csv", "1", &args);
    let b = file_bytes(dir.path(), "b.csv", "4", &args);
    assert_eq!(a, b);
    assert!(!a.contains(&b'\r'));
    let args = ["coeffs", "--case", "coulomb2", "--Z", "1", "--B", "0.2", "--E", "-0.1", "--format", "json"];
    assert_eq!(file_bytes(dir.path(), "c.json", "2", &args), file_bytes(dir.path(), "d.json", "3", &args));
}

#[test]
fn numeric_and_closed_ladders_side_by_side() {
    let out = run(&["spectrum", "--case", "oscillator1", "--omega", "1", "--method", "both", "--n-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,E_closed,E_numeric\n"));
    for row in rows(&text) {
        assert!((row[1] - row[2]).abs() < 1e-8, "{row:?}");
    }
}
