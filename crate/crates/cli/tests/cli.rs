use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hkbetti(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkbetti")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hkbetti(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn hilbert_csv_rows() {
    assert_eq!(stdout(&["hilbert", "--n", "3", "--format", "csv"]), "degree,coefficient\n0,1\n2,1\n4,1\n");
}

#[test]
fn torus_genus_one() {
    let v = json(&["torus", "--g", "1"]);
    assert_eq!(v["coefficients"], serde_json::json!(["1", "2", "1"]));
    assert_eq!(v["family"], "torus");
}

#[test]
fn toric_complete_forty_rows() {
    let csv = stdout(&["toric-complete", "--n", "40", "--format", "csv"]);
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 742);
    let last = rows.last().unwrap();
    let (deg, val) = last.split_once(',').unwrap();
    assert_eq!(deg, "1482");
    let v: f64 = val.parse().unwrap();
    assert!((1.8e46..2.2e46).contains(&v), "{v}");
}

#[test]
fn graph_and_quiver_files() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.json", r#"{"vertices":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#);
    let from_file = json(&["toric", "--graph", &k4]);
    let complete = json(&["toric-complete", "--n", "4"]);
    assert_eq!(from_file["coefficients"], complete["coefficients"]);

    let tp1 = write(dir.path(), "tp1.json", r#"{"vertices":1,"edges":[],"v":[1],"w":[2]}"#);
    assert_eq!(json(&["nakajima", "--quiver", &tp1])["coefficients"], serde_json::json!(["1", "0", "1"]));
    let count = json(&["fqcount", "--quiver", &tp1, "--q", "5", "--xi", "1"]);
    assert_eq!(count["fiber_count"], "120");
    assert_eq!(count["quotient_count"], "30");
    let brute = json(&["fqcount", "--quiver", &tp1, "--q", "5", "--xi", "1", "--method", "brute"]);
    assert_eq!(brute["fiber_count"], "120");

    let jordan = write(dir.path(), "j.json", r#"{"vertices":1,"edges":[[0,0]],"v":[1]}"#);
    assert_eq!(json(&["kac", "--quiver", &jordan])["coefficients"], serde_json::json!(["0", "1"]));
    assert_eq!(json(&["quiver-indivisible", "--quiver", &jordan])["coefficients"], serde_json::json!(["1"]));
}

#[test]
fn validation_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"vertices":2,"edges":[[0,5]],"v":[1,1]}"#);
    let garbage = write(dir.path(), "garbage.json", "{not json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["hilbert", "--n", "5000"],
        vec!["hilbert", "--bogus", "1"],
        vec!["grassmann", "--n", "2", "--k", "3"],
        vec!["nakajima", "--quiver", &bad],
        vec!["nakajima", "--quiver", &garbage],
        vec!["nakajima", "--quiver", "/nonexistent/q.json"],
        vec!["fqcount", "--quiver", &bad, "--q", "4", "--xi", "1"],
        vec!["check", "--suite", "nope"],
        vec!["fit", "--dist", "normal", "--in", &bad],
        vec!["torus", "--g", "1", "--format", "xml"],
        vec!["airy-constants", "--k", "2", "--format", "csv"],
    ];
    for args in cases {
        let out = hkbetti(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(!err.trim().is_empty(), "{args:?}");
    }
    let out = hkbetti(&["nakajima", "--quiver", &bad]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--quiver"));
}

#[test]
fn thread_count_does_not_change_output() {
    let a = stdout(&["--threads", "1", "higgs", "--n", "4", "--g", "2"]);
    let b = stdout(&["--threads", "3", "higgs", "--n", "4", "--g", "2"]);
    assert_eq!(a, b);
    let a = stdout(&["--threads", "1", "check", "--suite", "fq-oracle"]);
    let b = stdout(&["--threads", "2", "check", "--suite", "fq-oracle"]);
    assert_eq!(a, b);
}

#[test]
fn csv_round_trip_through_moments() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("g.csv");
    let js = dir.path().join("g.json");
    for (path, fmt) in [(&csv, "csv"), (&js, "json")] {
        stdout(&["grassmann", "--n", "60", "--k", "30", "--format", fmt, "--output", path.to_str().unwrap()]);
    }
    let from_json = json(&["moments", "--in", js.to_str().unwrap(), "--k", "4"]);
    let from_csv = json(&["moments", "--in", csv.to_str().unwrap(), "--k", "4", "--dim", "1800"]);
    assert_eq!(from_json["raw"], from_csv["raw"]);
    assert_eq!(from_json["factorial"], from_csv["factorial"]);
    // total mass C(60,30) survives as a decimal string
    assert_eq!(from_json["raw"][0], "118264581564861424");
}

#[test]
fn fit_and_analysis_commands() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.csv");
    stdout(&["hilbert", "--n", "400", "--format", "csv", "-o", h.to_str().unwrap()]);
    let fit = json(&["fit", "--dist", "gumbel", "--in", h.to_str().unwrap(), "--k", "3", "--tol", "0.05"]);
    assert_eq!(fit["pass"], true, "{fit}");
    let g = dir.path().join("g.json");
    stdout(&["grassmann", "--n", "300", "--k", "1", "-o", g.to_str().unwrap()]);
    let fit = json(&["fit", "--dist", "bspline:1", "--in", g.to_str().unwrap(), "--tol", "0.01"]);
    assert_eq!(fit["pass"], true, "{fit}");

    let airy = json(&["airy-constants", "--k", "2", "--digits", "9"]);
    assert_eq!(airy["airy_moments"][1]["decimal"], "0.626657068");
    assert_eq!(airy["airy_moments"][2]["rational"], "5/12");
    assert_eq!(airy["wright_constants"], serde_json::json!(["5/24"]));

    let saddle = json(&["saddle-check", "--order", "20"]);
    assert_eq!(saddle["pass"], true);
}

#[test]
fn check_suites_report() {
    let v = json(&["check", "--suite", "saddle"]);
    assert_eq!(v["suite"], "saddle");
    assert_eq!(v["pass"], true);
    let v = json(&["check", "--suite", "cross-formulas"]);
    assert_eq!(v["pass"], true, "{v}");
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["check"] == "kac-ones=toric"));
}
