mod common;

use common::{read_csv, read_json, run, schema_errors};
use tempfile::tempdir;

#[test]
fn phi_matches_closed_forms() {
    let dir = tempdir().unwrap();
    let r = run(dir.path(), &["phi", "--alpha", "0.5", "--beta", "-0.5", "--lambda", "2", "--t", "1", "--output-dir", "a"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let (header, rows) = read_csv(&dir.path().join("a/phi.csv"));
    assert_eq!(header, ["t", "value", "derivative", "residual"]);
    let exact = 2f64.sin() / (2.0 * 1f64.sinh());
    assert!((rows[0][1] - exact).abs() < 1e-8);
    assert!(rows[0][3].abs() <= 1e-8);

    let r = run(dir.path(), &["phi", "--alpha", "-0.5", "--beta", "-0.5", "--lambda", "3", "--t", "0.7", "--output-dir", "b"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let (_, rows) = read_csv(&dir.path().join("b/phi.csv"));
    assert!((rows[0][1] - 2.1f64.cos()).abs() < 1e-10);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempdir().unwrap();
    let r = run(dir.path(), &["phi", "--beta", "-0.5", "--lambda", "3", "--t", "0.7"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("--alpha") && r.stderr.contains("Usage"), "{}", r.stderr);
    // α ≤ -1 is rejected by the parameter check, not the parser
    let r = run(dir.path(), &["phi", "--alpha", "-2", "--beta", "-0.5", "--lambda", "1", "--t", "1"]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    let r = run(dir.path(), &["ingham", "check", "--theta", "missing.csv"]);
    assert_eq!(r.code, 2);
}

#[test]
fn ingham_verdicts_and_admissibility_exit() {
    let dir = tempdir().unwrap();
    let p = dir.path();
    for (profile, file) in [("inverse-log", "theta_log.csv"), ("theta-one", "theta_sqrt.csv")] {
        let r = run(p, &["ingham", "catalog", "--profile", profile, "--out", file, "--output-dir", "cat"]);
        assert_eq!(r.code, 0, "{}", r.stderr);
    }
    let r = run(p, &["ingham", "check", "--theta", "theta_log.csv", "--output-dir", "log"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let s = read_json(&p.join("log/summary.json"));
    assert_eq!(s["verdicts"]["ingham"], "divergent");
    assert_eq!(s["results"]["classification"], "divergent");

    let r = run(p, &["ingham", "bump", "--theta", "theta_log.csv", "--support", "1", "--terms", "24", "--output-dir", "bad"]);
    assert_eq!(r.code, 4, "{}", r.stderr);

    let r = run(p, &["ingham", "bump", "--theta", "theta_sqrt.csv", "--support", "1", "--terms", "24", "--output-dir", "bump"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let s = read_json(&p.join("bump/summary.json"));
    assert_eq!(s["verdicts"]["decay"], "finite-constant");
    assert!(s["results"]["decay"]["constant"].is_number());
    assert!(s["results"]["support"].as_f64().unwrap() <= 1.0);
    let (header, rows) = read_csv(&p.join("bump/bump.csv"));
    assert_eq!(header, ["t", "value"]);
    assert!(rows.iter().all(|r| r[0] <= 0.5 + 1e-15));
}

#[test]
fn case_two_profile_writes_augmented_table() {
    let dir = tempdir().unwrap();
    let p = dir.path();
    run(p, &["ingham", "catalog", "--profile", "inverse-sqrt", "--coef", "1", "--out", "weak.csv", "--output-dir", "c"]);
    let r = run(p, &["ingham", "split", "--theta", "weak.csv", "--output-dir", "s"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let s = read_json(&p.join("s/summary.json"));
    assert_eq!(s["verdicts"]["case"], "case2");
    let (_, weak) = read_csv(&p.join("weak.csv"));
    let (_, aug) = read_csv(&p.join("s/augmented_theta.csv"));
    for row in weak.iter().step_by(37) {
        let hit = aug.iter().find(|a| a[0] == row[0]).expect("shared node");
        assert!((hit[1] - row[1] - 8.0 / (row[0] + 1.0).sqrt()).abs() < 1e-12 * hit[1], "r = {}", row[0]);
    }
    let r = run(p, &["chernoff", "bound", "--theta", "weak.csv", "--alpha", "0.5", "--beta", "-0.5", "--output-dir", "b"]);
    assert_eq!(r.code, 4, "{}", r.stderr);
}

#[test]
fn counterexample_defaults() {
    let dir = tempdir().unwrap();
    let r = run(dir.path(), &["counterexample", "--output-dir", "x"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let s = read_json(&dir.path().join("x/summary.json"));
    assert_eq!(s["inputs"]["n"], 3);
    assert_eq!(s["inputs"]["l"], 1);
    assert_eq!(s["inputs"]["max_m"], 100);
    assert!(s["results"]["vanishing"]["max_abs"].as_f64().unwrap() <= 1e-12);
    assert_eq!(s["verdicts"]["carleman"], "divergent-trend");
    let (header, rows) = read_csv(&dir.path().join("x/counterexample.csv"));
    assert_eq!(header[..3], ["m", "term", "partial_sum"]);
    assert_eq!(rows.len(), 100);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempdir().unwrap();
    let p = dir.path();
    std::fs::write(
        p.join("run.json"),
        r#"{ "output_dir": "from-config", "format": "csv", "seed": 11, "quadrature": { "t_max": 10.0, "lambda_max": 64.0, "panels": 48, "points_per_panel": 32, "tolerance": 1e-8 } }"#,
    )
    .unwrap();
    let r = run(p, &["--config", "run.json", "chernoff", "andiv", "--n-max", "1000"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let s = read_json(&p.join("from-config/summary.json"));
    assert_eq!(s["config"]["seed"], 11);
    assert_eq!(s["config"]["quadrature"]["t_max"], 10.0);
    assert!(p.join("from-config/andiv.csv").exists() && !p.join("from-config/andiv.json").exists());

    let r = run(
        p,
        &[
            "--config",
            "run.json",
            "chernoff",
            "andiv",
            "--n-max",
            "1000",
            "--seed",
            "5",
            "--format",
            "json",
            "--output-dir",
            "flags",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let s = read_json(&p.join("flags/summary.json"));
    assert_eq!(s["config"]["seed"], 5);
    assert_eq!(s["config"]["format"], "json");
    assert!(p.join("flags/andiv.json").exists() && !p.join("flags/andiv.csv").exists());

    std::fs::write(p.join("bad.json"), r#"{ "sead": 1 }"#).unwrap();
    assert_eq!(run(p, &["--config", "bad.json", "chernoff", "andiv"]).code, 2);
}

#[test]
fn summaries_validate_against_schema() {
    let dir = tempdir().unwrap();
    let p = dir.path();
    run(p, &["ingham", "catalog", "--profile", "theta-one", "--out", "th.csv", "--output-dir", "s0"]);
    let runs: Vec<(&str, Vec<&str>)> = vec![
        ("s0", vec![]),
        ("s1", vec!["phi", "--alpha", "1.5", "--beta", "-0.5", "--lambda", "1", "--t", "0.5", "--t", "2", "--precision-report"]),
        ("s2", vec!["transform", "roundtrip", "--alpha", "0.5", "--beta", "-0.5", "--count", "1"]),
        ("s3", vec!["heat", "--alpha", "0.5", "--beta", "-0.5", "--time", "0.5"]),
        ("s4", vec!["ingham", "check", "--theta", "th.csv"]),
        ("s5", vec!["ingham", "bump", "--theta", "th.csv", "--support", "1", "--terms", "12"]),
        ("s6", vec!["ingham", "split", "--theta", "th.csv"]),
        ("s7", vec!["chernoff", "norms", "--alpha", "0.5", "--beta", "-0.5", "--gaussian-spectrum", "1", "--m-max", "20"]),
        ("s8", vec!["chernoff", "moments", "--alpha", "0.5", "--beta", "-0.5", "--gaussian-spectrum", "1", "--chain", "2"]),
        ("s9", vec!["chernoff", "andiv", "--n-max", "10000"]),
        ("s10", vec!["chernoff", "bound", "--theta", "th.csv", "--alpha", "0.5", "--beta", "-0.5", "--m-max", "4"]),
        ("s11", vec!["counterexample", "--max-m", "40", "--precision-report"]),
    ];
    for (out, args) in &runs {
        if !args.is_empty() {
            let mut a = args.clone();
            a.extend(["--output-dir", out]);
            let r = run(p, &a);
            assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
        }
        let s = read_json(&p.join(out).join("summary.json"));
        assert_eq!(s["schema_version"], 1);
        let errs = schema_errors(&s);
        assert!(errs.is_empty(), "{out}: {errs:?}");
    }
    let broken = serde_json::json!({ "schema_version": 2 });
    assert!(!schema_errors(&broken).is_empty());
}

#[test]
fn reruns_are_byte_identical_and_seed_matters() {
    let dir = tempdir().unwrap();
    let p = dir.path();
    let args = |out: &'static str, seed: &'static str| {
        vec!["transform", "roundtrip", "--alpha", "1.5", "--beta", "-0.5", "--count", "2", "--seed", seed, "--output-dir", out]
    };
    for (out, seed) in [("a", "3"), ("b", "3"), ("c", "4")] {
        assert_eq!(run(p, &args(out, seed)).code, 0);
    }
    let read = |d: &str| std::fs::read(p.join(d).join("summary.json")).unwrap();
    assert_eq!(read("a"), read("b"));
    assert_ne!(read("a"), read("c"));
    assert_eq!(std::fs::read(p.join("a/roundtrip.csv")).unwrap(), std::fs::read(p.join("b/roundtrip.csv")).unwrap());
}

#[test]
fn floats_carry_seventeen_digits() {
    let dir = tempdir().unwrap();
    let r = run(dir.path(), &["phi", "--alpha", "0.5", "--beta", "-0.5", "--lambda", "1", "--t", "1", "--output-dir", "o"]);
    assert_eq!(r.code, 0);
    let text = std::fs::read_to_string(dir.path().join("o/phi.csv")).unwrap();
    let value = text.lines().nth(1).unwrap().split(',').nth(1).unwrap();
    let mantissa = value.split('e').next().unwrap().trim_start_matches('-').replace('.', "");
    assert_eq!(mantissa.len(), 17, "{value}");
    let parsed: f64 = value.parse().unwrap();
    assert_eq!(format!("{parsed:.16e}"), value);
}
