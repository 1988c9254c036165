use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subsel"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../docs/schemas/{name}.schema.json"));
    let text = fs::read_to_string(&path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(name: &str, json: &str) {
    let v: Value = serde_json::from_str(json).unwrap();
    let validator = schema(name);
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{json}");
}

fn sobol_file(dir: &Path, n: usize, d: usize) -> String {
    let name = format!("sobol_{n}_{d}.txt");
    ok(dir, &["gen", "--sobol", "--n", &n.to_string(), "--d", &d.to_string(), "--out", &name]);
    name
}

#[test]
fn disc_on_sobol_50_in_4d() {
    let t = TempDir::new().unwrap();
    let f = sobol_file(t.path(), 50, 4);
    let text = ok(t.path(), &["disc", "--in", &f]);
    let value: f64 = text.lines().next().unwrap().strip_prefix("value ").unwrap().parse().unwrap();
    assert!((value - 0.13422).abs() < 1e-4);
    assert!(text.contains("closure closed") || text.contains("closure open"));
    assert!(text.contains("exact true"));

    let json = ok(t.path(), &["disc", "--in", &f, "--format", "json"]);
    assert_valid("disc", &json);
    for engine in ["ta", "brute"] {
        let json = ok(t.path(), &["disc", "--in", &f, "--engine", engine, "--seed", "3", "--format", "json"]);
        assert_valid("disc", &json);
        let v: Value = serde_json::from_str(&json).unwrap();
        assert!(v["value"].as_f64().unwrap() <= value + 1e-12);
    }
}

#[test]
fn subset_of_everything_reproduces_the_input() {
    let t = TempDir::new().unwrap();
    let f = sobol_file(t.path(), 20, 3);
    ok(t.path(), &["subset", "--in", &f, "--k", "20", "--seed", "1", "--report", "r.json"]);
    assert_eq!(
        fs::read(t.path().join(&f)).unwrap(),
        fs::read(t.path().join("sobol_20_3.k20.txt")).unwrap()
    );
    assert_valid("subset", &fs::read_to_string(t.path().join("r.json")).unwrap());
}

#[test]
fn subset_report_is_consistent_with_its_output() {
    let t = TempDir::new().unwrap();
    let f = sobol_file(t.path(), 30, 2);
    let json = ok(
        t.path(),
        &["subset", "--in", &f, "--k", "20", "--nbf", "--restarts", "3", "--seed", "7", "--out", "c.txt"],
    );
    assert_valid("subset", &json);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["trials"].as_array().unwrap().len(), 3);
    assert_eq!(v["brute_force"], Value::Bool(false));
    let disc = ok(t.path(), &["disc", "--in", "c.txt"]);
    let value: f64 = disc.lines().next().unwrap()[6..].parse().unwrap();
    assert!((value - v["value"].as_f64().unwrap()).abs() < 1e-12);
}

#[test]
fn adversarial_verdicts() {
    let t = TempDir::new().unwrap();
    let text = ok(t.path(), &["adversarial", "--k", "3", "--alpha", "0.001", "--d", "2", "--out", "adv.txt"]);
    assert!(text.lines().any(|l| l == "set_A local_min: true"));
    assert!(text.lines().any(|l| l == "d*(B) < d*(A): true"));
    assert_eq!(fs::read_to_string(t.path().join("adv.txt")).unwrap().lines().count(), 6);
    assert_valid("adversarial", &ok(t.path(), &["adversarial", "--k", "4", "--format", "json"]));
}

#[test]
fn inverse_prints_n_and_writes_the_log() {
    let t = TempDir::new().unwrap();
    let text = ok(t.path(), &["inverse", "--d", "4", "--eps", "0.3"]);
    assert!(text.lines().any(|l| l == "n 15"));
    assert!(text.contains("inverse_d4_eps0.3.log"));
    let log = fs::read_to_string(t.path().join("inverse_d4_eps0.3.log")).unwrap();
    assert!(log.lines().any(|l| l.starts_with("15 ") && l.ends_with(" true")));
    assert!(log.lines().any(|l| l.starts_with("14 ") && l.ends_with(" false")));
    assert_valid("inverse", &ok(t.path(), &["inverse", "--d", "2", "--eps", "0.2", "--format", "json"]));
}

#[test]
fn energy_and_pipeline_reports_validate() {
    let t = TempDir::new().unwrap();
    ok(t.path(), &["gen", "--random", "--n", "30", "--d", "2", "--seed", "5", "--out", "r.txt"]);
    let json = ok(
        t.path(),
        &["energy", "--in", "r.txt", "--optimize", "--out", "e.txt", "--trace", "trace.json", "--format", "json"],
    );
    assert_valid("energy", &json);
    assert_valid("trace", &fs::read_to_string(t.path().join("trace.json")).unwrap());
    assert_valid("energy", &ok(t.path(), &["energy", "--in", "r.txt", "--format", "json"]));
    let v: Value = serde_json::from_str(&json).unwrap();
    assert!(v["optimized"]["energy"].as_f64().unwrap() < v["energy"].as_f64().unwrap());

    let json = ok(
        t.path(),
        &["pipeline", "--in", "r.txt", "--k", "20", "--seed", "2", "--restarts", "2", "--out", "p.txt"],
    );
    assert_valid("pipeline", &json);
    assert_eq!(fs::read_to_string(t.path().join("p.txt")).unwrap().lines().count(), 20);
}

#[test]
fn compare_writes_csv() {
    let t = TempDir::new().unwrap();
    let spec = r#"{"cells":[{"d":2,"n":20,"k":10,"method":"DEM_NBF","time_budget":null},
                           {"d":2,"n":20,"k":10,"method":"RANDOM","time_budget":null},
                           {"d":2,"n":20,"k":20,"method":"SOBOL","time_budget":null}],
                  "restarts":2,"seed":4,"random_trials":20}"#;
    fs::write(t.path().join("spec.json"), spec).unwrap();
    ok(t.path(), &["compare", "--spec", "spec.json", "--out", "grid.csv"]);
    let csv = fs::read_to_string(t.path().join("grid.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.lines().next().unwrap().starts_with("d,n,k,method"));
}

#[test]
fn identical_arguments_give_identical_files() {
    let t = TempDir::new().unwrap();
    let args = |out: &'static str, report: &'static str| {
        vec![
            "subset", "--in", "r.txt", "--k", "15", "--restarts", "3", "--seed", "11", "--out", out, "--report", report,
        ]
    };
    ok(t.path(), &["gen", "--random", "--n", "25", "--d", "3", "--seed", "9", "--out", "r.txt"]);
    ok(t.path(), &args("a.txt", "a.json"));
    ok(t.path(), &args("b.txt", "b.json"));
    let read = |f: &str| fs::read(t.path().join(f)).unwrap();
    assert_eq!(read("a.txt"), read("b.txt"));
    let strip = |f: &str| {
        let mut v: Value = serde_json::from_slice(&read(f)).unwrap();
        v["output"] = Value::Null;
        v
    };
    assert_eq!(strip("a.json"), strip("b.json"));

    ok(t.path(), &["gen", "--random", "--n", "25", "--d", "3", "--seed", "9", "--out", "r2.txt"]);
    assert_eq!(read("r.txt"), read("r2.txt"));
}

#[test]
fn default_seed_is_announced() {
    let t = TempDir::new().unwrap();
    let out = run(t.path(), &["gen", "--random", "--n", "3", "--d", "2"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("seed: 0 (default)"));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);
}

#[test]
fn lifted_sets_gain_a_coordinate() {
    let t = TempDir::new().unwrap();
    let text = ok(t.path(), &["gen", "--sobol", "--n", "8", "--d", "3", "--lift"]);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert!(rows.iter().all(|r| r.len() == 3));
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r[2], (i + 1) as f64 / 8.0);
    }
}

#[test]
fn exit_codes() {
    let t = TempDir::new().unwrap();
    let f = sobol_file(t.path(), 10, 2);
    let code = |args: &[&str]| run(t.path(), args).status.code().unwrap();
    let cases: &[(&[&str], i32)] = &[
        (&["subset", "--in", &f, "--k", "11"], 2),
        (&["subset", "--in", &f, "--k", "0"], 2),
        (&["subset", "--in", &f, "--k", "5", "--restarts", "0"], 2),
        (&["gen", "--sobol", "--random", "--n", "3", "--d", "2"], 2),
        (&["gen", "--sobol", "--n", "0", "--d", "2"], 2),
        (&["inverse", "--d", "2", "--eps", "1.5"], 2),
        (&["adversarial", "--k", "3", "--alpha", "0.5"], 2),
        (&["adversarial", "--k", "1"], 2),
        (&["disc", "--in", "missing.txt"], 1),
        (&["inverse", "--d", "4", "--eps", "0.01", "--nmax", "20"], 1),
        (&["frobnicate"], 2),
        (&["disc", "--in", &f], 0),
    ];
    for (args, want) in cases {
        assert_eq!(code(args), *want, "{args:?}");
    }
    let out = run(t.path(), &["subset", "--in", &f, "--k", "11"]);
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
}

#[test]
fn every_subcommand_has_help() {
    let t = TempDir::new().unwrap();
    for sub in ["gen", "disc", "subset", "energy", "pipeline", "inverse", "adversarial", "compare"] {
        let text = ok(t.path(), &[sub, "--help"]);
        assert!(text.contains("Usage"), "{sub}");
    }
}
