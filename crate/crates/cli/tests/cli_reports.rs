use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn symres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symres"))
        .args(args)
        .env_remove("SYMRES_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = symres(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn schema_ok(name: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(format!("{name}.schema.json"));
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    let v = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).unwrap()
}

#[test]
fn dims_table() {
    let out = stdout(&["dims", "--n", "6", "--na", "3", "--j", "1"]);
    assert!(out.starts_with("l,d,b\n1/2,2,3\n3/2,1,3\n"), "{out}");
    assert!(out.contains("6,3,1,9,true"));
    let doc = json(&["dims", "--n", "10", "--na", "1", "--twice-j", "4"]);
    schema_ok("dims", &doc);
    assert_eq!(doc["sectors"].as_array().unwrap().len(), 1);
    assert_eq!(doc["sectors"][0]["d"], "1");
    schema_ok("dims", &json(&["dims", "--n", "31", "--j", "3/2"]));
}

#[test]
fn exit_codes() {
    assert_eq!(
        symres(&["dims", "--n", "5", "--j", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        symres(&["dims", "--n", "6", "--j", "1", "--twice-j", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(symres(&["dims", "--n", "6"]).status.code(), Some(2));
    assert_eq!(
        symres(&[
            "sample",
            "--n",
            "6",
            "--na",
            "3",
            "--j",
            "1",
            "--samples",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        symres(&["asymptotics", "--f", "0.3", "--s", "0.5", "--n", "101"])
            .status
            .code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let target = blocker.join("out.csv");
    let out = symres(&[
        "page-curve",
        "--n",
        "4",
        "--j",
        "0",
        "--output",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn page_curves() {
    let doc = json(&["page-curve", "--n", "10", "--j", "5"]);
    schema_ok("page-curve", &doc);
    assert!(doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["mean"] == 0.0));
    let out = stdout(&["page-curve", "--n", "10", "--twice-j", "0"]);
    let means: Vec<String> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    let rev: Vec<String> = means.iter().rev().cloned().collect();
    assert_eq!(means, rev);
}

#[test]
fn sample_summary_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.csv");
    let args = [
        "sample",
        "--n",
        "6",
        "--na",
        "3",
        "--j",
        "1",
        "--samples",
        "4000",
        "--seed",
        "42",
    ];
    let mut a = args.to_vec();
    a.extend(["--output", path.to_str().unwrap()]);
    stdout(&a);
    let hist = fs::read_to_string(&path).unwrap();
    assert!(hist.starts_with("bin_left,bin_right,count\n"));
    assert_eq!(hist.lines().count(), 61);
    let summary = fs::read_to_string(dir.path().join("run_summary.csv")).unwrap();
    assert!(summary.starts_with("n,n_a,j,samples,seed,empirical_mean"));

    let doc = json(&args);
    schema_ok("sample", &doc);
    assert!(doc["summary"]["z_scores"]["mean"].as_f64().unwrap().abs() < 4.0);
    let total: u64 = doc["histogram"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["count"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 4000);

    // j = N/2: every sample has zero entropy
    let doc = json(&[
        "sample",
        "--n",
        "6",
        "--na",
        "2",
        "--j",
        "3",
        "--samples",
        "50",
    ]);
    assert_eq!(doc["histogram"][0]["count"], 50);
    assert_eq!(doc["summary"]["z_scores"]["mean"], 0.0);
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_symres"))
        .args(["examples", "--format", "json"])
        .env("SYMRES_OUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let doc: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("examples.json")).unwrap())
            .unwrap();
    schema_ok("examples", &doc);
    assert!(doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["pass"] == true));
}

#[test]
fn asymptotic_reports() {
    let doc = json(&[
        "asymptotics",
        "--f",
        "0.25",
        "--s",
        "0.5",
        "--n",
        "128,256,512,1024",
    ]);
    schema_ok("asymptotics", &doc);
    let diffs: Vec<f64> = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["difference"].as_f64().unwrap().abs())
        .collect();
    assert!(diffs.windows(2).all(|w| w[1] < w[0]), "{diffs:?}");
    assert_eq!(doc["coefficients"]["difference"]["log_n"], 0.5);
    assert_eq!(doc["coefficients"]["ka_external_reference"], true);

    let half = json(&["asymptotics", "--f", "0.5", "--s", "0.5", "--n", "256"]);
    assert!(half["coefficients"]["ga"]["sqrt_n_delta"].as_f64().unwrap() < 0.0);

    let top = json(&["asymptotics", "--f", "0.25", "--s", "1", "--n", "64"]);
    schema_ok("asymptotics", &top);
    assert_eq!(top["leading_coefficient"], 0.0);
    assert_eq!(top["rows"][0]["exact"], 0.0);
    let near = json(&["asymptotics", "--f", "0.25", "--s", "0.99", "--n", "400"]);
    assert!(near["leading_coefficient"].as_f64().unwrap() < 0.02);

    let out = stdout(&["asymptotics", "--f", "0.5", "--s", "0", "--n", "200,400"]);
    assert!(out.starts_with("n,exact,asymptotic,difference\n"));
}
