use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn cptkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cptkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn eval_sipos_table() {
    let cap = data("example1_capacity.json");
    let acts = data("example1_acts.csv");
    let out = cptkit(&[
        "eval",
        "--functional",
        "sipos",
        "--capacity",
        path(&cap),
        "--acts",
        path(&acts),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let value_of = |label: &str| -> f64 {
        let line = text
            .lines()
            .find(|l| l.split_whitespace().next() == Some(label))
            .unwrap();
        line.split_whitespace().nth(1).unwrap().parse().unwrap()
    };
    for (label, want) in [
        ("f", 11.0 / 3.0),
        ("g", 11.0 / 3.0),
        ("h", -7.0 / 3.0),
        ("f+h", 7.0 / 3.0),
        ("g+h", 4.0 / 3.0),
    ] {
        assert!((value_of(label) - want).abs() < 1e-6, "{label}: {text}");
    }
}

#[test]
fn eval_json_reports_fractions() {
    let cap = data("example1_capacity.json");
    let acts = data("example1_acts.csv");
    let out = cptkit(&[
        "eval",
        "--functional",
        "choquet",
        "--capacity",
        path(&cap),
        "--acts",
        path(&acts),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let h = doc["acts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|a| a["label"] == "h")
        .unwrap();
    assert_eq!(h["value_fraction"], "-4/3");
}

#[test]
fn eval_cpt_with_loss_aversion() {
    let cap = data("example1_capacity.json");
    let acts = data("example1_acts.csv");
    let out = cptkit(&[
        "eval",
        "--functional",
        "cpt",
        "--capacity",
        path(&cap),
        "--symmetric",
        "--lambda",
        "2",
        "--acts",
        path(&acts),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let h = doc["acts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|a| a["label"] == "h")
        .unwrap();
    // -2 · Š-loss 7/3, certainty equivalent back on the loss scale
    assert!((h["value"].as_f64().unwrap() + 14.0 / 3.0).abs() < 1e-12);
    assert!((h["certainty_equivalent"].as_f64().unwrap() + 7.0 / 3.0).abs() < 1e-12);
}

#[test]
fn eval_empty_acts_file_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let acts = dir.path().join("acts.csv");
    fs::write(&acts, "").unwrap();
    let cap = data("example1_capacity.json");
    let out = cptkit(&[
        "eval",
        "--functional",
        "choquet",
        "--capacity",
        path(&cap),
        "--acts",
        path(&acts),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn unnormalized_capacity_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cap = dir.path().join("bad.json");
    fs::write(
        &cap,
        r#"{"states":["a","b"],"values":{"":0.1,"a":0.5,"b":0.5,"a,b":1}}"#,
    )
    .unwrap();
    let acts = dir.path().join("acts.csv");
    fs::write(&acts, "act,a,b\nx,1,2\n").unwrap();
    let out = cptkit(&[
        "eval",
        "--functional",
        "choquet",
        "--capacity",
        path(&cap),
        "--acts",
        path(&acts),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("normalized"), "{}", stderr(&out));
}

#[test]
fn malformed_acts_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let acts = dir.path().join("acts.csv");
    fs::write(&acts, "act,s1,s2,s3\nf,1,2,oops\n").unwrap();
    let cap = data("example1_capacity.json");
    let out = cptkit(&[
        "eval",
        "--functional",
        "choquet",
        "--capacity",
        path(&cap),
        "--acts",
        path(&acts),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cpt_without_lambda_exits_2() {
    let cap = data("example1_capacity.json");
    let acts = data("example1_acts.csv");
    let out = cptkit(&[
        "eval",
        "--functional",
        "cpt",
        "--capacity",
        path(&cap),
        "--symmetric",
        "--acts",
        path(&acts),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_cpt_passes() {
    let cap = data("example1_capacity.json");
    let sq = data("squared_uniform.json");
    let out = cptkit(&[
        "verify",
        "--functional",
        "cpt",
        "--capacity",
        path(&sq),
        "--capacity",
        path(&cap),
        "--lambda",
        "2.25",
        "--pairs",
        "2000",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["extraction"]["status"], "ok");
    assert!((doc["extraction"]["lambda"].as_f64().unwrap() - 2.25).abs() < 1e-9);
    assert_eq!(doc["extraction"]["attitudes"]["convex_gains"], true);
    assert_eq!(doc["extraction"]["attitudes"]["convex_losses"], false);
    assert_eq!(doc["extraction"]["symmetry"]["symmetric"], false);
}

#[test]
fn verify_negative_lambda_exits_4() {
    let cap = data("example1_capacity.json");
    let out = cptkit(&[
        "verify",
        "--functional",
        "cpt",
        "--capacity",
        path(&cap),
        "--symmetric",
        "--lambda",
        "-2",
        "--pairs",
        "500",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["passed"], false);
    assert_eq!(doc["extraction"]["status"], "error");
}

#[test]
fn verify_choquet_recovers_conjugate() {
    let cap = data("example1_capacity.json");
    let out = cptkit(&[
        "verify",
        "--functional",
        "choquet",
        "--capacity",
        path(&cap),
        "--pairs",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["extraction"]["v_minus_equals_conjugate_v_plus"], true);
    assert_eq!(doc["extraction"]["lambda"], 1.0);
}

#[test]
fn verify_sipos_reports_general_violations_only() {
    let cap = data("example1_capacity.json");
    let out = cptkit(&[
        "verify",
        "--functional",
        "sipos",
        "--capacity",
        path(&cap),
        "--pairs",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["additivity"]["restricted_clean"], true);
    assert_eq!(doc["extraction"]["v_minus_equals_v_plus"], true);
    assert_eq!(doc["extraction"]["symmetry"]["symmetric"], true);
    let general = doc["additivity"]["report"]["classes"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["class"] == "general_comonotone")
        .unwrap();
    assert!(general["violation_count"].as_u64().unwrap() > 0);
}

#[test]
fn demo_is_deterministic() {
    let a = cptkit(&["demo"]);
    let b = cptkit(&["demo"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("11/3") && text.contains("-4/3"));

    let json = cptkit(&["demo", "--json"]);
    let text = stdout(&json);
    assert!(text.contains("\"7/3\"") && text.contains("\"4/3\""));
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["preferences"]["sipos"]["f+h_vs_g+h"], "first_strict");
    assert_eq!(doc["preferences"]["choquet"]["f+h_vs_g+h"], "indifferent");
    assert_eq!(doc["preferences"]["sipos"]["f_vs_g"], "indifferent");
}

#[test]
fn elicit_to_stdout() {
    let input = data("elicitation.csv");
    let out = cptkit(&["elicit", "--input", path(&input)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rows: Vec<String> = stdout(&out).lines().map(str::to_owned).collect();
    assert_eq!(
        rows,
        [
            "kind,lambda",
            "determined,2",
            "determined,3",
            "neutral,1",
            "indeterminate,"
        ]
    );
    assert!(stderr(&out).contains("spread"));
}

#[test]
fn elicit_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.csv");
    let input = data("elicitation.csv");
    let out = cptkit(&["elicit", "--input", path(&input), "--output", path(&target)]);
    assert_eq!(out.status.code(), Some(0));
    let written = fs::read_to_string(&target).unwrap();
    assert!(written.starts_with("kind,lambda\ndetermined,2\n"));
}

#[test]
fn elicit_malformed_row_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    fs::write(&input, "alpha,beta,gamma\n4,-1,2\n3,x,1\n").unwrap();
    let out = cptkit(&["elicit", "--input", path(&input)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains('3'), "{}", stderr(&out));
}
