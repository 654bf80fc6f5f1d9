use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn repo_file(rel: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
    root.join(rel).to_string_lossy().into_owned()
}

fn bifix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bifix"))
        .args(args)
        .output()
        .expect("spawn bifix")
}

fn fair(args: &[&str]) -> Output {
    let cfg = repo_file("configs/fair-coin.json");
    let mut all = vec!["--config", cfg.as_str()];
    all.extend_from_slice(args);
    bifix(&all)
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(
        &std::fs::read_to_string(repo_file("docs/output.schema.json")).unwrap(),
    )
    .unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(v: &Value) {
    let validator = validator();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{v:#}");
}

#[test]
fn schema_rejects_malformed_documents() {
    let v = validator();
    assert!(!v.is_valid(&serde_json::json!({"command": "expect"})));
    assert!(!v.is_valid(&serde_json::json!({
        "command": "conditional",
        "distribution": {"alphabet": ["H", "T"], "probabilities": ["1/2", "1/2"]},
        "pattern": "HH", "given": "H", "value": "4", "decimal": "4", "state": 1, "occurred": false
    })));
}

#[test]
fn expect_json_golden() {
    let out = fair(&[
        "--json",
        "expect",
        "--pattern",
        "HH",
        "--pattern",
        "HTTH",
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_valid(&v);
    let hh = &v["reports"][0];
    assert_eq!(hh["expectation"], "6/1");
    assert_eq!(hh["p_w"], "1/4");
    let terms: Vec<&str> = hh["chain"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["term"].as_str().unwrap())
        .collect();
    assert_eq!(terms, ["4/1", "2/1"]);
    assert_eq!(hh["agrees"], true);
    assert_eq!(v["reports"][1]["expectation"], "18/1");
    assert_eq!(v["reports"][1]["oracle"], "18/1");
}

#[test]
fn empty_pattern_waits_zero() {
    let out = fair(&["--json", "expect", "--pattern", ""]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_valid(&v);
    assert_eq!(v["reports"][0]["expectation"], "0/1");
    assert_eq!(v["reports"][0]["chain"].as_array().unwrap().len(), 0);
}

#[test]
fn text_output_mentions_chain() {
    let out = fair(&["expect", "--pattern", "HH"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("6/1"));
    assert!(text.contains("HH > H > ∅"));
    assert!(text.contains("4/1 + 2/1"));
    assert!(out.stderr.is_empty());
}

#[test]
fn conditional_examples() {
    let cases = [
        ("HH", "H", "4/1", false),
        ("HH", "", "6/1", false),
        ("HT", "HT", "0/1", true),
        ("HT", "HTT", "-1/1", true),
    ];
    for (w, given, value, occurred) in cases {
        let out = fair(&["--json", "conditional", "--pattern", w, "--given", given]);
        assert_eq!(out.status.code(), Some(0), "{w} | {given}");
        let v = json_of(&out);
        assert_valid(&v);
        assert_eq!(v["value"], value, "{w} | {given}");
        assert_eq!(v["occurred"], occurred);
    }
    let v = json_of(&fair(&[
        "--json",
        "conditional",
        "--pattern",
        "HH",
        "--given",
        "TH",
    ]));
    assert_eq!(v["state"], 1);
}

#[test]
fn conditional_rejects_empty_pattern() {
    let out = fair(&["conditional", "--pattern", "", "--given", "H"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn simulate_json_is_schema_valid_and_sane() {
    let out = fair(&[
        "--json",
        "simulate",
        "--pattern",
        "HH",
        "--trials",
        "1",
        "--seed",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_valid(&v);
    assert!(v["mean"].as_f64().unwrap() >= 2.0);
    assert_eq!(v["predicted"], "6/1");
    assert_eq!(v["max_steps"], 6000);

    let out = fair(&["simulate", "--pattern", "HH", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identities_table_and_json() {
    let out = fair(&["identities", "--max-len", "3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("F2 n=2: lhs 5/1 rhs 5/1 pass"), "{text}");

    let out = fair(&["--json", "identities", "--max-len", "3", "--n", "0"]);
    let v = json_of(&out);
    assert_valid(&v);
    assert_eq!(v["f2"]["lhs"], "0/1");
    assert_eq!(v["f2"]["rhs"], "0/1");
    assert_eq!(v["all_passed"], true);

    let out = bifix(&[
        "--config",
        &repo_file("configs/ternary-uniform.json"),
        "identities",
        "--max-len",
        "3",
        "--n",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn identities_budget_refusal_is_config_error() {
    let out = fair(&["identities", "--n", "12", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn config_errors_exit_2() {
    let dir = std::env::temp_dir().join(format!("bifix-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"alphabet": ["H", "T"], "probabilities": ["1/2", "1/3"]}"#,
    )
    .unwrap();
    let bad = bad.to_string_lossy().into_owned();

    for args in [
        vec!["expect", "--pattern", "HH"],
        vec!["--config", bad.as_str(), "expect", "--pattern", "HH"],
        vec![
            "--config",
            "/nonexistent/cfg.json",
            "expect",
            "--pattern",
            "HH",
        ],
        vec![
            "--config",
            &repo_file("configs/fair-coin.json"),
            "expect",
            "--pattern",
            "HX",
        ],
        vec!["--config", &repo_file("configs/fair-coin.json"), "expect"],
        vec!["--config", &repo_file("configs/fair-coin.json"), "bogus"],
    ] {
        let out = bifix(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn config_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bifix"))
        .args(["--config", "-", "--json", "expect", "--pattern", "a b"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"alphabet": ["a", "b"], "probabilities": ["0.25", "0.75"]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    // 1/p(ab) = 1/(3/16)
    assert_eq!(v["reports"][0]["expectation"], "16/3");
    assert_eq!(v["distribution"]["probabilities"][0], "1/4");
}

#[test]
fn printed_rationals_round_trip() {
    let out = bifix(&[
        "--config",
        &repo_file("configs/ternary.json"),
        "--json",
        "expect",
        "--pattern",
        "abcab",
        "--pattern",
        "cc",
    ]);
    let v = json_of(&out);
    for report in v["reports"].as_array().unwrap() {
        let e = report["expectation"].as_str().unwrap();
        let q = bifix_core::rational::parse_rational(e).unwrap();
        assert_eq!(bifix_core::rational::to_fraction_string(&q), e);
        let sum: bifix_core::Rational = report["chain"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| bifix_core::rational::parse_rational(c["term"].as_str().unwrap()).unwrap())
            .sum();
        assert_eq!(sum, q);
    }
}
