//! End-to-end tests of the `g235` binary against the shipped models.

use std::path::PathBuf;
use std::process::{Command, Output};

fn models() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn g235(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g235")).args(args).output().expect("binary runs")
}

fn model(name: &str) -> String {
    models().join(name).to_string_lossy().into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn temp_model(tag: &str, body: &str) -> String {
    let path = std::env::temp_dir().join(format!("g235-cli-test-{}-{tag}.json", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn check_flat_model_reports_generic_growth() {
    let out = g235(&["check", "--model", &model("hilbert-cartan.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema"], "g235-report/1");
    for p in r["points"].as_array().unwrap() {
        assert_eq!(p["growth"], "(2,3,5)");
    }
}

#[test]
fn integrable_pair_is_degenerate() {
    let m = temp_model("integrable", r#"{"x1":["1","0","0","0","0"],"x2":["0","1","0","0","0"],"points":[["0","0","0","0","0"]]}"#);
    let out = g235(&["check", "--model", &m]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(2,2,2)"));
}

#[test]
fn malformed_expression_reports_position() {
    let m = temp_model("syntax", r#"{"monge":"q^^2","points":[["0","0","0","1","0"]]}"#);
    let out = g235(&["invariants", "--model", &m]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("$.monge") && err.contains("position 2"), "{err}");
}

#[test]
fn unknown_field_is_an_input_error() {
    let m = temp_model("unknown", r#"{"monge":"q^2","pionts":[]}"#);
    assert_eq!(g235(&["check", "--model", &m]).status.code(), Some(2));
}

#[test]
fn cartan_without_coframe_is_an_input_error() {
    assert_eq!(g235(&["cartan", "--model", &model("monge-q3.json")]).status.code(), Some(2));
}

#[test]
fn bad_point_is_an_input_error() {
    let out = g235(&["check", "--model", &model("monge-q3.json"), "--point", "1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_matches_formula_on_flat_model() {
    let out = g235(&["oracle", "--model", &model("hilbert-cartan.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    for p in r["points"].as_array().unwrap() {
        for o in p["oracle"].as_array().unwrap() {
            assert_eq!(o["equal"], true);
            assert_eq!(o["formula"], serde_json::json!(["0/1", "0/1"]));
        }
    }
}

#[test]
fn oracle_values_for_cubic_model() {
    let out = g235(&["oracle", "--model", &model("monge-q3.json"), "--point", "0,0,0,1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let o = &r["points"][0]["oracle"][0];
    assert_eq!(o["formula"], serde_json::json!(["-8/15", "8/125"]));
    assert_eq!(o["projective"], o["formula"]);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = g235(&["report", "--model", &model("monge-generic.json")]);
    let b = g235(&["report", "--model", &model("monge-generic.json")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn rationals_round_trip_through_the_report() {
    let out = g235(&["tangential", "--model", &model("monge-generic.json")]);
    let r = json(&out);
    for c in r["points"][0]["tangential"]["coeffs"].as_array().unwrap() {
        let s = c.as_str().unwrap();
        let back = g235::io::rational_from_json(c).expect("p/q parses");
        assert_eq!(g235::io::rational_to_string(&back), s);
    }
}

#[test]
fn cartan_chain_on_gauged_coframe() {
    let out = g235(&["cartan", "--model", &model("coframe-gauged.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["cartan"]["failing_equations"], serde_json::json!([]));
    assert!(r["verdicts"].as_array().unwrap().iter().all(|v| v["pass"] == true));
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("g235-cli-test-{}-out.json", std::process::id()));
    let out = g235(&["check", "--model", &model("monge-q4.json"), "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"(2,3,5)\""));
}
