//! End-to-end tests against the compiled binary.

use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn config_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../geoqa.conf")
}

fn suite_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../geoqa/data/suite.jsonl")
}

fn frames_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../geoqa/data/qt2_frames.jsonl")
}

fn geoqa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geoqa"))
        .arg("--config")
        .arg(config_path())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).to_string()
}

#[test]
fn ask_prints_the_komsu_query_and_the_neighbour_list() {
    let out = geoqa(&["ask", "Ankara iline komşu olan illeri gösterir misin ?"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("?y ins:komsu ?x ."));
    assert!(text.contains("FILTER(regex(str(?x),\"Ankara\",\"i\"))"));
    for neighbour in ["ins:Bolu", "ins:Eskisehir", "ins:Konya", "ins:Kirikkale", "ins:Cankiri"] {
        assert!(text.contains(neighbour), "missing {neighbour} in:\n{text}");
    }
}

#[test]
fn sparql_only_suppresses_evaluation() {
    let out = geoqa(&[
        "ask",
        "--sparql-only",
        "Ege Bölgesi'nin yüzölçümü ne kadardır ?",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ins:yuzolcumu"));
    assert!(!text.contains("85000"), "evaluation ran despite --sparql-only");
}

#[test]
fn empty_question_exits_2_naming_the_stage() {
    let out = geoqa(&["ask", ""]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("tokenize"));
}

#[test]
fn json_output_parses_and_carries_the_same_answers() {
    let human = geoqa(&["ask", "Ege Bölgesi'nin yüzölçümü ne kadardır ?"]);
    let json = geoqa(&["--json", "ask", "Ege Bölgesi'nin yüzölçümü ne kadardır ?"]);
    assert!(human.status.success() && json.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&json).trim()).unwrap();
    let answers: Vec<String> = value["solutions"]["answers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(answers, ["85000"]);
    assert!(stdout(&human).contains("85000"));
}

#[test]
fn eval_asserts_method_ordering() {
    let out = geoqa(&[
        "eval",
        suite_path().to_str().unwrap(),
        "--assert-m1-beats-m2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("Method 1: Hybrid approach"));
    assert!(text.contains("Method 2: Ontology based approach"));
}

#[test]
fn eval_single_method_prints_one_row() {
    let out = geoqa(&["eval", suite_path().to_str().unwrap(), "--method", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Method 1"));
    assert!(!text.contains("Method 2"));
}

#[test]
fn eval_missing_suite_exits_2() {
    let out = geoqa(&["eval", "no/such/suite.jsonl"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn train_qt2_reports_accuracy_and_is_deterministic() {
    let dir = std::env::temp_dir();
    let model_a = dir.join(format!("geoqa_model_a_{}.json", std::process::id()));
    let model_b = dir.join(format!("geoqa_model_b_{}.json", std::process::id()));

    let out_a = geoqa(&[
        "train-qt2",
        frames_path().to_str().unwrap(),
        "--out",
        model_a.to_str().unwrap(),
    ]);
    assert!(out_a.status.success(), "{}", stderr(&out_a));
    let text = stdout(&out_a);
    assert!(text.contains("exact-frame accuracy"));
    let accuracy: f64 = text
        .lines()
        .find(|l| l.contains("exact-frame accuracy"))
        .and_then(|l| l.split_whitespace().last())
        .and_then(|v| v.parse().ok())
        .unwrap();
    assert!(accuracy >= 0.70, "accuracy {accuracy} below floor");

    let out_b = geoqa(&[
        "train-qt2",
        frames_path().to_str().unwrap(),
        "--out",
        model_b.to_str().unwrap(),
    ]);
    assert!(out_b.status.success());
    let bytes_a = std::fs::read(&model_a).unwrap();
    let bytes_b = std::fs::read(&model_b).unwrap();
    assert_eq!(bytes_a, bytes_b, "same seed must give byte-identical models");
    let _ = std::fs::remove_file(model_a);
    let _ = std::fs::remove_file(model_b);
}

#[test]
fn train_qt2_rejects_an_empty_test_split() {
    let out = geoqa(&[
        "train-qt2",
        frames_path().to_str().unwrap(),
        "--split",
        "1.0/0.0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn repl_answers_and_quits_cleanly() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_geoqa"))
        .arg("--config")
        .arg(config_path())
        .arg("repl")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        use std::io::Write;
        let stdin = child.stdin.as_mut().unwrap();
        writeln!(stdin, ":sparql").unwrap();
        writeln!(stdin, "Ege Bölgesi'nin yüzölçümü ne kadardır ?").unwrap();
        writeln!(stdin, "bozuk bir soru !").unwrap();
        writeln!(stdin, ":quit").unwrap();
    }
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ins:yuzolcumu"), "sparql toggle output missing");
    assert!(text.contains("85000"));
    assert!(text.contains("error:"), "malformed question should print an error");
}

#[test]
fn load_check_reports_closure_statistics() {
    let out = geoqa(&["load-check"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("classes:            11"));
    assert!(text.contains("closure invariants: ok"));
}

#[test]
fn config_can_come_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_geoqa"))
        .env("GEOQA_CONFIG", config_path())
        .args(["ask", "--sparql-only", "Türkiye'nin nüfusu kaçtır ?"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("ins:populasyon"));
}
