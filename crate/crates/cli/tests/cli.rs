//! Exit codes, report framing and reproducibility of the binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qsrlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsrlab"))
        .args(args)
        .output()
        .unwrap()
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn jsonl_has_header_records_and_summary() {
    let out = qsrlab(&["--format", "jsonl", "verify", "--suite", "degrees"]);
    assert_eq!(out.status.code(), Some(0));
    let v = lines(&out);
    assert_eq!(v[0]["record"], "run");
    assert_eq!(v[0]["command"], "verify");
    assert_eq!(v[0]["seed"], 1);
    let last = v.last().unwrap();
    assert_eq!(last["record"], "summary");
    assert_eq!(last["fail"], 0);
    assert_eq!(last["pass"].as_u64().unwrap() as usize, v.len() - 2);
    assert!(v[1..v.len() - 1]
        .iter()
        .all(|r| r["status"] == "pass" && r.get("wall_ms").is_none()));
}

#[test]
fn timings_are_opt_in() {
    let out = qsrlab(&[
        "--format",
        "jsonl",
        "--timings",
        "verify",
        "--suite",
        "degrees",
    ]);
    assert!(lines(&out)[1]["wall_ms"].is_number());
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["--format", "jsonl", "--seed", "42", "structural"];
    let a = qsrlab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, qsrlab(&args).stdout);
    let seq = qsrlab(&[
        "--format",
        "jsonl",
        "--seed",
        "42",
        "--sequential",
        "structural",
    ]);
    assert_eq!(a.stdout, seq.stdout);
}

#[test]
fn text_report_passes() {
    let out = qsrlab(&["affine"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[affine]"));
    assert!(text.trim_end().ends_with("0 fail, 0 warn"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        qsrlab(&["sporadic", "--only", "M99"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qsrlab(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(qsrlab(&["tables", "--max-n", "3"]).status.code(), Some(2));
    assert_eq!(qsrlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qsrlab(&["--seed", "x", "affine"]).status.code(), Some(2));
    let out = qsrlab(&["--data", "/nonexistent", "sporadic", "--only", "M11"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m11.json"));
}

#[test]
fn mismatch_exits_1() {
    // swap the generators of two M11 subgroups so the rows disagree with
    // the reference table
    let text = std::fs::read_to_string(data_dir().join("m11.json")).unwrap();
    let mut d: Value = serde_json::from_str(&text).unwrap();
    let subs = d["subgroups"].as_array_mut().unwrap();
    let a = subs.iter().position(|s| s["name"] == "A6.2_3").unwrap();
    let b = subs.iter().position(|s| s["name"] == "2S4").unwrap();
    let (ga, ia) = (subs[a]["generators"].clone(), subs[a]["index"].clone());
    subs[a]["generators"] = subs[b]["generators"].clone();
    subs[a]["index"] = subs[b]["index"].clone();
    subs[b]["generators"] = ga;
    subs[b]["index"] = ia;
    let dir = std::env::temp_dir().join(format!("qsrlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("m11.json"), d.to_string()).unwrap();
    let out = qsrlab(&[
        "--format",
        "jsonl",
        "--data",
        dir.to_str().unwrap(),
        "sporadic",
        "--only",
        "M11",
    ]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(lines(&out).last().unwrap()["fail"].as_u64().unwrap() >= 2);
}
