use std::process::{Command, Output};

use lambek_core::frame::Frame;
use lambek_core::net::NetJson;
use lambek_core::{Derivation, Net};

fn lambek(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambek"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    lambek(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(lambek(args).stdout).unwrap()
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&["check", "(p1\\p1)\\!p2 -> p2", "--method", "both"]), 0);
    assert_eq!(code(&["check", "-> p1"]), 1);
    assert_eq!(code(&["check", "p1\\"]), 2);
    assert_eq!(code(&["check", "!p1\\p2 -> p2", "--method", "net"]), 1);
    assert_eq!(code(&["check", "p1 -> p1", "--method", "prover"]), 0);
}

#[test]
fn prove_prints_three_line_derivation() {
    let out = stdout(&["prove", "p2 -> !(p1\\p1)\\p2"]);
    assert_eq!(
        out,
        "p2 -> !(p1\\p1)\\p2 (->\\)\n  !(p1\\p1) p2 -> p2 (W!-> 0)\n    p2 -> p2 (ax)\n"
    );
}

#[test]
fn missing_artifacts_exit_one_with_empty_output() {
    for cmd in ["prove", "net"] {
        let out = lambek(&[cmd, "p1 -> p2"]);
        assert_eq!(out.status.code(), Some(1));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn net_json_for_identity() {
    let out = stdout(&["net", "p1 -> p1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["S"], serde_json::json!([[0, 2]]));
    assert_eq!(v["U"], serde_json::json!([0, 1, 2]));
    let net = Net::from_json(&serde_json::from_str::<NetJson>(&out).unwrap()).unwrap();
    assert!(net.is_valid());
}

#[test]
fn frame_json_for_lone_succedent() {
    let out = stdout(&["frame", "-> p1", "--format", "json"]);
    let f = Frame::from_json(&serde_json::from_str(&out).unwrap()).unwrap();
    assert_eq!(f.len(), 1);
    assert!(f.check().is_empty());
}

#[test]
fn emitted_json_revalidates() {
    let d = stdout(&["prove", "(p1\\p1)\\!p2 -> p2", "--format", "json"]);
    let d = Derivation::from_json(&serde_json::from_str(&d).unwrap()).unwrap();
    assert!(d.is_valid());
    let n = stdout(&["net", "(p1\\p1)\\!p2 -> p2", "--format", "json"]);
    assert!(Net::from_json(&serde_json::from_str(&n).unwrap()).unwrap().is_valid());
}

#[test]
fn dot_output() {
    assert!(stdout(&["net", "p1 -> p1", "--format", "dot"]).starts_with("digraph"));
    assert!(stdout(&["frame", "p1 -> p1", "--format", "dot"]).starts_with("digraph"));
}

#[test]
fn xcheck_is_identical_across_worker_counts() {
    let run = |w: &str| {
        lambek(&[
            "xcheck",
            "--atoms",
            "2",
            "--max-connectives",
            "3",
            "--max-antecedent",
            "2",
            "--workers",
            w,
        ])
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert!(text.contains("disagreements: 0"));
}

#[test]
fn xcheck_rejects_oversized_corpus() {
    assert_eq!(
        code(&[
            "xcheck",
            "--atoms",
            "5",
            "--max-connectives",
            "9",
            "--max-antecedent",
            "6"
        ]),
        2
    );
}
