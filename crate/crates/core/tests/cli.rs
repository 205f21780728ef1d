mod common;

use std::process::Command;

use common::fixture_path;

fn mma(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_mma"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_ok() {
    let o = mma(&["validate", &fixture_path("mafia_endgame")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn query_views() {
    let f = fixture_path("mafia_endgame");
    let o = mma(&[
        "query",
        &f,
        "--at",
        "3",
        "--viewer",
        "e2",
        "--subject",
        "e1",
        "--view",
        "public",
    ]);
    assert_eq!(stdout(&o).trim(), "{{a2,a3,a9}}");
    let o = mma(&[
        "query",
        &f,
        "--at",
        "3",
        "--viewer",
        "e2",
        "--subject",
        "e1",
        "--view",
        "local",
    ]);
    assert_eq!(stdout(&o).trim(), "{{a1,a4,a5}}");
    let f = fixture_path("mafia_endgame_trust_e2");
    let o = mma(&[
        "query",
        &f,
        "--at",
        "4",
        "--viewer",
        "e3",
        "--view",
        "trust-adjusted",
    ]);
    assert_eq!(stdout(&o).trim(), "{{a4,a5}}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{ not json").unwrap();
    assert_eq!(
        mma(&["validate", broken.to_str().unwrap()]).status.code(),
        Some(3)
    );

    let text = std::fs::read_to_string(fixture_path("mafia_endgame")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["factual"][0]["arguments"] = serde_json::json!([]);
    let invalid = dir.path().join("invalid.json");
    std::fs::write(&invalid, doc.to_string()).unwrap();
    assert_eq!(
        mma(&["validate", invalid.to_str().unwrap()]).status.code(),
        Some(1)
    );

    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let first = doc["script"][0].clone();
    doc["script"].as_array_mut().unwrap().insert(1, first);
    let repeat = dir.path().join("repeat.json");
    std::fs::write(&repeat, doc.to_string()).unwrap();
    let o = mma(&["run", repeat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("halted at step 2"));

    assert_eq!(
        mma(&["run", "--policy", "x", &fixture_path("mafia_endgame")])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn export_and_oracle_check() {
    let o = mma(&[
        "export",
        &fixture_path("mafia_endgame"),
        "--at",
        "4",
        "--view",
        "public",
        "--format",
        "graph",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("digraph mma {"));
    let o = mma(&[
        "oracle-check",
        "--max-args",
        "6",
        "--trials",
        "20",
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 disagreements"));
}

#[test]
fn trace_file_is_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trace.json");
    let o = mma(&[
        "run",
        &fixture_path("mafia_endgame"),
        "--trace",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 4);
    let step3 = &v["steps"][2];
    let pair = step3["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["viewer"] == "e2" && r["subject"] == "e1")
        .unwrap();
    assert_eq!(pair["verdict"], "dishonest");
}
