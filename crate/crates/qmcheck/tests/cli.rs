//! End-to-end checks of the command-line driver.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qmcheck"))
}

#[test]
fn tower_subcommand_prints_invariants() {
    let out = bin().args(["tower", "2:0.0.0.0"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("middle genus   5"));
    assert!(text.contains("top genus      9"));
    assert!(text.contains("dim P          4"));
    let out = bin()
        .args(["tower", "3:0.0.0.0", "--format", "json"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["invariants"]["dim_p"], 8);
    assert_eq!(v["invariants"]["dim_shim"], 6);
}

#[test]
fn tower_subcommand_rejects_bad_specs() {
    let out = bin().args(["tower", "1:0.3.0.0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["tower", "garbage"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_json_is_byte_deterministic() {
    let run = || {
        bin()
            .args([
                "verify",
                "quaternion",
                "--format",
                "json",
                "--samples",
                "50",
            ])
            .env("QMCHECK_SEED", "12345")
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn verify_text_lists_anchors() {
    let out = bin()
        .args(["verify", "tower"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("tower-census/five-cases"));
    assert!(text.contains("PASS"));
    assert!(text.contains("summary:"));
}

#[test]
fn verify_rejects_bad_parameters() {
    let out = bin()
        .args(["verify", "cubic", "--alpha", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["verify", "unknown-suite"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["verify", "cubic", "--alpha", "1/0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_symbolic_alpha() {
    let out = bin()
        .args([
            "verify",
            "cubic",
            "--alpha",
            "symbolic",
            "--samples",
            "20",
            "--random-members",
            "1",
            "--pairs",
            "2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("symbolic-family"));
}

#[test]
fn verify_writes_output_file() {
    let dir = std::env::temp_dir().join("qmcheck-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tower.json");
    let out = bin()
        .args([
            "verify",
            "tower",
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["suite"], "tower");
    std::fs::remove_file(&path).ok();
}

#[test]
fn census_prints_five_rows() {
    let out = bin().args(["census"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 6); // header + five rows
    assert!(text.contains("2:0.0.0.0"));
    let out = bin().args(["census", "--format", "json"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
}
