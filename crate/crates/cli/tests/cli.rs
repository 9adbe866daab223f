//! End-to-end checks of the torlab binary against the bundled sessions.

use assert_cmd::Command;
use predicates::prelude::*;
use std::path::PathBuf;

fn session(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../sessions")
        .join(name)
}

fn torlab() -> Command {
    Command::cargo_bin("torlab").unwrap()
}

#[test]
fn depth_profile_text() {
    torlab()
        .args(["depth", "--session"])
        .arg(session("r2.json"))
        .assert()
        .success()
        .stdout(predicate::str::contains("depth(m) = 2 [ext]"))
        .stdout(predicate::str::contains("grade(px) = 1 [koszul]"))
        .stdout(predicate::str::contains("height(m) = 2 [ext]"));
}

#[test]
fn enumerate_order_preserving_count() {
    torlab()
        .args(["enumerate", "--filter", "order-preserving", "--session"])
        .arg(session("r2.json"))
        .assert()
        .success()
        .stdout(predicate::str::contains("count = 9 [ext]"));
}

#[test]
fn verify_passes_on_the_nodal_session() {
    torlab()
        .args(["verify", "--session"])
        .arg(session("r3.json"))
        .assert()
        .success()
        .stdout(predicate::str::contains("\"pass\":true"));
}

#[test]
fn membership_agrees_on_both_paths() {
    torlab()
        .args(["membership", "--module", "A", "--session"])
        .arg(session("r3.json"))
        .assert()
        .success()
        .stdout(predicate::str::contains("membership = member [ext]"))
        .stdout(predicate::str::contains("membership = member [tor-oracle]"));
}

#[test]
fn json_output_is_byte_deterministic() {
    let run = || {
        torlab()
            .args(["depth", "--format", "json", "--session"])
            .arg(session("r2.json"))
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"], "depth");
    assert_eq!(doc["session_digest"].as_str().unwrap().len(), 64);
    // Every number names its computation path.
    for entry in doc["results"].as_array().unwrap() {
        let path = entry["path"].as_str().unwrap();
        assert!(matches!(path, "koszul" | "ext" | "tor-oracle"));
    }
    // Timing never appears in json mode.
    assert!(!String::from_utf8(a.stdout).unwrap().contains("ms"));
}

#[test]
fn unknown_module_is_an_error() {
    torlab()
        .args(["tor", "--first", "A", "--second", "missing", "--degree", "1", "--session"])
        .arg(session("r2.json"))
        .assert()
        .code(1)
        .stderr(predicate::str::contains("unknown module"));
}

#[test]
fn exhausted_budget_is_indeterminate_not_false() {
    torlab()
        .args([
            "membership",
            "--module",
            "A",
            "--max-resolution-length",
            "0",
            "--session",
        ])
        .arg(session("r3.json"))
        .assert()
        .code(2)
        .stdout(predicate::str::contains("[indeterminate]"));
}

#[test]
fn recover_round_trips_the_declared_phi() {
    torlab()
        .args(["recover", "--session"])
        .arg(session("r1.json"))
        .assert()
        .success()
        .stdout(predicate::str::contains("matches-declared-phi = true"));
}

#[test]
fn dual_is_an_involution_on_the_regular_session() {
    torlab()
        .args(["dual", "--session"])
        .arg(session("r2.json"))
        .assert()
        .success()
        .stdout(predicate::str::contains("double-dual-is-identity = true"));
}

#[test]
fn rfd_small_bound_stays_below_large() {
    torlab()
        .args(["rfd", "--module", "k", "--session"])
        .arg(session("r2.json"))
        .assert()
        .success()
        .stdout(predicate::str::contains("rfd = 2 [ext]"))
        .stdout(predicate::str::contains("rfd-small-lower = 2 [tor-oracle]"));
}
