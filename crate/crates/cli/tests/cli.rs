//! Black-box tests of the `vequil` binary: exit-status contract, report
//! determinism, JSON emission, and report verification.

use std::path::Path;
use std::process::{Command, Output};

const CONFIG: &str = "\
space 1
cone orthant 2
domain -1 1 8
map f catalog EX_PHI_PSI_F
map g catalog EX_PHI_PSI_G
task validate-cone
task eval map=g x=-1/2 y=3/4
task solve problem=dual map=g
task semicont kind=ausc map=g fix-y=0 at=0
";

fn vequil(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vequil"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("problem.cfg");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn run_is_deterministic_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), CONFIG);
    let first = vequil(&["run", "--config", &cfg], dir.path());
    assert_eq!(first.status.code(), Some(0));
    let second = vequil(&["run", "--config", &cfg], dir.path());
    assert_eq!(first.stdout, second.stdout, "reports must be byte-identical");
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.starts_with("vequil-report 1"));
    assert!(text.contains("begin-config") && text.contains("end-config"));
    assert!(text.contains("value "));
    assert!(text.contains("solution -1/2"));
}

#[test]
fn subcommands_filter_by_task_kind() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), CONFIG);
    let out = vequil(&["solve", "--config", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("solution "));
    assert!(!text.contains("cone valid"), "filtered report leaked other tasks");
}

#[test]
fn json_flag_emits_json() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), CONFIG);
    let out = vequil(&["run", "--config", &cfg, "--json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(value.get("tasks").and_then(|t| t.as_array()).is_some());
}

#[test]
fn expectation_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // this check is refuted, so expecting holds must exit 1
    let cfg = write_config(
        dir.path(),
        "space 1\ncone orthant 2\ndomain -1 1 8\nmap f catalog EX_B1_SEMICONT_F\n\
         task semicont kind=ausc map=f fix-y=0 at=-1/2 expect=holds\n",
    );
    let out = vequil(&["semicont", "--config", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(1));
    // with the correct expectation the same run exits 0
    let cfg = write_config(
        dir.path(),
        "space 1\ncone orthant 2\ndomain -1 1 8\nmap f catalog EX_B1_SEMICONT_F\n\
         task semicont kind=ausc map=f fix-y=0 at=-1/2 expect=fails\n",
    );
    let out = vequil(&["semicont", "--config", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = vequil(&["run", "--config", "does-not-exist.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let cfg = write_config(dir.path(), "cone orthant 2\nbogus directive\n");
    let out = vequil(&["run", "--config", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let cfg = write_config(
        dir.path(),
        "space 1\ncone orthant 2\ndomain -1 1 8\ntask solve problem=dual map=missing\n",
    );
    let out = vequil(&["run", "--config", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_accepts_untouched_and_rejects_tampered_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), CONFIG);
    let out = vequil(&["run", "--config", &cfg], dir.path());
    let report = String::from_utf8(out.stdout).unwrap();
    let good = dir.path().join("good.report");
    std::fs::write(&good, &report).unwrap();
    let out = vequil(&["verify", good.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0));
    // flip a recorded solution and expect rejection naming the task
    let tampered_text = report.replace("solution -1/2", "solution -3/8");
    assert_ne!(tampered_text, report);
    let bad = dir.path().join("bad.report");
    std::fs::write(&bad, tampered_text).unwrap();
    let out = vequil(&["verify", bad.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("does NOT verify"));
    // malformed report file
    let garbage = dir.path().join("garbage.report");
    std::fs::write(&garbage, "not a report\n").unwrap();
    let out = vequil(&["verify", garbage.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_and_grid_flags_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), CONFIG);
    let out = vequil(
        &["run", "--config", &cfg, "--budget", "16", "--grid", "4", "--seed", "7"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let out = vequil(&["run", "--config", &cfg, "--budget", "0"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}
