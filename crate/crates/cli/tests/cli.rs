use std::process::Command;

fn reedylab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_reedylab")).args(args).output().unwrap()
}

#[test]
fn passing_suite_exits_zero_with_json() {
    let out = reedylab(&["obstruction-u"]);
    assert_eq!(out.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["suite"], "obstruction-u");
    assert!(cert["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(reedylab(&["no-such-suite"]).status.code(), Some(2));
    assert_eq!(reedylab(&["hom-counts", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(reedylab(&["export-dot"]).status.code(), Some(2));
}

#[test]
fn out_file_and_markdown() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.md");
    let out = reedylab(&["sieve-chain", "--format", "markdown", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("## sieve-chain"));
    assert!(text.contains("| no-factorization-of-f1-through-f2 | pass |"));
}

#[test]
fn budget_env_is_echoed() {
    let out = Command::new(env!("CARGO_BIN_EXE_reedylab"))
        .args(["hom-counts", "--cube-dim", "2"])
        .env("REEDYLAB_BUDGET", "12345")
        .output()
        .unwrap();
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["config"]["budget"]["max_candidates"], 12345);
}

#[test]
fn dot_export_of_inputs() {
    let out = reedylab(&["export-dot", "--crown", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("->").count(), 8);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.json");
    std::fs::write(&path, r#"{"size": 4, "join": [[0,1,2,3],[1,1,3,3],[2,3,2,3],[3,3,3,3]]}"#).unwrap();
    let out = reedylab(&["export-dot", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("->").count(), 4);
}

#[test]
fn cube_and_obstruct_commands() {
    let out = reedylab(&["cube", "homcount", "3", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["formula"], "9");
    assert_eq!(v["enumeration"], "9");
    let out = reedylab(&["cube", "triangulate", "--dim", "2", "--levels", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["levels"][0], 4);
    let out = reedylab(&["obstruct", "crown", "--m", "3", "--n", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["windings"].as_object().unwrap().keys().collect::<Vec<_>>(), vec!["0"]);
    assert_eq!(reedylab(&["obstruct", "sieve-chain", "--n", "3"]).status.code(), Some(0));
    assert_eq!(reedylab(&["obstruct", "u"]).status.code(), Some(0));
}
