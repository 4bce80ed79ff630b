use std::process::{Command, Output};

use serde_json::Value;

fn cbck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbck"))
        .args(args)
        .env_remove("CBCK_SIZE_CAP")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = cbck(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn check_reports_shape() {
    let r = json(&["check", "-,0,1,1"]);
    let a = &r["result"]["algebras"][0];
    assert_eq!(a["axioms"], "pass");
    assert_eq!(a["height"], 2);
    assert_eq!(a["width"], 2);
    assert_eq!(r["inputs"][0], "-,0,1,1");
    assert!(r.get("elapsed_ms").is_none());
}

#[test]
fn covers_of_s3_lists_three_candidates() {
    let r = json(&["covers", "S:3"]);
    let mut keys: Vec<String> = r["result"]["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["key"].as_str().unwrap().to_string())
        .collect();
    keys.sort();
    // S_4, M_2(S_1), M_2(S_2)
    let mut expected = vec!["((((()))))", "((()()))", "(((()())))"];
    expected.sort();
    assert_eq!(keys, expected);
    assert_eq!(r["result"]["covers"].as_array().unwrap().len(), 3);
}

#[test]
fn classified_subs_of_s6_include_divisors() {
    let r = json(&["subs", "S:6", "--classified"]);
    let kinds: Vec<String> = r["result"]["algebras"][0]["subalgebras"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["kind"].as_str().unwrap().to_string())
        .collect();
    assert!(kinds.contains(&"divisor(2)".to_string()));
    assert!(kinds.contains(&"divisor(3)".to_string()));
    assert!(!kinds.contains(&"other".to_string()));
}

#[test]
fn brute_and_closure_subs_agree() {
    let a = json(&["subs", "M:2,1:2"]);
    let b = json(&["subs", "M:2,1:2", "--brute"]);
    assert_eq!(
        a["result"]["algebras"][0]["subalgebras"],
        b["result"]["algebras"][0]["subalgebras"]
    );
}

#[test]
fn output_is_byte_stable() {
    let args = ["--json", "covers", "M:1,1:2", "--mode", "full", "--oracle"];
    assert_eq!(cbck(&args).stdout, cbck(&args).stdout);
    let sweep = ["sweep", "--max-nodes", "7", "--jobs", "4"];
    let one = ["sweep", "--max-nodes", "7", "--jobs", "1"];
    assert_eq!(cbck(&sweep).stdout, cbck(&one).stdout);
}

#[test]
fn timing_is_opt_in() {
    let r = json(&["--timing", "check", "S:2"]);
    assert!(r["elapsed_ms"].is_u64());
}

#[test]
fn oracle_confirms_covers() {
    let r = json(&["covers", "M:1,1:1", "--oracle"]);
    for c in r["result"]["covers"].as_array().unwrap() {
        assert_eq!(c["oracle"], true);
    }
}

#[test]
fn minimality_failure_exits_3() {
    let out = cbck(&["covers", "M:3,3:4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("minimal"));
    let out = cbck(&["covers", "M:3,3:4", "--rule", "all-minimal"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn validation_failures_exit_2() {
    for args in [
        vec!["check", "-,0,0"],
        vec!["check", "-,0,5"],
        vec!["check", "M:1:2"],
        vec!["covers", "S:0"],
        vec!["covers", "S:2", "--mode", "partial"],
        vec!["var", "cover-check", "S:3", "S:2"],
    ] {
        assert_eq!(cbck(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn file_inputs_report_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trees.txt");
    std::fs::write(&path, "S:2\n# comment\n\n-,0,1,1\n").unwrap();
    let r = json(&["check", path.to_str().unwrap()]);
    assert_eq!(r["result"]["algebras"].as_array().unwrap().len(), 2);

    std::fs::write(&path, "S:2\n-,0,1,x\n").unwrap();
    let out = cbck(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("trees.txt:2"), "{err}");
}

#[test]
fn variety_summary() {
    let r = json(&["var", "M:1,1:1", "S:2"]);
    assert_eq!(r["result"]["n_generated"], 1);
    assert_eq!(
        strings(&r["result"]["si_closure"]),
        ["((()()))", "((()))", "(())", "()"]
    );
    let r = json(&["var", "S:3", "M:1,1:1", "--covers", "--oracle"]);
    assert_eq!(r["result"]["n_generated"], 2);
    for c in r["result"]["covers"].as_array().unwrap() {
        assert_eq!(c["oracle"], true);
    }
}

#[test]
fn cover_check_verdicts() {
    let r = json(&["var", "cover-check", "S:2", "S:2+M:1,1:1"]);
    assert_eq!(r["result"]["is_cover"], true);
    let r = json(&["var", "cover-check", "S:2", "S:4"]);
    assert_eq!(r["result"]["is_cover"], false);
}

#[test]
fn dot_files_follow_input_indices() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.dot");
    let out = cbck(&["render", "-,0,1,1,2", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let dot = std::fs::read_to_string(&path).unwrap();
    for edge in ["n0 -> n1;", "n1 -> n2;", "n1 -> n3;", "n2 -> n4;"] {
        assert!(dot.contains(edge), "{dot}");
    }

    let covers_dir = dir.path().join("covers");
    let r = json(&["covers", "S:2", "--dot-dir", covers_dir.to_str().unwrap()]);
    let files = strings(&r["result"]["dot_files"]);
    assert_eq!(
        files.len(),
        r["result"]["candidates"].as_array().unwrap().len()
    );
    for f in files {
        assert!(std::fs::read_to_string(f).unwrap().starts_with("digraph"));
    }
}

#[test]
fn size_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cbck"))
        .args(["subs", "S:6", "--brute"])
        .env("CBCK_SIZE_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
