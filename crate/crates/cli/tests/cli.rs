//! End-to-end runs of the binary: output shape, exit codes, determinism.

use std::path::Path;
use std::process::{Command, Output};

fn csm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csm")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("write temp file");
    path.display().to_string()
}

const BOOLEAN_P2: &str = r#"{"n": 2, "hyperplanes": [[1,0,0],[0,1,0],[0,0,1]]}"#;

const SEGMENT_POSET: &str = r#"{
  "strata": [
    {"name": "pt", "dim": 0, "chi_c": 1, "closure_of": ["seg"]},
    {"name": "seg", "dim": 1, "chi_c": 1}
  ]
}"#;

#[test]
fn arrangement_run_passes_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "b.json", BOOLEAN_P2);
    let out = csm(&["arrangement", &path]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("poincare polynomial: 1 + 3t + 3t^2 + t^3"));
    assert!(text.contains("signed ssm of the complement = +1 (2)  +3 (1)  +6 ()"));
    assert!(text.contains("euler characteristic of the complement: 0"));
    assert!(text.contains("all 5 checks passed"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.json", "{ not json");
    let out = csm(&["arrangement", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert!(out.stdout.is_empty());

    let missing = dir.path().join("nope.json").display().to_string();
    assert_eq!(csm(&["arrangement", &missing]).status.code(), Some(2));

    // proportional rows collapse to the same hyperplane
    let dup = write(dir.path(), "dup.json", r#"{"n":1,"hyperplanes":[[1,2],[2,4]]}"#);
    assert_eq!(csm(&["arrangement", &dup]).status.code(), Some(2));
}

#[test]
fn runs_are_byte_for_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "b.json", BOOLEAN_P2);
    for args in [
        vec!["arrangement", path.as_str()],
        vec!["arrangement", path.as_str(), "--output", "json"],
        vec!["grassmannian", "--k", "2", "--n", "5", "--output", "json"],
        vec!["cells-pn", "--n", "4", "--output", "json"],
    ] {
        let a = csm(&args);
        let b = csm(&args);
        assert_eq!(a.stdout, b.stdout, "args: {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn json_report_matches_the_contract() {
    let out = csm(&["grassmannian", "--k", "2", "--n", "5", "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let obj = v.as_object().unwrap();
    for key in ["command", "inputs_digest", "checks", "data", "exit_status"] {
        assert!(obj.contains_key(key), "missing {key}");
    }
    assert_eq!(v["exit_status"], 0);
    let digest = v["inputs_digest"].as_str().unwrap();
    assert_eq!(digest.len(), 64);
    assert!(digest.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 7);
    assert!(checks.iter().all(|c| c["pass"] == true));
    assert!(checks.iter().all(|c| c.get("witness").is_none()));
    assert_eq!(
        v["data"]["orientation"],
        "stored columns are cells (the table is the transpose of the stored matrix)"
    );
    assert_eq!(v["command"][0], "grassmannian");
    // default source resolution is recorded in the echoed command
    assert_eq!(v["command"][5], "--fixture");
    assert_eq!(v["command"][6], "builtin");
}

#[test]
fn quiet_json_prints_nothing() {
    let out = csm(&["cells-pn", "--n", "3", "--output", "json", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn quiet_table_prints_only_failures() {
    let ok = csm(&["cells-pn", "--n", "3", "--quiet"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stdout.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{
          "model": {"kind": "grassmannian", "k": 1, "n": 3},
          "basis": [[], [1], [2]],
          "rows": [["1","0","0"], ["2","1","0"], ["1","-2","1"]]
        }"#,
    );
    let out = csm(&["grassmannian", "--k", "1", "--n", "3", "--ssm-file", &bad, "--quiet"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("check sign-alternation: FAIL"));
    assert!(text.contains("coefficient 2"));
    assert!(!text.contains(": ok"));
}

#[test]
fn failing_check_carries_a_witness_in_json() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{
          "model": {"kind": "grassmannian", "k": 1, "n": 3},
          "basis": [[], [1], [2]],
          "rows": [["1","0","0"], ["2","1","0"], ["1","-2","1"]]
        }"#,
    );
    let out =
        csm(&["grassmannian", "--k", "1", "--n", "3", "--ssm-file", &bad, "--output", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["exit_status"], 1);
    let failing: Vec<_> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|c| c["witness"].is_string()));
}

#[test]
fn source_flags_are_mutually_exclusive() {
    let out = csm(&[
        "grassmannian",
        "--k",
        "2",
        "--n",
        "5",
        "--fixture",
        "builtin",
        "--ssm-file",
        "x.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(csm(&["grassmannian", "--k", "2", "--n", "5", "--fixture", "mystery"])
        .status
        .code(), Some(2));
    // fixture ids are pinned to their models
    assert_eq!(
        csm(&["grassmannian", "--k", "2", "--n", "6", "--fixture", "builtin"]).status.code(),
        Some(2)
    );
    assert_eq!(
        csm(&["grassmannian", "--k", "2", "--n", "5", "--fixture", "builtin-31"]).status.code(),
        Some(2)
    );
}

#[test]
fn constructible_modes_and_grammar() {
    let dir = tempfile::tempdir().unwrap();
    let poset = write(dir.path(), "p.json", SEGMENT_POSET);

    let signed = csm(&["constructible", &poset, "--function", "seg=1,pt=1", "--signed"]);
    assert_eq!(signed.status.code(), Some(0));
    let text = stdout(&signed);
    assert!(text.contains("the characteristic cycle is effective"));
    assert!(text.contains("euler characteristic: 0"));

    let plain = csm(&["constructible", &poset, "--function", "seg=1,pt=1"]);
    assert_eq!(plain.status.code(), Some(0));
    assert!(stdout(&plain).contains("NOT effective"));

    let behrend = csm(&["constructible", &poset, "--behrend", "seg=2", "--output", "json"]);
    assert_eq!(behrend.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&behrend)).unwrap();
    assert_eq!(v["data"]["cc"]["seg"], "2");
    assert_eq!(v["data"]["cc"]["pt"], "0");
    assert_eq!(v["data"]["effective"], true);

    let zero = csm(&["constructible", &poset, "--function", "zero"]);
    assert_eq!(zero.status.code(), Some(0));
    assert!(stdout(&zero).contains("empty cycle, not effective"));

    // grammar violations
    for args in [
        vec!["constructible", poset.as_str()],
        vec!["constructible", poset.as_str(), "--function", "seg=1", "--behrend", "pt=1"],
        vec!["constructible", poset.as_str(), "--behrend", "pt=1", "--signed"],
        vec!["constructible", poset.as_str(), "--function", "ghost=1"],
        vec!["constructible", poset.as_str(), "--function", "seg"],
        vec!["constructible", poset.as_str(), "--function", "seg=1,seg=2"],
        vec!["constructible", poset.as_str(), "--behrend", "pt=-1"],
    ] {
        assert_eq!(csm(&args).status.code(), Some(2), "args: {args:?}");
    }
}

#[test]
fn generative_and_file_sources_agree() {
    // feed the generative table back through --ssm-file and expect the same report data
    let generated = csm(&["grassmannian", "--k", "1", "--n", "4", "--output", "json"]);
    assert_eq!(generated.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&generated)).unwrap();
    let table = serde_json::to_string(&v["data"]["ssm_table"]).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "t.json", &table);
    let reread =
        csm(&["grassmannian", "--k", "1", "--n", "4", "--ssm-file", &path, "--output", "json"]);
    assert_eq!(reread.status.code(), Some(0));
    let w: serde_json::Value = serde_json::from_str(&stdout(&reread)).unwrap();
    assert_eq!(v["data"]["ssm_table"], w["data"]["ssm_table"]);
}

#[test]
fn csm_file_source_converts_before_checking() {
    // cells of P^2 as a csm table on the rank-one model
    let csm_table = r#"{
      "model": {"kind": "grassmannian", "k": 1, "n": 3},
      "basis": [[], [1], [2]],
      "rows": [["1","0","0"], ["1","1","0"], ["1","2","1"]]
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "c.json", csm_table);
    let out = csm(&["grassmannian", "--k", "1", "--n", "3", "--csm-file", &path]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("all 5 checks passed"));
    assert!(text.contains("(1)  -2    1")); // ssm of the line cell is -2, 1, 0
}
