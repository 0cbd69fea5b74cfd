use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_littelmann")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_str().unwrap().to_string()
}

#[test]
fn decompose_text_and_oracle() {
    let o = run(&["--type", "A2", "decompose", "--mu", "1,0", "--nu", "1,0", "--oracle"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "2,0:1, 0,1:1");
    assert!(stderr(&o).contains("identical"));
}

#[test]
fn decompose_json_and_tsv() {
    let o = run(&["--type", "G2", "--format", "json", "decompose", "--mu", "1,0", "--nu", "1,0"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["truncated"], false);
    assert_eq!(v["components"].as_array().unwrap().len(), 4);
    let o = run(&["--type", "A1", "--format", "tsv", "decompose", "--mu", "2", "--nu", "1"]);
    assert_eq!(stdout(&o), "3\t1\n1\t1\n");
}

#[test]
fn affine_needs_limits() {
    let o = run(&["--type", "A1~", "decompose", "--mu", "1,0", "--nu", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--type", "A1~", "--max-nodes", "30", "decompose", "--mu", "1,0", "--nu", "0,1"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("partial"));
}

#[test]
fn custom_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("b2.json");
    std::fs::write(&file, r#"{"name": "B2", "cartan": [[2, -1], [-2, 2]]}"#).unwrap();
    let o = run(&["--matrix-file", file.to_str().unwrap(), "decompose", "--mu", "0,1", "--nu", "0,1", "--oracle"]);
    assert!(o.status.success(), "{}", stderr(&o));
    // spin (x) spin = 10 + 5 + 1
    assert_eq!(stdout(&o).trim(), "1,0:1, 0,2:1, 0,0:1");
    std::fs::write(&file, r#"{"cartan": [[2, 1], [-1, 2]]}"#).unwrap();
    let o = run(&["--matrix-file", file.to_str().unwrap(), "decompose", "--mu", "0,1", "--nu", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Cartan"));
}

#[test]
fn crystal_dot_uses_labels_from_one() {
    let o = run(&["--type", "A2", "crystal", "--lambda", "1,0", "--dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("n0 -> n1 [label=\"1\"]"));
    assert!(dot.contains("n1 -> n2 [label=\"2\"]"));
    let o = run(&["--type", "A1~", "--max-nodes", "20", "crystal", "--lambda", "1,0", "--dot"]);
    assert!(stdout(&o).contains("[label=\"0\"]"));
}

#[test]
fn crystal_json_round_trips_paths() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.json");
    let o = run(&["--type", "B2", "-o", out.to_str().unwrap(), "crystal", "--lambda", "0,1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
    let path = dir.path().join("p.json");
    std::fs::write(&path, v["nodes"][1]["path"].to_string()).unwrap();
    let o = run(&["--type", "B2", "--format", "text", "crystal", "--path", path.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "1,-1:1, 0,1:1, 0,-1:1, -1,1:1");
}

#[test]
fn extremal_reports_both_checks() {
    let o = run(&["--type", "A2", "extremal", "--path", &fixture("a2_extremal_failing_criterion.json")]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["extremal"], true);
    assert_eq!(v["criterion"]["passed"], false);
    assert!(!v["criterion"]["violations"].as_array().unwrap().is_empty());
    let o = run(&["--type", "A2", "extremal", "--path", &fixture("a2_necessary_not_extremal.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["extremal"], false);
}

#[test]
fn extremal_accepts_a_witness_file() {
    let o = run(&["--type", "G2", "extremal", "--path", &fixture("g2_witness.json")]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["extremal"], true);
    assert_eq!(v["criterion"]["verdict"], "passed");
    assert_eq!(v["highest_weight"], "1,1");
}

#[test]
fn prv_builds_the_g2_witness() {
    let o = run(&[
        "--type", "G2", "prv", "--mu", "0,2", "--nu", "2,2", "--v", "2.1.2.1", "--w", "1", "--beta", "3,1", "--k", "1",
        "--check-oracle",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lambda"], serde_json::json!([1, 1]));
    assert_eq!(v["brute_force"], true);
    assert_eq!(v["oracle_confirmed"], true);
    assert_eq!(v["instance"]["case"], "v-side");
    let pinned: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(fixture("g2_witness.json")).unwrap()).unwrap();
    assert_eq!(v["witness_path"], pinned["witness_path"]);
}

#[test]
fn prv_rejects_k_beyond_the_bound() {
    let o = run(&["--type", "G2", "prv", "--mu", "0,2", "--nu", "2,2", "--v", "2.1.2.1", "--w", "1", "--beta", "3,1", "--k", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("= 2"), "{}", stderr(&o));
}

#[test]
fn prv_enumeration_text() {
    let o = run(&["--type", "A2", "--format", "text", "prv", "--enumerate", "--check-oracle", "--mu", "7,3", "--nu", "1,3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 16);
    assert!(lines.iter().any(|l| l.starts_with("8,0\t")));
}

#[test]
fn figures() {
    let o = run(&["--type", "A2", "figure", "--path", &fixture("a2_necessary_not_extremal.json")]);
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg") && svg.contains("data-unit=\"36\""));
    let o = run(&["--type", "A2", "figure", "--decompose", "--mu", "7,3", "--nu", "1,3"]);
    let svg = stdout(&o);
    assert_eq!(svg.matches("class=\"classic\"").count(), 6);
    assert_eq!(svg.matches("class=\"generalized\"").count(), 10);
    let o = run(&["--type", "A3", "figure", "--decompose", "--mu", "1,0,0", "--nu", "1,0,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["decompose", "--mu", "1", "--nu", "1"]).status.code(), Some(2));
    assert_eq!(run(&["--type", "A2", "decompose", "--mu", "1", "--nu", "1,0"]).status.code(), Some(2));
    assert_eq!(run(&["--type", "Z7", "decompose", "--mu", "1", "--nu", "1"]).status.code(), Some(2));
}
