use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn chomog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chomog")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let out = chomog(args);
    assert!(out.status.success());
    let path = dir.join(name);
    fs::write(&path, &out.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_cycle_round_trips() {
    let out = chomog(&["gen", "cycle", "5", "--compose-empty", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text, "{\"n\":5,\"edges\":[[0,1],[1,2],[2,3],[3,4],[4,0]]}\n");
    let d = chomog::io::from_json(&text).unwrap();
    assert_eq!(chomog::io::to_json(&d) + "\n", text);
}

#[test]
fn gen_dot_and_composition() {
    let out = chomog(&["gen", "cycle", "3", "--compose-empty", "2", "--dot"]);
    let text = stdout(&out);
    assert!(text.starts_with("digraph D {\n"));
    assert_eq!(text.lines().filter(|l| l.contains("->")).count(), 12);
    assert_eq!(chomog(&["gen", "cycle", "2"]).status.code(), Some(2));
}

#[test]
fn check_exit_codes_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write_gen(dir.path(), "c5.json", &["gen", "cycle", "5"]);
    let ok = chomog(&["check", &c5, "--mode", "c-homogeneous"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("verdict: holds"));
    let bad = chomog(&["check", &c5, "--mode", "homogeneous"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("witness:"));
    // identical invocations give identical bytes
    assert_eq!(bad.stdout, chomog(&["check", &c5, "--mode", "homogeneous"]).stdout);

    let cyc = write_gen(dir.path(), "c6.json", &["gen", "cycle", "6"]);
    assert_eq!(chomog(&["check", &cyc, "--mode", "c-bipartite"]).status.code(), Some(0));
    assert_eq!(chomog(&["check", &c5, "--mode", "c-bipartite"]).status.code(), Some(2));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\"n\":2,\"edges\":[[0,1],[1,0]]}").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(chomog(&["check", p, "--mode", "homogeneous"]).status.code(), Some(2));
    assert_eq!(chomog(&["check", p, "--mode", "sideways"]).status.code(), Some(2));
    assert_eq!(chomog(&["check", p, "--mode", "homogeneous", "--bogus"]).status.code(), Some(2));
}

#[test]
fn reach_writes_class_dots() {
    let dir = tempfile::tempdir().unwrap();
    let y3 = write_gen(dir.path(), "y3.json", &["gen", "y", "3"]);
    let dots = dir.path().join("dots");
    let out = chomog(&["reach", &y3, "--dot-dir", dots.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("classes: 3"));
    assert!(text.contains("shape: MatchingComplement(3)"));
    assert_eq!(fs::read_dir(&dots).unwrap().count(), 3);
}

#[test]
fn quotient_commands() {
    let out = chomog(&["quotient", "--k", "3", "--a", "[1,2,0]", "--b", "[1,2,0]", "--radius", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(chomog(&["quotient", "--k", "3", "--a", "1,2,0", "--b", "0,2,1"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    let out = chomog(&["quotient-search", "--max-k", "12", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let results: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(results.as_array().unwrap().len(), 4);
}

#[test]
fn census_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.json");
    let out = chomog(&["census", "--max-n", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["found"].as_array().unwrap().len(), 3);
    assert!(report["unexplained"].as_array().unwrap().is_empty());
    assert_eq!(chomog(&["census", "--max-n", "7", "--out", path.to_str().unwrap()]).status.code(), Some(2));

    let c3k2 = write_gen(dir.path(), "c3k2.json", &["gen", "cycle", "3", "--compose-empty", "2"]);
    let out = chomog(&["classify", &c3k2]);
    assert_eq!(stdout(&out).lines().next(), Some("Cycle(3,2)"));
    let edge = dir.path().join("edge.json");
    fs::write(&edge, "{\"n\":2,\"edges\":[[0,1]]}").unwrap();
    assert_eq!(chomog(&["classify", edge.to_str().unwrap()]).status.code(), Some(1));
    let empty = write_gen(dir.path(), "k2.json", &["gen", "empty", "2"]);
    assert_eq!(chomog(&["classify", &empty]).status.code(), Some(2));
}
