use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mva-weight")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn mva_of_the_example() {
    let o = run(&["mva", &fixture("link5.json"), "--delete", "a5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "x*y*(1 - y + y^2)");
}

#[test]
fn weight_json() {
    let o = run(&["weight", &fixture("three_chords.json"), "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.to_string().contains("t2"));
}

#[test]
fn theorem_report() {
    let o = run(&["verify-theorem", &fixture("singular_m3.json"), "--degree", "4", "--report", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "equal");
    assert_eq!(v["degree"], 2);
}

#[test]
fn relation_exit_codes() {
    assert!(run(&["check-relation", &fixture("four_y.json")]).status.success());
    let o = run(&["check-relation", &fixture("four_y.json"), "--all-minors", "--witness"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_input() {
    let o = run(&["mva", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn expand() {
    let o = run(&["expand", "t - 1", "--degree", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("u"));
}
