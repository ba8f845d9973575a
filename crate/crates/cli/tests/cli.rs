use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prefix-limits")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const CHAIN: &str = r#"{"elements":[{"id":"a"},{"id":"ab","parent":"a"},{"id":"abc","parent":"ab"}]}"#;
const FORK: &str = r#"{"elements":[{"id":"x"},{"id":"y","parent":"x"},{"id":"z","parent":"x"}]}"#;

#[test]
fn empty_order_is_valid() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "empty.json", "");
    let o = run(&["validate-order", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["elements"], 0);
}

#[test]
fn relation_documents_are_checked() {
    let dir = TempDir::new().unwrap();
    // b and c share the upper bound d but are incomparable
    let bad = write(
        dir.path(),
        "diamond.json",
        r#"{"elements":["a","b","c","d"],
            "relation":[["a","a"],["b","b"],["c","c"],["d","d"],["a","b"],["a","c"],["a","d"],["b","d"],["c","d"]]}"#,
    );
    let o = run(&["validate-order", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["ok"], false);

    let good = write(dir.path(), "chain.json", r#"{"elements":["a","b"],"relation":[["a","a"],["b","b"],["a","b"]]}"#);
    assert_eq!(run(&["validate-order", &good]).status.code(), Some(0));
}

#[test]
fn malformed_input_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "junk.json", "not json");
    assert_eq!(run(&["validate-order", &f]).status.code(), Some(2));
    assert_eq!(run(&["validate-order", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-verb"]).status.code(), Some(2));
    assert_eq!(run(&["limit-bisim", "witness-1", "--bounds", "1,2"]).status.code(), Some(2));
}

#[test]
fn fan_strand_limit_exports_dot() {
    let o = run(&["limit", "--family", "fan_strand", "--N", "6", "--horizon", "6", "--out", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("digraph"));
    // strand 0 stays at length 1, the last strand has length 6
    assert!(text.contains("\"(0,0)\""));
    assert!(!text.contains("\"(0,1)\""));
    assert!(text.contains("\"(5,5)\""));
}

#[test]
fn maps_are_judged_by_both_validators() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "chain.json", CHAIN);
    write(dir.path(), "fork.json", FORK);
    let good = write(
        dir.path(),
        "good.json",
        r#"{"source_ref":"chain.json","target_ref":"fork.json","pairs":[{"from":"a","to":"x"},{"from":"ab","to":"y"}]}"#,
    );
    let o = run(&["validate-map", &good]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(json(&o)["agree"], true);

    // ab skips over its parent's image
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"source_ref":"fork.json","target_ref":"chain.json","pairs":[{"from":"x","to":"a"},{"from":"y","to":"abc"}]}"#,
    );
    let o = run(&["validate-map", &bad]);
    assert_eq!(o.status.code(), Some(1));
    let report = json(&o);
    assert_eq!(report["ok"], false);
    assert_eq!(report["agree"], true);
}

#[test]
fn stored_family_round_trip() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "o0.json", r#"{"elements":[{"id":"a"}]}"#);
    write(dir.path(), "o1.json", r#"{"elements":[{"id":"a"},{"id":"ab","parent":"a"}]}"#);
    write(
        dir.path(),
        "m.json",
        r#"{"source_ref":"o1.json","target_ref":"o0.json","pairs":[{"from":"a","to":"a"}]}"#,
    );
    let fam = write(
        dir.path(),
        "fam.json",
        r#"{"index":{"kind":"nat-chain","horizon":1},"objects":["o0.json","o1.json"],"steps":["m.json"],"kind":{"kind":"explicit"}}"#,
    );
    let o = run(&["validate-family", "--family", &fam]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    let o = run(&["limit", "--family", &fam]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["threads"].as_array().unwrap().len(), 2);
}

#[test]
fn builtin_families_validate() {
    for name in ["fan_strand", "fan_grow", "dyadic_tower"] {
        let o = run(&["validate-family", "--family", name, "--N", "3"]);
        assert_eq!(o.status.code(), Some(0), "{name}");
    }
    let o = run(&["universal", "--family", "fan_grow", "--N", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["mediating_is_bijective"], true);
}

#[test]
fn delayed_choice_demo() {
    let o = run(&["demo", "delayed-choice-impossible"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 label-preserving maps"));
    assert_eq!(run(&["demo", "nope"]).status.code(), Some(2));
}

const EARLY: &str = r#"{"states":["1","2","3","4","5"],"alphabet":["a","b","c"],"initial":"1",
    "transitions":[["1","a","2"],["1","a","3"],["2","b","4"],["3","c","5"]]}"#;
const DELAYED: &str = r#"{"states":["1","2","4","5"],"alphabet":["a","b","c"],"initial":"1",
    "transitions":[["1","a","2"],["2","b","4"],["2","c","5"]]}"#;

#[test]
fn bisim_and_unfold() {
    let dir = TempDir::new().unwrap();
    let early = write(dir.path(), "early.json", EARLY);
    let delayed = write(dir.path(), "delayed.json", DELAYED);
    let o = run(&["bisim", &early, &delayed]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["bisimilar"], false);
    assert_eq!(run(&["bisim", &early, &early]).status.code(), Some(0));

    let o = run(&["unfold", &delayed, "--depth", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["runs"]["elements"].as_array().unwrap().len(), 4);
    let o = run(&["unfold", &early, "--depth", "2", "--out", "dot"]);
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn witnesses_report_verdicts() {
    let o = run(&["limit-bisim", "witness-1", "--bounds", "2,2,12,4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["limit-bisim", "naive-fan", "--bounds", "2,2,12,4"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["outcome"]["bullet"], 3);
}

#[test]
fn flows_tower_and_round_trip() {
    let o = run(&["flows-tower", "--N", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["levels"].as_array().unwrap().len(), 4);

    let o = run(&["flows-roundtrip", "--N", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("exact true").count(), 3);
    // t² sampled at t = 1/2
    assert!(text.contains("1/2\t1/4"));
    assert_eq!(run(&["flows-roundtrip", "--N", "2", "--depth", "5"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&run(&["limit", "--family", "fan_grow", "--N", "4"]));
    let b = stdout(&run(&["limit", "--family", "fan_grow", "--N", "4"]));
    assert_eq!(a, b);
}
