use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn isolate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isolate")).args(args).output().unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn construct_on_five_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(&dir, "c5.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    let out = isolate(&["construct", &c5]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &lines(&out)[0];
    assert_eq!(rec["size"], 1);
    assert_eq!(rec["isolating"], true);
}

#[test]
fn exact_on_four_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(&dir, "c4.txt", "0 1\n1 2\n2 3\n3 0\n");
    for extra in [&[][..], &["--naive"][..]] {
        let mut args = vec!["exact", "--family", "cprime"];
        args.extend(extra);
        args.push(&c4);
        let out = isolate(&args);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(lines(&out)[0]["size"], 1);
    }
    let out = isolate(&["exact", "--family", "c", "--budget", "0", &c4]);
    assert_eq!(lines(&out)[0]["exceeds_budget"], 0);
}

#[test]
fn census_small_is_clean_and_repeatable() {
    let a = isolate(&["census", "--max-n", "6", "--no-timings"]);
    assert_eq!(a.status.code(), Some(0));
    let b = isolate(&["census", "--max-n", "6", "--no-timings"]);
    assert_eq!(a.stdout, b.stdout);
    let recs = lines(&a);
    let summary = &recs.last().unwrap()["summary"];
    assert_eq!(summary["records"], 143);
    assert_eq!(summary["violations"].as_array().unwrap().len(), 0);
    assert!(recs[0].get("millis").is_none());
}

#[test]
fn census_reads_graph6_files_and_splits_components() {
    let dir = tempfile::tempdir().unwrap();
    // Petersen graph, then a 4-cycle plus a disjoint 5-cycle.
    let input = write(&dir, "in.g6", "IheA@GUAo\nHl?GGCH\n");
    let out = isolate(&["census", "--input", &input, "--families", "cprime", "--checks", "cprime-edge"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let recs = lines(&out);
    assert_eq!(recs[0]["iota"]["cprime"], 2);
    assert_eq!(recs[1]["line"], 2);
    assert_eq!(recs[1]["component"], 0);
    assert_eq!(recs.last().unwrap()["summary"]["records"], 3);
}

#[test]
fn gen_special_then_recognize() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("special.txt");
    let out = isolate(&["gen-special", "--base", "c4", "--m", "17", "--pure", "--seed", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["m"], 17);
    let out = isolate(&["recognize", path.to_str().unwrap()]);
    let rec = &lines(&out)[0];
    assert_eq!(rec["class"], "pure-special-c4");
    assert_eq!(rec["decomposition"]["q"], 3);
    let bad = isolate(&["gen-special", "--base", "c4", "--m", "16", "--pure"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_constructive_modes() {
    let out = isolate(&["verify-constructive", "--max-n", "5", "--exact"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out).last().unwrap()["summary"]["passed"], true);
    let out = isolate(&["verify-constructive", "--random", "40", "--max-n", "30", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_and_format_errors_exit_two() {
    assert_eq!(isolate(&["census", "--bogus"]).status.code(), Some(2));
    assert_eq!(isolate(&["census", "--max-n", "8"]).status.code(), Some(2));
    assert_eq!(isolate(&["exact", "--family", "c2", "x"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let loop_file = write(&dir, "loop.txt", "0 1\n2 2\n");
    let out = isolate(&["construct", &loop_file]);
    assert_eq!(out.status.code(), Some(2));
    assert!(lines(&out)[0]["error"].as_str().unwrap().contains("line 2"));
}
