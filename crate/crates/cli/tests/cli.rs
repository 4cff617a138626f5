// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{fixture, uec, without_timings};

#[test]
fn transcripts_match() {
    let diffs = common::transcript_diffs();
    assert!(diffs.is_empty(), "{}", diffs.join("\n"));
}

#[test]
fn canonical_documents_round_trip() {
    let diffs = common::round_trip_diffs();
    assert!(diffs.is_empty(), "{}", diffs.join("\n"));
}

#[test]
fn reads_standard_input() {
    let text = std::fs::read_to_string(fixture("collider.g")).unwrap();
    let out = uec(&["udg", "-"], Some(&text));
    assert_eq!(out.status, 0);
    assert_eq!(out.stdout, "graph collider nodes=3\n1 2 3\n1 -- 3\n2 -- 3\n");

    let twice = uec(&["same-uec", "-", "-"], Some(&text));
    assert_eq!(twice.status, 2);
    assert!(twice.stderr.contains("only be read once"));
}

#[test]
fn second_graph_is_matched_by_label() {
    // same chain as chain.g with its label line in a different order
    let shuffled = "graph c nodes=3\n3 1 2\n1 -> 2\n2 -> 3\n";
    let out = uec(&["same-uec", "chain.g", "-"], Some(shuffled));
    assert_eq!(out.status, 0);
    let out = uec(&["transform", "chain.g", "-"], Some(shuffled));
    assert_eq!((out.status, out.stdout.as_str()), (0, ""));
}

#[test]
fn writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.dot");
    let out = uec(&["udg", "collider.g", "--emit-dot", path.to_str().unwrap()], None);
    assert_eq!(out.status, 0);
    let dot = std::fs::read_to_string(path).unwrap();
    assert!(dot.starts_with("digraph \"collider\" {"));
    assert!(dot.contains("\"1\" -> \"3\" [dir=none];"));
}

#[test]
fn verify_reports() {
    let out = uec(&["verify", "Thm1-triple", "4"], None);
    assert_eq!(out.status, 0, "{}", out.stdout);
    assert_eq!(without_timings(&out.stdout), "Thm1-triple n=4 exhaustive: 1629 checked, 0 failed");

    let all = uec(&["verify", "all", "3"], None);
    assert_eq!(all.status, 0, "{}", all.stdout);
    assert_eq!(all.stdout.lines().count(), 11);

    let json = uec(&["verify", "lem2", "3", "--json"], None);
    assert_eq!(json.status, 0);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v[0]["claim"], "Lem2");
    assert_eq!(v[0]["failed"], 0);
}

#[test]
fn completions_mismatch_is_an_internal_failure() {
    // the prediction for this edge disagrees with brute force; the binary
    // still prints both sides
    let out = uec(&["completions", "k4.g", "1", "2"], None);
    assert!(out.status == 0 || out.status == 4);
    assert!(out.stdout.starts_with("# predicted "));
    if out.status == 4 {
        assert!(out.stderr.contains("mismatch"));
    }
}
