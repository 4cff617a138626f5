// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub struct Output {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the binary from the fixtures directory so file arguments are bare
/// names.
pub fn uec(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_uec"))
        .args(args)
        .current_dir(fixture(""))
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    Output {
        status: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// One recorded invocation: arguments, expected status, expected stdout, and
/// a fragment stderr must contain.
pub struct Transcript {
    pub args: &'static [&'static str],
    pub status: i32,
    pub stdout: &'static str,
    pub stderr: &'static str,
}

const fn t(args: &'static [&'static str], status: i32, stdout: &'static str, stderr: &'static str) -> Transcript {
    Transcript { args, status, stdout, stderr }
}

pub const TRANSCRIPTS: &[Transcript] = &[
    t(&["udg", "collider.g"], 0, "graph collider nodes=3\n1 2 3\n1 -- 3\n2 -- 3\n", ""),
    t(
        &["udg", "chain.g", "--cover"],
        0,
        "graph chain nodes=3\n1 2 3\n1 -- 2\n1 -- 3\n2 -- 3\n# clique 1: 1 2 3\n",
        "",
    ),
    t(&["udg", "malformed.g"], 2, "", "line 3"),
    t(&["udg", "cyclic.g"], 2, "", "cycle"),
    t(&["udg", "mixed.g"], 2, "", "undirected"),
    t(&["same-uec", "chain.g", "reversed.g"], 0, "equivalent\n", ""),
    t(&["same-uec", "chain.g", "chain.g"], 0, "equivalent\n", ""),
    t(
        &["same-uec", "chain.g", "middle.g", "--explain"],
        1,
        "not equivalent\n1 and 3 are dependent only in the first graph\n",
        "",
    ),
    t(&["--quiet", "same-uec", "chain.g", "middle.g"], 1, "", ""),
    t(&["same-uec", "chain.g", "chain4.g"], 2, "", "node counts"),
    t(&["transform", "chain.g", "reversed.g"], 0, "reverse 1 2\nreverse 2 3\n", ""),
    t(&["transform", "chain.g", "chain.g"], 0, "", ""),
    t(&["transform", "chain.g", "middle.g"], 3, "", "not unconditionally equivalent"),
    t(
        &["transform", "--check", "chain.g", "reversed.g"],
        0,
        "reverse 1 2\nreverse 2 3\n# checked: 2 moves (0 insert, 2 reverse, 0 delete)\n",
        "",
    ),
    t(&["removable", "triangle.g", "1", "3"], 0, "removable\n", ""),
    t(&["removable", "collider.g", "1", "3"], 1, "not removable\n", ""),
    t(&["removable", "collider.g", "1", "2"], 2, "", "not present"),
    t(&["removable", "triangle.g", "1", "9"], 2, "", "no node `9`"),
    t(&["removable", "mixed.g", "1", "2"], 2, "", "induced subgraph 1 -> 2 -- 3"),
    t(&["completions", "collider.g", "1", "3"], 3, "", "edge 1 -> 3 is not removable"),
    t(
        &["completions", "triangle.g", "1", "3"],
        0,
        "# predicted 1\n# already complete\ngraph tri_1 nodes=3\n1 2 3\n1 -- 2\n2 -- 3\n",
        "",
    ),
    t(&["verify", "bogus", "3"], 2, "", "unknown claim"),
    t(&["verify", "Thm1-triple", "9"], 3, "", "at most 5 nodes"),
    t(&["verify", "all", "9"], 3, "", "at most 5 nodes"),
    t(&["udg", "missing.g"], 2, "", "missing.g"),
    t(&["frobnicate"], 2, "", ""),
];

/// Report lines carry timings, so only the part before the timing is kept.
pub fn without_timings(report: &str) -> String {
    report
        .lines()
        .map(|l| match l.find(" failed (") {
            Some(i) => &l[..i + " failed".len()],
            None => l,
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Runs every transcript and returns a description of each mismatch.
pub fn transcript_diffs() -> Vec<String> {
    let mut diffs = Vec::new();
    for case in TRANSCRIPTS {
        let out = uec(case.args, None);
        let name = case.args.join(" ");
        if out.status != case.status {
            diffs.push(format!("`{name}`: status {} expected {}; stderr: {}", out.status, case.status, out.stderr.trim()));
        }
        if out.stdout != case.stdout {
            diffs.push(format!("`{name}`: stdout\n{}\nexpected\n{}", out.stdout, case.stdout));
        }
        if !out.stderr.contains(case.stderr) {
            diffs.push(format!("`{name}`: stderr {:?} lacks {:?}", out.stderr, case.stderr));
        }
    }
    diffs
}

/// Canonical fixture documents and the binary's own output must survive
/// parse then emit byte for byte.
pub fn round_trip_diffs() -> Vec<String> {
    let mut diffs = Vec::new();
    for name in ["chain.g", "collider.g", "triangle.g", "k4.g", "mixed.g", "square.g", "chain4.g", "cyclic.g"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        match uec_core::text::GraphDocument::parse(&text) {
            Ok(doc) if doc.emit() == text => {}
            Ok(doc) => diffs.push(format!("{name}: emitted\n{}", doc.emit())),
            Err(e) => diffs.push(format!("{name}: {e}")),
        }
    }
    let out = uec(&["udg", "square.g"], None);
    match uec_core::text::GraphDocument::parse(&out.stdout) {
        Ok(doc) if doc.emit() == out.stdout => {}
        _ => diffs.push("udg output is not canonical".into()),
    }
    diffs
}

/// Removing an edge of the complete essential graph on four nodes: the
/// predicted count is 2 and exactly that many documents must follow.
pub fn k4_completion_diffs() -> Vec<String> {
    let out = uec(&["completions", "k4.g", "1", "2"], None);
    let mut diffs = Vec::new();
    if out.status != 0 {
        diffs.push(format!("status {} expected 0; stderr: {}", out.status, out.stderr.trim()));
    }
    if !out.stdout.starts_with("# predicted 2\n") {
        diffs.push(format!("stdout does not start with `# predicted 2`: {:?}", out.stdout));
    }
    let documents = out.stdout.lines().filter(|l| l.starts_with("graph ")).count();
    if documents != 2 {
        diffs.push(format!("{documents} documents emitted, expected 2"));
    }
    diffs
}
