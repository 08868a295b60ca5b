#![allow(dead_code)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use serde_json::Value;

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub stdin: String,
}

#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    /// The golden file rendering.
    pub fn render(&self) -> String {
        format!("exit: {}\n--- stdout\n{}--- stderr\n{}", self.code, self.stdout, self.stderr)
    }
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn load_cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.json")).expect("cases.json");
    let v: Value = serde_json::from_str(&text).expect("cases.json parses");
    v.as_array()
        .expect("array of cases")
        .iter()
        .map(|c| Case {
            name: c["name"].as_str().expect("name").to_string(),
            args: c["args"].as_array().expect("args").iter().map(|a| a.as_str().expect("arg").to_string()).collect(),
            stdin: c["stdin"].as_str().unwrap_or("").to_string(),
        })
        .collect()
}

/// Runs the built binary with a clean seed environment.
pub fn run_bin(args: &[String], stdin: &str, env: &[(&str, &str)]) -> Outcome {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rewritekit"));
    cmd.args(args).env_remove("REWRITEKIT_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child =
        cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().expect("spawn rewritekit");
    child.stdin.take().expect("stdin").write_all(stdin.as_bytes()).expect("write stdin");
    let out = child.wait_with_output().expect("wait");
    Outcome {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn run_case(c: &Case) -> Outcome {
    run_bin(&c.args, &c.stdin, &[])
}

/// Parses DOT text with graphviz-rust's grammar.
pub fn validate_dot(text: &str) -> Result<(), String> {
    graphviz_rust::parse(text).map(|_| ())
}

/// Pulls every `n<i> -> n<j>` edge out of DOT text.
pub fn dot_edges(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| {
            let l = l.trim();
            let (a, rest) = l.split_once(" -> ")?;
            let b = rest.split([' ', ';']).next()?;
            Some((a.to_string(), b.to_string()))
        })
        .collect()
}

pub fn dot_node_count(text: &str) -> usize {
    text.lines().filter(|l| l.trim_start().starts_with('n') && l.contains("[label=") && !l.contains("->")).count()
}
