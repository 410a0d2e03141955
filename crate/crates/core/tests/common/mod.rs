#![allow(dead_code)]

pub mod props;

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

pub fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

pub fn igmax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_igmax"))
        .args(args)
        .output()
        .expect("igmax runs")
}

pub fn structured(args: &[&str]) -> (i32, String) {
    let mut all = vec!["--format", "structured"];
    all.extend_from_slice(args);
    let out = igmax(&all);
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

pub fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("valid json")
}
