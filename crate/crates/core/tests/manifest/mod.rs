//! Replays `examples/manifest.txt` through the binary.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Entry {
    pub name: String,
    pub args: Vec<String>,
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn entries() -> Vec<Entry> {
    let text = std::fs::read_to_string(crate_dir().join("examples/manifest.txt")).unwrap();
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut words = shlex::split(l).unwrap_or_else(|| panic!("bad manifest line {l:?}"));
            let name = words.remove(0);
            Entry { name, args: words }
        })
        .collect()
}

pub fn run(entry: &Entry) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_rn-arith"))
        .args(&entry.args)
        .current_dir(crate_dir())
        .env_remove("RN_ARITH_CAP")
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn expected_path(entry: &Entry) -> PathBuf {
    crate_dir().join("examples/expected").join(format!("{}.out", entry.name))
}

pub fn expected(entry: &Entry) -> Option<String> {
    std::fs::read_to_string(expected_path(entry)).ok()
}
