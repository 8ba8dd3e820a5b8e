//! Shared harness for driving the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_carbon-ledger")
}

/// Path of the bundled demo registry.
pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../carbon-ledger/fixtures/models.csv")
}

pub fn fixture_content() -> String {
    std::fs::read_to_string(fixture_path()).expect("fixture readable")
}

/// Runs the binary with a clean config environment.
pub fn run(args: &[&str]) -> Output {
    run_in(None, args, &[])
}

pub fn run_in(cwd: Option<&Path>, args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(bin());
    cmd.args(args).env_remove("CARBON_LEDGER_CONFIG");
    if let Some(cwd) = cwd {
        cmd.current_dir(cwd);
    }
    for (key, value) in envs {
        cmd.env(key, value);
    }
    cmd.output().expect("binary runs")
}

pub fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

pub fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

/// Extracts the numeric value from a line like `search energy: 46905.000 Wh`.
pub fn value_after(text: &str, prefix: &str) -> f64 {
    let line = text
        .lines()
        .find(|line| line.starts_with(prefix))
        .unwrap_or_else(|| panic!("no line starting with `{prefix}` in:\n{text}"));
    line[prefix.len()..]
        .split_whitespace()
        .next()
        .expect("value token")
        .parse()
        .expect("numeric value")
}
