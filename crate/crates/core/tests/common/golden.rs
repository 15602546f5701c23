//! Golden CLI transcripts: each line of `golden/cases.txt` is run from the
//! `golden/` directory and compared with `golden/expected/<name>.out`.
//! Set `UPDATE_GOLDEN=1` to rewrite the expected files.

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
}

pub fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(dir().join("cases.txt")).expect("cases.txt");
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once('|').expect("name | args");
            Case { name: name.trim().to_string(), args: args.split_whitespace().map(String::from).collect() }
        })
        .collect()
}

/// Exit status, stdout and stderr in one transcript.
pub fn transcript(case: &Case) -> String {
    let output = Command::new(env!("CARGO_BIN_EXE_evidential"))
        .args(&case.args)
        .current_dir(dir())
        .output()
        .expect("run evidential");
    format!(
        "$ evidential {}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        case.args.join(" "),
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    )
}

pub fn expected_path(case: &Case) -> PathBuf {
    dir().join("expected").join(format!("{}.out", case.name))
}

/// Names of cases whose transcript differs from the checked-in file (or,
/// under `UPDATE_GOLDEN=1`, rewrites them and returns nothing).
pub fn mismatches() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some_and(|v| v == "1");
    let mut bad = Vec::new();
    for case in cases() {
        let actual = transcript(&case);
        let path = expected_path(&case);
        if update {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &actual).unwrap();
        } else if std::fs::read_to_string(&path).ok().as_deref() != Some(actual.as_str()) {
            bad.push(case.name);
        }
    }
    bad
}
