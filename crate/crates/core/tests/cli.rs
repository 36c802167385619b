use std::path::PathBuf;
use std::process::{Command, Output};

use brieskorn::cli::grid::AsciiGrid;
use serde_json::Value;

fn corpora() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpora")
}

fn brieskorn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brieskorn"))
        .args(args)
        .env_remove("BRIESKORN_CORPUS_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("brieskorn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn ak_corpus_sweeps_clean() {
    let corpus = corpora().join("ak.txt");
    let o = brieskorn(&["sweep", "--corpus", corpus.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(
        out.contains("60 lists:") && out.contains(" 0 fail,"),
        "{out}"
    );
    assert!(!out.contains("FAIL"));
}

#[test]
fn bad_corpus_line_is_named() {
    let path = scratch("bad.txt", "# two lists\n2 2 2\n0 2 2\n");
    let o = brieskorn(&["sweep", "--corpus", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("bad.txt:3"), "{err}");
    assert_eq!(err.matches("validation error").count(), 1, "{err}");
}

#[test]
fn empty_corpus_is_fine() {
    let path = scratch("empty.txt", "# nothing here\n\n");
    let o = brieskorn(&["sweep", "--corpus", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "sweep");
}

#[test]
fn corpus_directory_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_brieskorn"))
        .args(["sweep", "--corpus", "ak.txt", "--check", "kappa"])
        .env("BRIESKORN_CORPUS_DIR", corpora())
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("60 lists: 60 pass"));
}

#[test]
fn lens_page_and_betti_numbers() {
    let o = brieskorn(&["ss", "4", "2", "2", "2", "--window", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let grid_text: String = out
        .lines()
        .skip(1)
        .take_while(|l| l.contains('|') || l.starts_with('-'))
        .map(|l| format!("{l}\n"))
        .collect();
    let grid = AsciiGrid::parse(&grid_text).unwrap();
    let total: i64 = grid
        .cells()
        .values()
        .map(|r| i64::try_from(r).unwrap())
        .sum();
    assert_eq!(total, 7);
    assert!(out.contains("degenerate at E1: yes"));
    assert!(out.contains("b_2=1 b_4=2 b_6=2 b_8=2"), "{out}");
}

#[test]
fn json_round_trips() {
    for args in [
        &["homology", "5", "3", "2", "--json"][..],
        &["sphere", "2", "2", "2", "3", "5", "--json"],
        &["mec", "3", "2", "2", "2", "--json"],
        &["alexander", "3", "2", "2", "--json"],
    ] {
        let o = brieskorn(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        let text = stdout(&o);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema_version"], "1");
        let mut again = serde_json::to_string_pretty(&v).unwrap();
        again.push('\n');
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn domain_and_usage_errors_exit_one() {
    assert_eq!(brieskorn(&["homology", "0", "2"]).status.code(), Some(1));
    assert_eq!(brieskorn(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        brieskorn(&["ss", "4", "4", "4", "4"]).status.code(),
        Some(1)
    );
    assert_eq!(brieskorn(&["--help"]).status.code(), Some(0));
}
