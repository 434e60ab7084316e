//! Every `examples/*.tt` file declares its expected verdict in a
//! `; expect: ...` header; the runner and the binary must agree with it.

use std::path::{Path, PathBuf};
use std::process::Command;

use ttk::cli::run_file;

fn tt_files() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "tt"))
        .collect();
    files.sort();
    files
}

fn expected(path: &Path) -> String {
    let src = std::fs::read_to_string(path).unwrap();
    src.lines()
        .find_map(|l| l.strip_prefix("; expect: "))
        .unwrap_or_else(|| panic!("{} has no expect header", path.display()))
        .trim()
        .to_string()
}

#[test]
fn runner_matches_expectations() {
    let files = tt_files();
    assert!(files.len() >= 10);
    for f in files {
        let out = run_file(&f);
        assert_eq!(out.status.to_string(), expected(&f), "{}\n{out}", f.display());
    }
}

#[test]
fn binary_exit_codes_and_result_line() {
    for f in tt_files() {
        let want = expected(&f);
        let out = Command::new(env!("CARGO_BIN_EXE_ttk")).arg("run").arg(&f).output().unwrap();
        let stdout = String::from_utf8(out.stdout).unwrap();
        let code = match want.as_str() {
            "accept" => 0,
            "reject" => 1,
            "error parse" => 2,
            "error type" => 3,
            other => panic!("unknown expectation {other}"),
        };
        assert_eq!(out.status.code(), Some(code), "{}\n{stdout}", f.display());
        assert_eq!(stdout.lines().last(), Some(format!("RESULT: {want}").as_str()));
    }
}

#[test]
fn idfun_prints_its_type() {
    let f = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/idfun.tt");
    let out = run_file(&f);
    assert_eq!(out.lines, vec!["type: (pi (u 0) (pi (el (q)) (el (v 1))))"]);
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run_file(Path::new("does/not/exist.tt"));
    assert_eq!(out.status.exit_code(), 2);
}

#[test]
fn selftest_binary_small() {
    let out = Command::new(env!("CARGO_BIN_EXE_ttk"))
        .args(["selftest", "--seed", "3", "--count", "10", "--suite", "all"])
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    for name in ["pi-beta", "ctx-iso", "closed-bool", "operator-coverage"] {
        assert!(stdout.contains(name), "{stdout}");
    }
    assert_eq!(stdout.lines().last(), Some("RESULT: accept"));
}
