//! Golden-output tests for the command-line interface. Library-level calls
//! cover output bytes; the compiled binary covers stdin handling and
//! environment variables (spawned processes keep those isolated).

use std::ffi::OsString;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Stdio};

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<OsString> =
        std::iter::once("lonesum").chain(args.iter().copied()).map(OsString::from).collect();
    let code = lonesum::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn fixture(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("lonesum-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

const U_TEXT: &str = "2 3\n110\n101\n";

#[test]
fn classify_reports_the_obstruction() {
    let path = fixture("u.txt", U_TEXT);
    let (code, out, _) = run_cli(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"decomposable\":false,\"witness\":{\"cols\":[0,1,2],\"rows\":[0,1]}}\n");
}

#[test]
fn classify_reports_the_order() {
    let path = fixture("id2.txt", "2 2\n10\n01\n");
    let (code, out, _) = run_cli(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"decomposable\":true,\"order\":2}\n");
}

#[test]
fn decompose_emits_the_block_layout() {
    let path = fixture("chain.txt", "2 3\n111\n010\n");
    let (code, out, _) = run_cli(&["decompose", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"order\":1,\"blocks\":[{\"rows\":[0,1],\"cols\":[1,0,2],\"shape\":[3,1]}],\"zero_rows\":[],\"zero_cols\":[]}\n"
    );
}

#[test]
fn decompose_rejects_with_witness_and_exit_one() {
    let path = fixture("u-again.txt", U_TEXT);
    let (code, out, _) = run_cli(&["decompose", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(out, "{\"decomposable\":false,\"witness\":{\"cols\":[0,1,2],\"rows\":[0,1]}}\n");
}

#[test]
fn count_values() {
    let (code, out, _) = run_cli(&["count", "--k", "2", "--m", "3", "--n", "3"]);
    assert_eq!((code, out.as_str()), (0, "108\n"));
    let (code, out, _) = run_cli(&["count", "--m", "4", "--n", "4"]);
    assert_eq!((code, out.as_str()), (0, "13528\n"));
    let (code, out, _) = run_cli(&["count", "--k", "0", "--m", "9", "--n", "2"]);
    assert_eq!((code, out.as_str()), (0, "1\n"));
}

#[test]
fn lonesum_table_row() {
    let (code, out, _) = run_cli(&["table", "--what", "l", "--max", "5"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[3], "2\t1\t4\t14\t46\t146\t454");
}

#[test]
fn oracle_golden_report() {
    let (code, out, _) = run_cli(&["oracle", "--m", "2", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"m\":2,\"n\":3,\"total\":64,\"lonesum\":46,\"tilde_lonesum\":13,\
         \"d_by_order\":[1,45,12],\"tilde_d_by_order\":[0,13,6]}\n"
    );
}

#[test]
fn parse_errors_name_the_position() {
    let path = fixture("bad.txt", "2 3\n110\n1x1\n");
    let (code, out, err) = run_cli(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 3"), "stderr was: {err}");

    let (code, _, err) = run_cli(&["classify", "--input", "/nonexistent/matrix.txt"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"), "stderr was: {err}");
}

#[test]
fn egf_check_small_order() {
    let (code, out, err) = run_cli(&["egf-check", "--order", "6"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "m\tn\tlonesum\ttotal\tk_max\tstatus");
    // Triangular grid: 7+6+...+1 shapes plus the header.
    assert_eq!(lines.len(), 1 + 28);
    assert!(lines[1..].iter().all(|l| l.ends_with("\tOK")));
    assert!(err.contains("all coefficients match"), "stderr was: {err}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let first = run_cli(&["table", "--what", "d", "--max", "4", "--format", "json"]);
    let second = run_cli(&["table", "--what", "d", "--max", "4", "--format", "json"]);
    assert_eq!(first, second);
    let first = run_cli(&["oracle", "--m", "3", "--n", "3"]);
    let second = run_cli(&["oracle", "--m", "3", "--n", "3"]);
    assert_eq!(first.1, second.1);
}

#[test]
fn verify_quick_suites_pass() {
    let (code, out, _) = run_cli(&["verify", "--suite", "tables"]);
    assert_eq!(code, 0);
    assert!(out.contains("WARN tables"));

    let (code, out, _) = run_cli(&["verify", "--suite", "recurrence"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS recurrence"));
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lonesum"))
}

#[test]
fn binary_reads_stdin() {
    let mut child = binary()
        .arg("classify")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(U_TEXT.as_bytes()).unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(output.stdout).unwrap(),
        "{\"decomposable\":false,\"witness\":{\"cols\":[0,1,2],\"rows\":[0,1]}}\n"
    );
}

#[test]
fn binary_honours_cell_guard_env() {
    let output = binary()
        .args(["oracle", "--m", "2", "--n", "3"])
        .env("LONESUM_MAX_CELLS", "4")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(err.contains("guard"), "stderr was: {err}");

    let output = binary()
        .args(["oracle", "--m", "2", "--n", "3"])
        .env("LONESUM_MAX_CELLS", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn binary_honours_series_order_env() {
    let output = binary()
        .args(["egf-check"])
        .env("LONESUM_SERIES_ORDER", "4")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let out = String::from_utf8(output.stdout).unwrap();
    // 5+4+3+2+1 shapes plus the header.
    assert_eq!(out.lines().count(), 1 + 15);
}
