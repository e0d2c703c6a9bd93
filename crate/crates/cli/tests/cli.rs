//! Binary-level checks: exit codes, output shapes, and format round trips.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use pointreg_cli::pcfg::parse_pcfg;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pointreg"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("pointreg-cli-tests");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn curve_file() -> PathBuf {
    let path = scratch("curve.pcfg");
    let out = run(&[
        "gen",
        "rnc",
        "--p",
        "101",
        "--n",
        "3",
        "--params",
        "0,1,2,3,4,5,6,7,8,9,inf",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    path
}

#[test]
fn gen_output_reparses_and_reemits() {
    let out = run(&[
        "gen",
        "rnc",
        "--p",
        "13",
        "--n",
        "2",
        "--params",
        "0,1,2,3,inf",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let config = parse_pcfg(&text).unwrap();
    assert_eq!(config.len(), 5);
    assert_eq!(pointreg_cli::pcfg::emit_pcfg(&config), text);
}

#[test]
fn hilbert_and_regularity_agree() {
    let path = curve_file();
    let file = path.to_str().unwrap();
    let h = run(&["hilbert", file]);
    assert!(h.status.success());
    assert!(stdout(&h).contains("index 4"), "{}", stdout(&h));
    assert!(stdout(&h).contains("h 0 1"));
    let r = run(&["regularity", file]);
    assert!(r.status.success());
    assert!(stdout(&r).contains("equality true"));
}

#[test]
fn separate_then_verify_round_trip() {
    let path = curve_file();
    let file = path.to_str().unwrap();
    let cert = scratch("curve.cert");
    let s = run(&[
        "separate",
        file,
        "--point",
        "4",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert!(s.status.success());
    let v = run(&["verify", file, "--cert", cert.to_str().unwrap()]);
    assert!(v.status.success());
    assert_eq!(stdout(&v), "check valid\n");
}

#[test]
fn verify_flags_tampering_with_exit_one() {
    let path = curve_file();
    let file = path.to_str().unwrap();
    let cert = scratch("tampered.cert");
    let s = run(&[
        "separate",
        file,
        "--point",
        "0",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert!(s.status.success());
    let text = fs::read_to_string(&cert).unwrap();
    fs::write(&cert, text.replace("point 0", "point 1")).unwrap();
    let v = run(&["verify", file, "--cert", cert.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).starts_with("check "));
    assert_ne!(stdout(&v), "check valid\n");
}

#[test]
fn syntax_errors_exit_two_with_position() {
    let path = scratch("broken.pcfg");
    fs::write(&path, "pcfg 1\nfield 7 1\npoints 4\n").unwrap();
    let out = run(&["position", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{}", err);
}

#[test]
fn degree_flag_needs_linalg() {
    let path = curve_file();
    let out = run(&[
        "separate",
        path.to_str().unwrap(),
        "--point",
        "0",
        "--method",
        "greedy",
        "--degree",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_of_scope_method_exits_two() {
    // Four points in the plane: every lemma construction refuses them.
    let path = scratch("four.pcfg");
    fs::write(
        &path,
        "pcfg 1\nfield 7 1\nambient 2\npoints 4\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n",
    )
    .unwrap();
    let out = run(&[
        "separate",
        path.to_str().unwrap(),
        "--point",
        "0",
        "--method",
        "lemma21",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn linalg_below_index_exits_one() {
    let path = curve_file();
    // i(S) = 4 here, so degree 3 separates no point... but some points may
    // still admit low-degree separators; point 0 sits on the curve like the
    // rest, and for a configuration in uniform position H(3) < d means no
    // point has one.
    let out = run(&[
        "separate",
        path.to_str().unwrap(),
        "--point",
        "0",
        "--method",
        "linalg",
        "--degree",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bound_search_prints_the_exception_table() {
    let out = run(&[
        "bound", "search", "--lemma", "L21", "--n", "4", "--dmax", "200",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("count 2"));
    assert!(text.contains("exception 32 15 7 margin -1 feasible false"));
    assert!(text.contains("exception 33 15 7 margin -1 feasible false"));
    let feasible = run(&[
        "bound",
        "search",
        "--lemma",
        "L21",
        "--n",
        "4",
        "--dmax",
        "200",
        "--feasibility",
    ]);
    assert!(stdout(&feasible).contains("count 0"));
}

#[test]
fn section_reports_split_status_in_comments() {
    let out = run(&[
        "gen",
        "section",
        "--p",
        "11",
        "--exponents",
        "1,2,3",
        "--hyperplane",
        "5,0,5,1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.starts_with("# section roots 3 infinity false polydegree 3\n"),
        "{}",
        text
    );
    let config = parse_pcfg(&text).unwrap();
    assert_eq!((config.len(), config.ambient_dim()), (3, 2));
}

#[test]
fn analyze_is_deterministic() {
    let path = curve_file();
    let a = run(&["analyze", path.to_str().unwrap()]);
    let b = run(&["analyze", path.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("rnc_member true"));
}
