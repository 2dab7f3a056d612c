use std::fs;
use std::process::{Command, Output};

use clap::Parser;
use partcalc::Partition;
use partcalc_cli::expr::evaluate;
use partcalc_cli::{run, Cli};

fn partcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partcalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn in_process(args: &[&str]) -> partcalc_cli::Outcome {
    let argv = std::iter::once("partcalc").chain(args.iter().copied());
    run(Cli::parse_from(argv)).unwrap()
}

const M2: &str = "3 3\n2 -1 0\n-1 0 2\n0 2 -1\n";
const ROTATION: &str = "2 2\n3/5 -4/5\n4/5 3/5\n";

#[test]
fn classify_b3() {
    let o = partcalc(&["classify", "b(3)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("cases=[A] conclusion=InPO\n"));
}

#[test]
fn enumerate_catalan() {
    assert_eq!(stdout(&partcalc(&["enumerate", "--pred", "nc", "--points", "0,4"])), "count=14\n");
    assert_eq!(in_process(&["enumerate", "--pred", "ncm:3", "--points", "0,3", "--list"]).stdout, "count=1\nP(0,3): {l1,l2,l3}\n");
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let m2 = dir.path().join("M2.txt");
    fs::write(&m2, M2).unwrap();
    let rot = dir.path().join("rot.txt");
    fs::write(&rot, ROTATION).unwrap();
    let m2 = m2.to_str().unwrap();
    let rot = rot.to_str().unwrap();

    let fails = partcalc(&["check", "--p", "pair", "--matrix", m2]);
    assert_eq!(fails.status.code(), Some(1));
    assert_eq!(stdout(&fails), "FAILS alpha=() beta=(1,1) lhs=1 rhs=5\n");

    let holds = partcalc(&["check", "--p", "up1", "--matrix", m2, "--intertwiner"]);
    assert_eq!(holds.status.code(), Some(0));
    assert_eq!(stdout(&holds), "HOLDS\n");

    let both = partcalc(&["check", "--p", "pair", "--matrix", rot, "--both"]);
    assert_eq!(both.status.code(), Some(0));
    assert!(stdout(&both).ends_with("agree=true\n"));

    let missing = partcalc(&["check", "--p", "pair", "--matrix", "/nonexistent/matrix.txt"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));

    let t = partcalc(&["witness-inverse", "--p", "pair", "--matrix", rot]);
    assert_eq!(t.status.code(), Some(0));
    let unsupported = partcalc(&["witness-inverse", "--p", "b(3)", "--matrix", rot]);
    assert_eq!(unsupported.status.code(), Some(2));
}

#[test]
fn syntax_errors_exit_nonzero() {
    let o = partcalc(&["eval", "pair ox"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains('7'));
}

#[test]
fn composition_reads_top_to_bottom() {
    assert_eq!(stdout(&partcalc(&["eval", "pair ; copair"])), "P(0,0): loops=1\n");
    assert_eq!(stdout(&partcalc(&["eval", "copair ; pair"])), "P(2,2): {l1,l2}{u1,u2} loops=0\n");
}

#[test]
fn eval_output_reparses() {
    let corpus = [
        "id", "empty", "pair", "copair", "up1 ox down1", "b(3)", "b(3)*", "~crossline", "fourblock", "positioner",
        "pi(4)", "sigma(3)", "tau(3)", "mult(b(3),1,4)", "nest(pair,pair,1)", "pdouble(crossline,3)",
        "sdouble(b(4),2)", "rot(P(0,3): {l1,l2}{l3}, copair)", "wrot(b(3), down1)", "sigma(3) ⊗ id ; tau(4)*",
    ];
    for text in corpus {
        let out = in_process(&["eval", text]).stdout;
        let literal = out.trim_end().rsplit_once(" loops=").expect("loops suffix").0;
        let back: Partition = literal.parse().unwrap_or_else(|e| panic!("{literal}: {e}"));
        assert_eq!(back, evaluate(text).unwrap().partition, "{text}");
        assert_eq!(evaluate(literal).unwrap().partition, back);
    }
}

#[test]
fn closure_report_membership() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let report = report.to_str().unwrap();
    let o = partcalc(&["closure", "--gen", "b(3), b(3)*", "--max-points", "6", "--semantic", "--out", report]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("members=1229 saturated=true"));

    let member = partcalc(&["member", "pair", "--in", report]);
    assert!(stdout(&member).starts_with("Member P(0,2): {l1,l2}\n"));
    let missing = partcalc(&["member", "crossline", "--in", report]);
    assert!(stdout(&missing).starts_with("NotFoundWithinBounds"));
}

#[test]
fn structured_output_is_json() {
    let out = in_process(&["--format", "structured", "eval", "pair ; copair"]).stdout;
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["loops"], 1);
    assert_eq!(v["partition"], "P(0,0):");
}

#[test]
fn tmap_triplets() {
    let o = in_process(&["tmap", "--p", "pair", "--n", "2"]);
    assert_eq!(o.stdout, "rows=4 cols=1 nnz=2\n1 1 1\n4 1 1\n");
}
