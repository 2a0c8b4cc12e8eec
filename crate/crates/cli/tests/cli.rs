use std::process::{Command, Output};

use schubert_fgl::perm::Permutation;
use schubert_fgl::poly::{parse_poly, Poly};
use schubert_fgl::schubert::{double_poly, Family};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert-fgl")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn poly_examples() {
    assert_eq!(stdout(&["poly", "beta", "--perm", "[2,1]"]).trim(), "x1 + y1 + b*x1*y1");
    assert_eq!(stdout(&["poly", "schubert", "--perm", "[1,2]"]).trim(), "1");
    assert_eq!(stdout(&["poly", "grothendieck", "--perm", "[2,1]"]).trim(), "x1 + y1 - x1*y1");
}

#[test]
fn table_examples() {
    assert_eq!(stdout(&["table", "schubert", "--n", "2"]), "[1,2]\t1\n[2,1]\tx1 - y1\n");
    assert_eq!(stdout(&["table", "beta", "--n", "2"]), "[1,2]\t1\n[2,1]\tx1 + y1 + b*x1*y1\n");
    assert_eq!(stdout(&["table", "grothendieck", "--n", "1"]), "[1]\t1\n");
}

#[test]
fn table_rows_are_sorted_and_reparse() {
    let out = stdout(&["--json", "table", "grothendieck", "--n", "4"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 24);
    let mut keys = Vec::new();
    for r in rows {
        let w: Permutation = r["perm"].as_str().unwrap().parse().unwrap();
        let text = parse_poly(r["text"].as_str().unwrap()).unwrap();
        let structured = Poly::from_json(&serde_json::from_value(r["poly"].clone()).unwrap()).unwrap();
        assert_eq!(text, structured);
        assert_eq!(text, double_poly(Family::Grothendieck, &w));
        keys.push((w.length(), w.images().to_vec()));
    }
    assert!(keys.windows(2).all(|p| p[0] < p[1]));
}

#[test]
fn deterministic_output() {
    for args in [
        &["--json", "--seed", "5", "degeneracy", "check", "--perm", "[2,4,1,3]", "--trials", "40"][..],
        &["table", "beta", "--n", "3"],
        &["--json", "flag", "class", "--n", "3", "--mode", "ck", "--word", "1,2", "--fingerprint"],
        &["--seed", "9", "verify", "braid", "--n", "4", "--samples", "10"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
    let seq = run(&["--sequential", "table", "schubert", "--n", "4"]).stdout;
    assert_eq!(seq, run(&["table", "schubert", "--n", "4"]).stdout);
}

#[test]
fn verification_exit_codes() {
    assert_eq!(code(&["verify", "special", "--n", "3"]), 0);
    assert_eq!(code(&["verify", "braid", "--n", "4", "--samples", "5"]), 0);
    assert_eq!(code(&["verify", "bott-ck", "--n", "3"]), 0);
    assert_eq!(code(&["flag", "eq", "--n", "2", "--mode", "ck", "x1*x2", "y1*y2"]), 0);
    assert_eq!(code(&["flag", "eq", "--n", "2", "x1", "y1"]), 1);
    assert_eq!(code(&["degeneracy", "satisfies", "--perm", "[1,3,2]", "--matrix", "[[1,0,0],[0,1,0],[0,0,1]]"]), 1);
    assert_eq!(code(&["chern", "base-class", "--n", "4", "--law", "mult"]), 0);
    assert_eq!(code(&["fgl", "axioms", "--law", "add"]), 0);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&["table", "beta", "--n", "6"]), 2);
    assert_eq!(code(&["table", "schubert", "--n", "7"]), 2);
    assert_eq!(code(&["flag", "eq", "--n", "7", "x1", "x1"]), 2);
    assert_eq!(code(&["poly", "beta", "--perm", "[1,1]"]), 2);
    assert_eq!(code(&["verify", "nope", "--n", "3"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn flag_and_fgl_output() {
    let ck = stdout(&["flag", "class", "--n", "2", "--mode", "ck"]);
    assert_eq!(ck.trim(), "(x1 - y1) / ((1 - b*y1))");
    let chi = stdout(&["fgl", "chi", "--law", "mult", "--degree", "3"]);
    assert_eq!(chi.trim(), "chi(u) = -u - b*u^2 - b^2*u^3 + O(4)");
    let ess = stdout(&["--json", "degeneracy", "essential", "--perm", "[1,3,2]"]);
    let v: Value = serde_json::from_str(&ess).unwrap();
    assert_eq!(v["result"]["essential_set"], serde_json::json!([[2, 2]]));
}
