use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn latkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latkit")).args(args).env_remove("LATKIT_CORPUS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_reports_every_axiom() {
    let o = latkit(&["check", &fixture("c3.alg"), "--variety", "RDBLP"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.last(), Some(&"VERDICT: MEMBER"));
    assert!(lines[..lines.len() - 1].iter().all(|l| l.ends_with(": HOLDS")), "{out}");
}

#[test]
fn check_non_member_exits_one() {
    let o = latkit(&["check", &fixture("c4.alg"), "--variety", "RDBLP"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("M: FAILS at x=b,y=a"), "{out}");
    assert!(out.ends_with("VERDICT: NOT-MEMBER\n"));
}

#[test]
fn identity_counterexample_on_the_four_chain() {
    let o = latkit(&["identity", &fixture("c4.alg"), "--lhs", "(x /\\ x+) \\/ (y \\/ y*)", "--rhs", "y \\/ y*"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "FAILS at x=b,y=a  lhs=b rhs=a\n");
}

#[test]
fn quasi_identity_and_eval() {
    let o = latkit(&["quasi", &fixture("c3.alg"), "--spec", "x* ~ y* & x+ ~ y+ => x ~ y"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "HOLDS\n"));
    let o = latkit(&["eval", &fixture("c3.alg"), "--term", "x -> y", "--valuation", "x=1,y=a"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "a\n"));
}

#[test]
fn prove_demos() {
    let o = latkit(&["prove", &fixture("mp_demo.prf"), "--logic", "DHMSH"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "Valid: p \\/ q\n"));
    let o = latkit(&["prove", &fixture("cp_demo.prf"), "--logic", "DPCH"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "Valid: ~q ->h ~p\n"));
    let o = latkit(&["prove", &fixture("mp_broken.prf"), "--logic", "DHMSH"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("Invalid step 3: MP shape mismatch"));
}

#[test]
fn katrinak_variants() {
    let o = latkit(&["katrinak", &fixture("c3.alg")]);
    assert_eq!(o.status.code(), Some(0));
    let o = latkit(&["katrinak", &fixture("c3.alg"), "--variant", "printed"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("coarrow=kappa_d: FAILS at x=0,y=a  lhs=a rhs=0"));
    let o = latkit(&["katrinak", &fixture("c3.alg"), "--converse", "both"]);
    assert_eq!(o.status.code(), Some(0));
    // outside the source class is a verdict, not a usage error
    let o = latkit(&["katrinak", &fixture("c4.alg")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not in RDBLP"));
}

#[test]
fn roundtrips() {
    let o = latkit(&["roundtrip", &fixture("c3.alg"), "--functor", "dblh"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "ROUNDTRIP dblh: OK\n"));
    let o = latkit(&["roundtrip", &fixture("c3_dm.alg"), "--functor", "dmdblh"]);
    assert_eq!(o.status.code(), Some(0));
    let o = latkit(&["roundtrip", &fixture("c3.alg"), "--functor", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_and_validation_errors_exit_two() {
    for args in [
        vec!["check", &fixture("c3.alg"), "--variety", "NOPE"],
        vec!["check", &fixture("bad_star.alg"), "--variety", "P"],
        vec!["check", "/nonexistent.alg", "--variety", "P"],
        vec!["identity", &fixture("c3.alg"), "--lhs", "x \\/", "--rhs", "x"],
        vec!["prove", &fixture("mp_demo.prf"), "--logic", "K4"],
        vec!["enumerate", "--max-poset", "8"],
        vec!["soundness", "--logic", "DPCH", "--max-poset", "0"],
        vec!["frobnicate"],
    ] {
        let o = latkit(&args.iter().map(|s| &**s).collect::<Vec<_>>());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    let one = latkit(&["--jobs", "1", "soundness", "--logic", "RDPCH", "--max-poset", "3"]);
    let four = latkit(&["--jobs", "4", "soundness", "--logic", "RDPCH", "--max-poset", "3"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert!(stdout(&one).ends_with("VERDICT: HOLDS\n"));
}

#[test]
fn enumerate_writes_a_corpus_that_soundness_can_read() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("corpus");
    let o = latkit(&["enumerate", "--max-poset", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let listing = stdout(&o);
    assert!(listing.lines().last().unwrap().starts_with("TOTAL "));
    assert!(out.join("index.txt").exists());
    for logic in ["DHMSH", "RDPCH", "RPCHd", "RDMH"] {
        let o = Command::new(env!("CARGO_BIN_EXE_latkit"))
            .args(["soundness", "--logic", logic])
            .env("LATKIT_CORPUS", &out)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0), "{logic}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn enumerate_filter_lists_members() {
    let o = latkit(&["enumerate", "--max-poset", "3", "--filter", "RDBLP"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().last(), Some("TOTAL 8"));
    assert!(out.lines().filter(|l| !l.starts_with("TOTAL")).all(|l| l.contains("RDBLP")));
}
