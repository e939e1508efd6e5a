//! End-to-end runs of the installed binary: output shapes and the exit
//! status contract (0 success, 1 failed check, 2 usage or input error).

use std::path::PathBuf;
use std::process::{Command, Output};

use ecpairs::construct::{grs, GrsSpec};
use ecpairs::gf::{Felt, Field};
use ecpairs::textio::write_code;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecpairs"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("stdout is utf-8")
}

fn write_tmp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("ecpairs-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file writes");
    path
}

const EX31: &str = "tgrs 37 1 10 3\nalpha 0 1 2 3 4 5 6 7 8 9\neta 6\n";
const GRS6: &str = "grs 37 1 10 6\nalpha 0 1 2 3 4 5 6 7 8 9\n";
const GRS3: &str = "grs 37 1 10 3\nalpha 0 1 2 3 4 5 6 7 8 9\n";

/// The 3-error pair for the k=3 twisted code: A is the dual of the order-6
/// evaluation code, B the order-3 one. Returns (a, b, c) file paths.
fn example_pair_files(tag: &str) -> (PathBuf, PathBuf, PathBuf) {
    let g6 = write_tmp(&format!("{tag}-g6"), GRS6);
    let dual = run(&["dual", g6.to_str().unwrap()]);
    assert!(dual.status.success());
    let a = write_tmp(&format!("{tag}-a"), &stdout(&dual));
    let b = write_tmp(&format!("{tag}-b"), GRS3);
    let c = write_tmp(&format!("{tag}-c"), EX31);
    (a, b, c)
}

#[test]
fn classify_prints_the_known_class() {
    let c = write_tmp("classify", EX31);
    let out = run(&["classify", c.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "NMDS [10,3,7]\n");

    let rec = run(&["classify", c.to_str().unwrap(), "--format", "record"]);
    assert_eq!(stdout(&rec), "class=NMDS n=10 k=3 d=7 d_dual=3\n");
}

#[test]
fn paper_examples_prints_three_pass_lines() {
    let out = run(&["paper-examples"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    for (line, id) in lines.iter().zip(["ex3.1", "ex4.1a", "ex4.1b"]) {
        assert!(
            line.starts_with(&format!("PASS {id}:")),
            "unexpected line {line:?}"
        );
    }
}

#[test]
fn single_example_selection_works() {
    let out = run(&["paper-examples", "ex4.1b", "--format", "record"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("id=ex4.1b status=PASS case=D.2"), "{text}");
    assert_eq!(text.lines().count(), 1);

    let bad = run(&["paper-examples", "ex9.9"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_splits_pass_and_fail_by_exit_status() {
    let (a, b, c) = example_pair_files("verify");
    let good = run(&[
        "ecp-verify",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        c.to_str().unwrap(),
        "--ell",
        "3",
    ]);
    assert_eq!(good.status.code(), Some(0));
    assert!(stdout(&good).contains("case: A.1"));

    // E2 and E3 both fail one step past the example's error budget.
    let over = run(&[
        "ecp-verify",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        c.to_str().unwrap(),
        "--ell",
        "4",
    ]);
    assert_eq!(over.status.code(), Some(1));
    assert!(stdout(&over).contains("pair verifies: false"));
}

#[test]
fn decode_recovers_a_planted_error_and_flags_an_oversized_one() {
    let (a, b, c) = example_pair_files("decode");
    let abc = [a.to_str().unwrap(), b.to_str().unwrap(), c.to_str().unwrap()];
    let ok = run(&[
        "ecp-decode", abc[0], abc[1], abc[2],
        "--ell", "3",
        "--word", "5,0,7,0,0,1,0,0,0,0",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout(&ok);
    assert!(text.contains("status: Decoded"), "{text}");
    assert!(text.contains("codeword: 0 0 0 0 0 0 0 0 0 0"), "{text}");
    assert!(text.contains("error: 5 0 7 0 0 1 0 0 0 0"), "{text}");

    let too_far = run(&[
        "ecp-decode", abc[0], abc[1], abc[2],
        "--ell", "3",
        "--word", "5,3,7,2,0,1,0,0,0,0",
        "--format", "record",
    ]);
    assert_eq!(too_far.status.code(), Some(1));
    assert!(stdout(&too_far).starts_with("status=Fail_"));
}

#[test]
fn search_finds_the_example_pair_shape() {
    let c = write_tmp("search", EX31);
    let out = run(&["ecp-search", c.to_str().unwrap(), "--ell", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("hits: "), "{text}");
    assert!(text.contains("A=[10,4,7]"), "{text}");
    assert!(text.contains("case A.1"), "{text}");
}

#[test]
fn theorem_check_matches_one_statement() {
    let (a, b, c) = example_pair_files("theorem");
    let out = run(&[
        "theorem-check",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        c.to_str().unwrap(),
        "--ell",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 9);
    assert!(text.contains("T3.3 Consistent possibility (2)"), "{text}");
    assert!(!text.contains("Violated"), "{text}");
}

#[test]
fn dual_round_trips_to_the_canonical_generator() {
    let f = Field::prime(37).unwrap();
    let alpha: Vec<Felt> = (0..10).map(|x| f.felt(x).unwrap()).collect();
    let expected = write_code(&grs(&GrsSpec::unscaled(f, alpha, 6).unwrap()));

    let g6 = write_tmp("dualrt-g6", GRS6);
    let once = run(&["dual", g6.to_str().unwrap()]);
    let a = write_tmp("dualrt-a", &stdout(&once));
    let twice = run(&["dual", a.to_str().unwrap()]);
    assert_eq!(twice.status.code(), Some(0));
    assert_eq!(stdout(&twice), expected);
}

#[test]
fn puncture_drops_the_named_coordinates() {
    let b = write_tmp("punct", GRS3);
    let out = run(&["puncture", b.to_str().unwrap(), "--drop", "0,9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("37 1 8 3\n"));
}

#[test]
fn mindist_and_schur_respect_the_budget_flag() {
    let b = write_tmp("mindist", GRS3);
    let out = run(&["mindist", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "8\n");

    // 37^3 messages and 2^10 column subsets both exceed a budget of 100.
    let tight = run(&["mindist", b.to_str().unwrap(), "--budget", "100"]);
    assert_eq!(tight.status.code(), Some(2));

    let prod = run(&[
        "schur",
        b.to_str().unwrap(),
        b.to_str().unwrap(),
        "--format",
        "record",
    ]);
    assert_eq!(prod.status.code(), Some(0));
    assert!(stdout(&prod).contains("k_prod=5 d_prod=6 psb=6 pmds=true"));
}

#[test]
fn field_info_accepts_prime_powers_only() {
    let out = run(&["field-info", "9", "--format", "record"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("p=3 m=2 q=9"));

    let bad = run(&["field-info", "12"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn negative_search_reports_a_clean_sweep() {
    let out = run(&[
        "negative-search",
        "--family", "A2",
        "--q", "13",
        "--n-min", "9",
        "--n-max", "9",
        "--format", "record",
        "--seed", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("witnesses=0"), "{text}");
    assert!(text.contains("seed=5"), "{text}");
}

#[test]
fn tables_prints_the_case_rows() {
    let out = run(&["tables"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("A.4: A=[n,ℓ+3,n-ℓ-2]"));
    assert!(text.contains("B⊥=[n,n-ℓ-1,ℓ+1]"));
}

#[test]
fn usage_errors_exit_two_and_help_exits_zero() {
    let empty = write_tmp("empty", "");
    let parse = run(&["mindist", empty.to_str().unwrap()]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(!parse.stderr.is_empty());

    let unknown = run(&["no-such-command"]);
    assert_eq!(unknown.status.code(), Some(2));

    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("ecp-verify"));
}
