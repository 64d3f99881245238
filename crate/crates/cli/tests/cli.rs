//! Golden tests for the command line: stable output lines and the
//! 0/1/2 exit-code contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use omega_clique::clique::support_overlap_presentation;
use omega_clique::nba::Nfa;
use omega_clique::words::{Alphabet, FiniteWord};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_omega-clique"))
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn gallery_bundle(dir: &Path) -> PathBuf {
    let bundle = dir.join("sec-bundle");
    support_overlap_presentation().write(&bundle).expect("bundle written");
    bundle
}

#[test]
fn word_commands() {
    let out = run(&["word", "simeq", "(0)", "1(0)"]);
    assert_eq!(stdout(&out), "RESULT yes\n");
    assert_eq!(code(&out), 0);

    let out = run(&["word", "simeq", "(01)", "(10)"]);
    assert_eq!(stdout(&out), "RESULT no\n");
    assert_eq!(code(&out), 1);

    let out = run(&["word", "cmp", "(01)", "(0011)"]);
    assert_eq!(stdout(&out), "ORDER greater\n");
    assert_eq!(code(&out), 0);

    let out = run(&["word", "suppmeet", "(10)", "(01)"]);
    assert_eq!(stdout(&out), "RESULT yes\n");

    let out = run(&["word", "lcp", "(01)", "(0011)"]);
    assert_eq!(stdout(&out), "LCP 0\n");

    let out = run(&["word", "lcp", "(0)", "1(0)"]);
    assert_eq!(stdout(&out), "LCP eps\n");

    let out = run(&["word", "convolve", "(0)", "(1)"]);
    assert_eq!(stdout(&out), "WORD (0|1)\n");
}

#[test]
fn malformed_input_exits_2() {
    let out = run(&["word", "simeq", "((", "(0)"]);
    assert_eq!(code(&out), 2);

    let out = run(&["word", "unknown-verb", "(0)", "(0)"]);
    assert_eq!(code(&out), 2);

    let out = run(&["nlang", "check", "012"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn nba_commands() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = gallery_bundle(dir.path());
    let domain = bundle.join("L.nba");
    let domain_str = domain.to_str().unwrap();

    let out = run(&["nba", "member", "--automaton", domain_str, "--word", "1(10)"]);
    assert_eq!(stdout(&out), "RESULT yes\n");
    assert_eq!(code(&out), 0);

    let out = run(&["nba", "member", "--automaton", domain_str, "--word", "(0)"]);
    assert_eq!(stdout(&out), "RESULT no\n");
    assert_eq!(code(&out), 1);

    let out = run(&["nba", "empty", "--automaton", domain_str]);
    assert_eq!(stdout(&out), "RESULT no\nWITNESS (10)\n");
    assert_eq!(code(&out), 1);

    let out = run(&["nba", "witness", "--automaton", domain_str]);
    assert_eq!(stdout(&out), "RESULT yes\nWITNESS (10)\n");
    assert_eq!(code(&out), 0);

    // the witness literal re-parses and is accepted
    let witness_line = stdout(&out);
    let literal = witness_line.lines().nth(1).unwrap().strip_prefix("WITNESS ").unwrap();
    let out = run(&["nba", "member", "--automaton", domain_str, "--word", literal]);
    assert_eq!(code(&out), 0);

    // product of the block language with itself accepts (10)
    let out = run(&["nba", "product", "--automaton", domain_str, "--automaton", domain_str]);
    assert_eq!(code(&out), 0);
    let product_path = dir.path().join("product.nba");
    std::fs::write(&product_path, stdout(&out)).unwrap();
    let out =
        run(&["nba", "member", "--automaton", product_path.to_str().unwrap(), "--word", "(10)"]);
    assert_eq!(stdout(&out), "RESULT yes\n");

    // complement of the block language accepts (0)
    let out = run(&["nba", "complement", "--automaton", domain_str]);
    assert_eq!(code(&out), 0);
    let complement_path = dir.path().join("complement.nba");
    std::fs::write(&complement_path, stdout(&out)).unwrap();
    let out =
        run(&["nba", "member", "--automaton", complement_path.to_str().unwrap(), "--word", "(0)"]);
    assert_eq!(stdout(&out), "RESULT yes\n");
    let out =
        run(&["nba", "member", "--automaton", complement_path.to_str().unwrap(), "--word", "(10)"]);
    assert_eq!(stdout(&out), "RESULT no\n");
}

#[test]
fn nlang_commands() {
    let out = run(&["nlang", "check", "101001000001"]);
    assert_eq!(stdout(&out), "RESULT yes\n");

    let out = run(&["nlang", "check", "0"]);
    assert_eq!(stdout(&out), "RESULT no\n");
    assert_eq!(code(&out), 1);

    let out = run(&["nlang", "gen", "--choices", "000", "--len", "8"]);
    assert_eq!(stdout(&out), "PREFIX 11010001\n");

    let out = run(&[
        "nlang", "image", "--u", "1", "--v", "0", "--w", "1", "--choices", "000", "--len", "9",
    ]);
    assert_eq!(stdout(&out), "PREFIX 111010001\n");
}

#[test]
fn clique_verify_and_find() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = gallery_bundle(dir.path());
    let bundle_str = bundle.to_str().unwrap();

    let out = run(&[
        "clique", "verify", "--bundle", bundle_str, "--u", "1", "--v", "0", "--w", "1", "--class",
        "1",
    ]);
    assert_eq!(stdout(&out), "RESULT yes\n");
    assert_eq!(code(&out), 0);

    let out = run(&[
        "clique", "verify", "--bundle", bundle_str, "--u", "1", "--v", "0", "--w", "1", "--class",
        "2",
    ]);
    let text = stdout(&out);
    assert_eq!(code(&out), 1);
    assert!(text.starts_with("RESULT no\nSTAGE pair\nPAIR "), "{text}");
    assert!(text.contains("CLASS E1"), "{text}");

    let out = run(&[
        "clique", "verify", "--bundle", bundle_str, "--u", "0", "--v", "0", "--w", "1", "--class",
        "1",
    ]);
    let text = stdout(&out);
    assert_eq!(code(&out), 1);
    assert!(text.starts_with("RESULT no\nSTAGE subset\nWITNESS 0"), "{text}");

    let out = run(&["clique", "find", "--bundle", bundle_str, "--max-len", "1"]);
    assert_eq!(stdout(&out), "RESULT yes\nTRIPLE 1 0 1\nCLASS E1\n");
    assert_eq!(code(&out), 0);

    let out = run(&["clique", "find", "--bundle", bundle_str, "--max-len", "0"]);
    assert_eq!(stdout(&out), "RESULT no\n");
    assert_eq!(code(&out), 1);
}

#[test]
fn cx_commands() {
    let out = run(&["cx", "hyper3", "(0)", "1(0)", "11(0)"]);
    assert_eq!(stdout(&out), "CLASS E1\n");

    let out = run(&["cx", "pair", "(110)", "(101)"]);
    assert_eq!(stdout(&out), "CLASS E2\n");

    let out = run(&[
        "cx", "brute", "--classifier", "hyper3", "(0)", "1(0)", "11(0)", "111(0)",
    ]);
    assert_eq!(stdout(&out), "RESULT yes\nCLASS E1\n");

    let out = run(&["cx", "brute", "--classifier", "hyper3", "(0)", "1(0)", "0(1)", "11(0)"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("RESULT no\nVIOLATION "));

    // prefix language {1} and blocks {10, 01}
    let dir = tempfile::tempdir().unwrap();
    let bin = Alphabet::binary();
    let u = Nfa::new(bin.clone(), 2, 0, [1], [(0, 1, 1)]).unwrap();
    let v = Nfa::new(bin.clone(), 4, 0, [3], [(0, 1, 1), (1, 0, 3), (0, 0, 2), (2, 1, 3)]).unwrap();
    let u_path = dir.path().join("u.nfa");
    let v_path = dir.path().join("v.nfa");
    std::fs::write(&u_path, u.to_text()).unwrap();
    std::fs::write(&v_path, v.to_text()).unwrap();
    let out = run(&[
        "cx",
        "inhomog",
        "--U",
        u_path.to_str().unwrap(),
        "--V",
        v_path.to_str().unwrap(),
    ]);
    // canonical lasso forms: 1(1001)^ω = (1100)^ω and 1(1010)^ω = 1(10)^ω
    assert_eq!(
        stdout(&out),
        "CLASS E1\nPAIR 1(10) 101(10)\nCLASS E2\nPAIR (1100) 1(10)\n"
    );
    assert_eq!(code(&out), 0);
}

#[test]
fn poset_partition_writes_a_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let bin = Alphabet::binary();

    // universal names, identity equality, lexicographic order as ⊑
    let domain = omega_clique::nba::Nba::universal(bin.clone());
    let eq = omega_clique::clique::diagonal_relation(&bin);
    let leq = omega_clique::nba::Nba::lex_order(&bin).union(&eq).unwrap();
    let l_path = dir.path().join("L.nba");
    let eq_path = dir.path().join("eq.nba");
    let leq_path = dir.path().join("leq.nba");
    std::fs::write(&l_path, domain.to_text()).unwrap();
    std::fs::write(&eq_path, eq.to_text()).unwrap();
    std::fs::write(&leq_path, leq.to_text()).unwrap();

    let out_dir = dir.path().join("partition");
    let out = run(&[
        "poset",
        "partition",
        "--L",
        l_path.to_str().unwrap(),
        "--eq",
        eq_path.to_str().unwrap(),
        "--leq",
        leq_path.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    for name in ["L.nba", "eq.nba", "E1.nba", "E2.nba", "E3.nba"] {
        assert!(out_dir.join(name).exists(), "{name} missing");
    }
    // the produced bundle loads back as a presentation
    let p = omega_clique::clique::Presentation::load(&out_dir).unwrap();
    assert_eq!(p.edges().len(), 3);

    // lexicographically smaller word is strictly below: class E1
    let x = FiniteWord::parse(&bin, "0").unwrap();
    let _ = x;
    let out = run(&[
        "nba",
        "member",
        "--automaton",
        out_dir.join("E1.nba").to_str().unwrap(),
        "--word",
        "(0|1)",
    ]);
    assert_eq!(stdout(&out), "RESULT yes\n");
}
