use std::path::{Path, PathBuf};
use std::process::Command;

use freeiso_cli::text::{parse_presentation, print_presentation};
use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_freeiso")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn corpus_files_round_trip() {
    let mut seen = 0;
    for entry in std::fs::read_dir(corpus("")).unwrap() {
        let path = entry.unwrap().path();
        let p = parse_presentation(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let printed = print_presentation(&p);
        assert_eq!(parse_presentation(&printed).unwrap(), p, "{}", path.display());
        assert_eq!(print_presentation(&parse_presentation(&printed).unwrap()), printed);
        seen += 1;
    }
    assert!(seen >= 8);
}

#[test]
fn exit_codes() {
    let (code, out, _) = run(&["decide-free", path_str(&corpus("cab.fp")), "-n", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Isomorphic"));
    let (code, out, _) = run(&["decide-free", path_str(&corpus("trefoil.fp")), "-n", "1"]);
    assert_eq!(code, 2, "{out}");
    assert!(out.starts_with("Inconclusive"));
    let (code, _, _) = run(&["decide-free", path_str(&corpus("cab.fp"))]);
    assert_eq!(code, 1);
    let (code, _, err) = run(&["abelian", "/nonexistent/group.fp"]);
    assert_eq!(code, 1);
    assert!(err.contains("group.fp"));
}

#[test]
fn parse_errors_report_positions() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.fp");
    for (text, needle) in [
        ("<a | b>", ":1:6: unknown generator 'b'"),
        ("<a, b |\n  a^0 b>", ":2:5: exponent must be nonzero"),
        ("<a, b | [a, b>", ":1:9: unbalanced '['"),
    ] {
        std::fs::write(&bad, text).unwrap();
        let (code, _, err) = run(&["abelian", path_str(&bad)]);
        assert_eq!(code, 1);
        assert!(err.contains(needle), "{err}");
    }
}

#[test]
fn word_problem_and_fold() {
    let (code, out, _) = run(&["wp", path_str(&corpus("z2.fp")), "--word", "a*b*a^-1*b^-1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Trivial"));
    let (code, out, _) = run(&["wp", path_str(&corpus("z2.fp")), "--word", "a^2*b"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Nontrivial"));
    let (code, out, _) = run(&["fold", "--rank", "2", "--words", "x*y,x*y^2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("rank: 2\nbasis: x, y\n"), "{out}");
    let (_, out, _) = run(&["abelian", path_str(&corpus("trefoil.fp"))]);
    assert_eq!(out, "Z\n");
}

#[test]
fn documents_verify_and_tampering_fails() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 6] = [
        &["decide-free", "cab.fp", "-n", "2"],
        &["decide-free", "z2.fp", "-n", "2"],
        &["embed-free", "z2.fp", "-n", "2"],
        &["wp", "order3.fp", "--word", "a^3", "--kb"],
        &["kb", "order3.fp"],
        &["epi-search", "cab.fp", "-n", "2"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let file = corpus(args[1]);
        let mut full: Vec<&str> = vec![args[0], path_str(&file)];
        full.extend(&args[2..]);
        full.extend(["--json", "--reproducible"]);
        let (code, doc, err) = run(&full);
        assert_eq!(code, 0, "{args:?}: {err}");
        let v: Value = serde_json::from_str(&doc).unwrap();
        assert_eq!(v["format_version"], 1);
        assert!(v.get("elapsed_ms").is_none());
        let path = dir.path().join(format!("doc{i}.json"));
        std::fs::write(&path, &doc).unwrap();
        let (code, out, err) = run(&["verify", path_str(&path)]);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert!(out.starts_with("verified: "));

        let mut tampered = v.clone();
        tampered["presentation"] = Value::String("<a, b | a^5>".into());
        std::fs::write(&path, tampered.to_string()).unwrap();
        let (code, _, err) = run(&["verify", path_str(&path)]);
        assert_eq!(code, 1, "{args:?}");
        assert!(err.contains("input_hash"), "{err}");
    }
}

#[test]
fn supplied_rewriting_systems() {
    let dir = tempfile::tempdir().unwrap();
    let (_, system, _) = run(&["kb", path_str(&corpus("z2.fp"))]);
    let good = dir.path().join("z2.rw");
    std::fs::write(&good, &system).unwrap();
    let (code, out, _) =
        run(&["wp", path_str(&corpus("z2.fp")), "--word", "[a, b^2]", "--rewriting", path_str(&good)]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Trivial"), "{out}");

    let bogus = dir.path().join("bogus.rw");
    std::fs::write(&bogus, "order: a a^-1 b b^-1\nrule: a a^-1 -> 1\nrule: a^-1 a -> 1\nrule: b b^-1 -> 1\nrule: b^-1 b -> 1\nrule: b -> 1\n")
        .unwrap();
    let (code, _, err) = run(&["wp", path_str(&corpus("z2.fp")), "--word", "b", "--rewriting", path_str(&bogus)]);
    assert_eq!(code, 1);
    assert!(err.contains("rejected"), "{err}");
}
