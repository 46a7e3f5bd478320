//! One PASS/FAIL line per acceptance criterion, with supporting detail.
//! Run with `cargo test -p freeiso-cli --test acceptance -- --nocapture`.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use freeiso::decision::{decide_free, Certificate, EmbedOutcome, Outcome};
use freeiso::verify::verify_outcome;
use freeiso::word_problem::Oracle;
use freeiso::{Budget, Letter, Presentation, Word};
use freeiso_cli::text::parse_presentation;
use freeiso_cli::verify_document;
use rand::Rng;
use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(name)
}

fn load(name: &str) -> Presentation {
    parse_presentation(&std::fs::read_to_string(corpus(name)).unwrap()).unwrap()
}

fn run(args: &[String]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_freeiso")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[derive(Clone, Copy)]
enum Cmd {
    Decide(usize),
    Embed(usize),
}

struct Case {
    file: &'static str,
    cmd: Cmd,
    expect: &'static str,
    check: fn(&Value) -> bool,
}

fn any(_: &Value) -> bool {
    true
}

fn obstruction(v: &Value, kind: &str) -> bool {
    v["certificate"]["NotIsomorphic"]["Obstruction"].get(kind).is_some()
}

const CASES: [Case; 11] = [
    Case { file: "cyclic.fp", cmd: Cmd::Decide(1), expect: "Isomorphic", check: any },
    Case {
        file: "free2.fp",
        cmd: Cmd::Decide(2),
        expect: "Isomorphic",
        check: |v| v["certificate"]["Isomorphic"]["inverse"]["psi_images"] == serde_json::json!([[1], [2]]),
    },
    Case { file: "cab.fp", cmd: Cmd::Decide(2), expect: "Isomorphic", check: any },
    Case { file: "order2.fp", cmd: Cmd::Decide(1), expect: "NotIsomorphic", check: |v| obstruction(v, "AbelianizationMismatch") },
    Case { file: "z2.fp", cmd: Cmd::Decide(2), expect: "NotIsomorphic", check: |v| obstruction(v, "AbelianShortcut") },
    Case { file: "z2.fp", cmd: Cmd::Decide(1), expect: "NotIsomorphic", check: |v| obstruction(v, "AbelianizationMismatch") },
    Case {
        file: "trefoil.fp",
        cmd: Cmd::Decide(2),
        expect: "NotIsomorphic",
        check: |v| {
            let found = &v["certificate"]["NotIsomorphic"]["Obstruction"]["AbelianizationMismatch"]["found"];
            found["free_rank"] == 1 && found["torsion"] == serde_json::json!([])
        },
    },
    Case { file: "killed.fp", cmd: Cmd::Decide(1), expect: "Isomorphic", check: any },
    Case {
        file: "z2.fp",
        cmd: Cmd::Embed(2),
        expect: "NotEmbeddable",
        check: |v| v["certificate"]["NotEmbeddable"]["certificates"].as_array().map(Vec::len) == Some(3),
    },
    Case {
        file: "cab.fp",
        cmd: Cmd::Embed(2),
        expect: "Embeds",
        check: |v| v["certificate"]["Embeds"]["rank"] == 2,
    },
    Case { file: "trefoil.fp", cmd: Cmd::Decide(1), expect: "not Isomorphic", check: any },
];

fn args_for(case: &Case, workers: usize) -> Vec<String> {
    let (sub, n) = match case.cmd {
        Cmd::Decide(n) => ("decide-free", n),
        Cmd::Embed(n) => ("embed-free", n),
    };
    let mut a: Vec<String> = vec![sub.into(), corpus(case.file).to_str().unwrap().into(), "-n".into(), n.to_string()];
    a.extend(["--json".into(), "--reproducible".into(), "--workers".into(), workers.to_string()]);
    a
}

fn label(case: &Case) -> String {
    match case.cmd {
        Cmd::Decide(n) => format!("decide-free {} n={n}", case.file),
        Cmd::Embed(n) => format!("embed-free {} n={n}", case.file),
    }
}

struct Report {
    lines: Vec<String>,
    failed: Vec<usize>,
}

impl Report {
    fn criterion(&mut self, id: usize, title: &str, ok: bool, detail: &str) {
        let status = if ok { "PASS" } else { "FAIL" };
        self.lines.push(format!("[{status}] criterion {id}: {title} ({detail})"));
        if !ok {
            self.failed.push(id);
        }
    }
}

fn mutate(word: &mut Word, rng: &mut rand_chacha::ChaCha8Rng) {
    let mut letters = word.letters().to_vec();
    let pos = rng.gen_range(0..letters.len());
    let alphabet = letters.iter().map(|l| l.gen_index()).max().unwrap() + 1;
    let old = letters[pos];
    let mut new = old;
    while new == old {
        new = Letter::new(rng.gen_range(0..alphabet), rng.gen_bool(0.5));
    }
    letters[pos] = new;
    *word = Word::reduce(letters);
}

/// Applies one single-letter mutation to a random nonempty certificate word
/// and returns whether the mutated document still verifies.
fn mutation_survives(doc: &Value, rng: &mut rand_chacha::ChaCha8Rng) -> Option<bool> {
    let mut doc = doc.clone();
    let cert = doc["certificate"].clone();
    let mutated = if doc["command"] == "decide-free" {
        let mut o: Outcome = serde_json::from_value(cert).unwrap();
        let mut words: Vec<&mut Word> = o.words_mut().into_iter().filter(|w| !w.is_empty()).collect();
        if words.is_empty() {
            return None;
        }
        let k = rng.gen_range(0..words.len());
        mutate(words[k], rng);
        serde_json::to_value(&o).unwrap()
    } else {
        let mut e: EmbedOutcome = serde_json::from_value(cert).unwrap();
        let mut words: Vec<&mut Word> = match &mut e {
            EmbedOutcome::Embeds { outcome, .. } => outcome.words_mut(),
            EmbedOutcome::NotEmbeddable { certificates } => {
                certificates.iter_mut().flat_map(|(_, c): &mut (usize, Certificate)| c.words_mut()).collect()
            }
            EmbedOutcome::Inconclusive { .. } => Vec::new(),
        };
        words.retain(|w| !w.is_empty());
        if words.is_empty() {
            return None;
        }
        let k = rng.gen_range(0..words.len());
        mutate(words[k], rng);
        serde_json::to_value(&e).unwrap()
    };
    doc["certificate"] = mutated;
    Some(verify_document(&doc.to_string()).is_ok())
}

type SuiteFn = fn() -> support::props::Suite;

fn is_definitive(kind: &str) -> bool {
    !matches!(kind, "Inconclusive")
}

#[test]
fn acceptance() {
    let mut report = Report { lines: Vec::new(), failed: Vec::new() };

    // Criterion 1: verdict corpus.
    let mut docs: Vec<(String, Value)> = Vec::new();
    let mut good = 0;
    let mut slowest = Duration::ZERO;
    for case in &CASES {
        let start = Instant::now();
        let (code, out) = run(&args_for(case, 1));
        let took = start.elapsed();
        slowest = slowest.max(took);
        let v: Value = serde_json::from_str(&out).unwrap_or(Value::Null);
        let kind = v["outcome"].as_str().unwrap_or("?").to_string();
        let ok = if case.expect == "not Isomorphic" {
            kind != "Isomorphic" && kind != "?"
        } else {
            kind == case.expect && (case.check)(&v) && code == 0
        } && took < Duration::from_secs(10);
        println!("    {:<36} {kind:<14} exit {code} {:>6} ms {}", label(case), took.as_millis(), if ok { "ok" } else { "UNEXPECTED" });
        good += usize::from(ok);
        if is_definitive(&kind) && kind != "?" {
            docs.push((label(case), v));
        }
    }
    let trefoil = load("trefoil.fp");
    let mut never_iso = true;
    for factor in [1, 2] {
        let budget = Budget::default().scaled(factor);
        let o = decide_free(&Oracle::standard(&trefoil, &budget), 1, &budget).outcome;
        println!("    trefoil n=1 at {factor}x budget: {}", o.kind());
        never_iso &= o.kind() != "Isomorphic";
    }
    report.criterion(
        1,
        "verdict corpus",
        good == CASES.len() && never_iso,
        &format!("{good}/{} cases as expected, slowest {} ms, trefoil never Isomorphic", CASES.len(), slowest.as_millis()),
    );

    // Criterion 2: verifier replay and mutation fuzz.
    let mut rng = support::rng("mutation");
    let mut replayed = 0;
    let mut mutations = 0;
    let mut survivors = Vec::new();
    let dir = tempfile::tempdir().unwrap();
    for (i, (name, doc)) in docs.iter().enumerate() {
        let path = dir.path().join(format!("doc{i}.json"));
        std::fs::write(&path, doc.to_string()).unwrap();
        let (code, _) = run(&["verify".into(), path.to_str().unwrap().into()]);
        replayed += usize::from(code == 0);
        let mut applied = 0;
        for _ in 0..100 {
            match mutation_survives(doc, &mut rng) {
                None => break,
                Some(survived) => {
                    applied += 1;
                    if survived {
                        survivors.push(name.clone());
                    }
                }
            }
        }
        mutations += applied;
        println!("    {name:<36} replay exit {code}, {applied} mutations");
    }
    report.criterion(
        2,
        "verifier independence",
        replayed == docs.len() && survivors.is_empty(),
        &format!(
            "{replayed}/{} definitive outcomes replayed, {mutations} mutations, {} accepted{}",
            docs.len(),
            survivors.len(),
            if survivors.is_empty() { String::new() } else { format!(": {survivors:?}") }
        ),
    );

    // Criterion 3: property suites.
    let suites: [(&str, SuiteFn); 4] = [
        ("words", support::props::words),
        ("snf", support::props::snf),
        ("stallings", support::props::stallings),
        ("word_problem", support::props::word_problem),
    ];
    let mut all = true;
    for (name, suite) in suites {
        let r = suite();
        println!("    {name:<14} {}", match &r {
            Ok(s) => format!("ok: {s}"),
            Err(e) => format!("FAILED: {e}"),
        });
        all &= r.is_ok();
    }
    report.criterion(3, "property suites", all, &format!("{} cases per randomized property", support::CASES));

    // Criterion 4: doubled budgets and worker-count determinism.
    let mut changed = Vec::new();
    let mut identical = 0;
    for case in &CASES {
        let g = load(case.file);
        if let Cmd::Decide(n) = case.cmd {
            let base = Budget::default();
            let doubled = base.scaled(2);
            let a = decide_free(&Oracle::standard(&g, &base), n, &base).outcome;
            let b = decide_free(&Oracle::standard(&g, &doubled), n, &doubled).outcome;
            let verified = !b.is_definitive() || verify_outcome(&g, &Presentation::free(n), &b).is_ok();
            if (a.is_definitive() && a.kind() != b.kind()) || !verified {
                changed.push(label(case));
            }
        }
        let one = run(&args_for(case, 1));
        let four = run(&args_for(case, 4));
        identical += usize::from(one == four);
    }
    report.criterion(
        4,
        "monotonicity and determinism",
        changed.is_empty() && identical == CASES.len(),
        &format!(
            "doubled budgets changed {} definitive verdicts, {identical}/{} outputs byte-identical for 1 vs 4 workers",
            changed.len(),
            CASES.len()
        ),
    );

    println!();
    for line in &report.lines {
        println!("{line}");
    }
    assert!(report.failed.is_empty(), "failed criteria: {:?}", report.failed);
}
