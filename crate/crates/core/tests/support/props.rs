//! Randomized property suites. Each returns a one-line summary on success
//! and the first counterexample on failure. Oracles here are computed
//! test-side (brute force, minors, explicit products), not by the crate.

use std::collections::BTreeSet;

use freeiso::stallings::{petal_edges, FoldedGraph, RawEdge};
use freeiso::word_problem::{
    knuth_bendix, Completion, Confluence, ConjugateProduct, Oracle, OracleAnswer, Term, YesPart, YesPartAnswer,
};
use freeiso::words::{enumerate_tuples, enumerate_words};
use freeiso::{build_graph, smith_normal_form, Budget, BudgetReport, IntMatrix, Letter, Presentation, SmallIntMatrix, Word};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{random_letters, random_reduced, random_word_up_to, rng, CASES};

pub type Suite = Result<String, String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn is_reduced(ls: &[Letter]) -> bool {
    ls.windows(2).all(|p| !p[0].cancels(p[1]))
}

fn shortlex_key(w: &[Letter]) -> (usize, Vec<usize>) {
    (w.len(), w.iter().map(|l| 2 * l.gen_index() + usize::from(l.sign() < 0)).collect())
}

/// Every letter string of length `len` over `rank` generators.
fn all_strings(rank: usize, len: usize) -> Vec<Vec<Letter>> {
    let alphabet: Vec<Letter> = (0..rank).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s: Vec<Letter>| {
                alphabet.iter().map(move |&l| {
                    let mut t = s.clone();
                    t.push(l);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn words() -> Suite {
    let mut rng = rng("words");
    for case in 0..CASES {
        let rank = rng.gen_range(1..=3);
        let len = rng.gen_range(0..=12);
        let raw = random_letters(&mut rng, rank, len);
        let w = Word::reduce(raw.clone());
        check!(is_reduced(w.letters()), "case {case}: reduce left a cancelling pair");
        check!(Word::reduce(w.letters().to_vec()) == w, "case {case}: reduction not idempotent");
        let exps: Vec<i64> = w.exponent_sums(rank);
        let raw_exps: Vec<i64> =
            (0..rank).map(|g| raw.iter().filter(|l| l.gen_index() == g).map(|l| i64::from(l.sign())).sum()).collect();
        check!(exps == raw_exps, "case {case}: reduction changed exponent sums");

        let u = random_word_up_to(&mut rng, rank, 8);
        let v = random_word_up_to(&mut rng, rank, 8);
        check!(w.concat(&w.inverse()).is_identity(), "case {case}: w w^-1 != 1");
        check!(w.inverse().inverse() == w, "case {case}: inverse not an involution");
        check!(u.concat(&v).inverse() == v.inverse().concat(&u.inverse()), "case {case}: (uv)^-1 law");
        check!(u.concat(&v).concat(&w) == u.concat(&v.concat(&w)), "case {case}: associativity");
        check!(w.concat(&Word::identity()) == w && Word::identity().concat(&w) == w, "case {case}: identity law");
        let joined: Vec<Letter> = u.letters().iter().chain(v.letters()).copied().collect();
        check!(u.concat(&v) == Word::reduce(joined), "case {case}: concat is not reduced juxtaposition");
    }
    for rank in 1..=2 {
        for max_len in 0..=5 {
            let brute: BTreeSet<(usize, Vec<usize>)> = (0..=max_len)
                .flat_map(|k| all_strings(rank, k))
                .filter(|s| is_reduced(s))
                .map(|s| shortlex_key(&s))
                .collect();
            let listed: Vec<(usize, Vec<usize>)> = enumerate_words(rank, max_len).map(|w| shortlex_key(w.letters())).collect();
            check!(listed.len() == brute.len(), "rank {rank} len {max_len}: {} words, expected {}", listed.len(), brute.len());
            check!(listed.iter().cloned().eq(brute.iter().cloned()), "rank {rank} len {max_len}: not shortlex / wrong set");
        }
    }
    for (rank, arity, len) in [(1, 2, 2), (2, 2, 2), (2, 3, 1), (1, 3, 2)] {
        let words: Vec<Word> = enumerate_words(rank, len).collect();
        let tuples: Vec<Vec<Word>> = enumerate_tuples(rank, arity, len).collect();
        let expected = words.len().pow(arity as u32);
        let distinct: BTreeSet<Vec<Vec<Letter>>> =
            tuples.iter().map(|t| t.iter().map(|w| w.letters().to_vec()).collect()).collect();
        check!(tuples.len() == expected && distinct.len() == expected, "tuples ({rank},{arity},{len}) not a bijection");
        let longer: Vec<Vec<Word>> = enumerate_tuples(rank, arity, len + 1).take(tuples.len()).collect();
        check!(longer == tuples, "tuples ({rank},{arity},{len}) not a prefix of the next bound");
    }
    Ok(format!("{CASES} random cases, brute-force counts for rank <= 2, length <= 5"))
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::from(1),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
                let t = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `d_k` = gcd of all `k x k` minors; invariant factors are `d_k / d_{k-1}`.
fn determinantal_invariants(a: &[Vec<BigInt>], rows: usize, cols: usize) -> Vec<BigInt> {
    let mut prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| a[r][c].clone()).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            out.push(BigInt::zero());
        } else {
            out.push(&g / &prev);
            prev = g;
        }
    }
    out
}

fn dense(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|r| (0..cols).map(|j| (0..inner).map(|k| &r[k] * &b[k][j]).sum()).collect()).collect()
}

pub fn snf() -> Suite {
    let mut rng = rng("snf");
    for case in 0..CASES {
        let (rows, cols) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let spread = if case % 4 == 0 { 40 } else { 6 };
        let small: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-spread..=spread)).collect()).collect();
        let a: Vec<Vec<BigInt>> = small.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let s = smith_normal_form(&IntMatrix::from_rows(cols, a.clone()));
        let (u, v, d) = (dense(&s.u), dense(&s.v), dense(&s.d));
        check!(matmul(&matmul(&u, &a), &v) == d, "case {case}: U A V != D for {small:?}");
        check!(det(&u).abs() == BigInt::from(1) && det(&v).abs() == BigInt::from(1), "case {case}: U or V not unimodular");
        for (i, r) in d.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                check!(i == j || x.is_zero(), "case {case}: D not diagonal");
            }
        }
        let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| d[i][i].clone()).collect();
        check!(diag.iter().all(|x| !x.is_negative()), "case {case}: negative invariant");
        for p in diag.windows(2) {
            let ok = if p[0].is_zero() { p[1].is_zero() } else { p[1].is_multiple_of(&p[0]) };
            check!(ok, "case {case}: divisibility chain broken in {diag:?}");
        }
        let oracle = determinantal_invariants(&a, rows, cols);
        check!(diag == oracle, "case {case}: {diag:?} but determinantal divisors give {oracle:?}");
        let narrow = smith_normal_form(&SmallIntMatrix::from_rows(cols, small.clone()));
        let narrow_diag: Vec<BigInt> = narrow.diagonal().into_iter().map(BigInt::from).collect();
        check!(narrow_diag == diag, "case {case}: i64 and BigInt disagree");
    }
    Ok(format!("{CASES} random matrices up to 3x3 against determinantal divisors"))
}

/// Rank of the exponent-sum matrix over Q, via the invariant factors.
fn abelian_rank(tuple: &[Word], rank: usize) -> usize {
    let rows: Vec<Vec<BigInt>> = tuple.iter().map(|w| w.exponent_sums(rank).into_iter().map(BigInt::from).collect()).collect();
    if rows.is_empty() {
        return 0;
    }
    determinantal_invariants(&rows, rows.len(), rank).iter().filter(|x| !x.is_zero()).count()
}

pub fn stallings() -> Suite {
    let mut rng = rng("stallings");
    for case in 0..CASES {
        let rank = rng.gen_range(2..=3);
        let size = rng.gen_range(1..=5);
        let tuple: Vec<Word> = (0..size).map(|_| random_word_up_to(&mut rng, rank, 8)).collect();
        let g = build_graph(rank, &tuple);
        let nontrivial = tuple.iter().filter(|w| !w.is_identity()).count();
        check!(g.rank() <= nontrivial, "case {case}: rank {} exceeds {nontrivial} generators", g.rank());
        check!(g.rank() >= abelian_rank(&tuple, rank), "case {case}: rank below abelianized rank");
        check!(g.basis().len() == g.rank(), "case {case}: basis size differs from rank");
        for (i, w) in tuple.iter().enumerate() {
            check!(g.contains(w), "case {case}: generator {i} not a member");
        }
        for _ in 0..4 {
            let mut w = Word::identity();
            for _ in 0..rng.gen_range(0..=4) {
                let t = &tuple[rng.gen_range(0..size)];
                w = w.concat(&if rng.gen_bool(0.5) { t.clone() } else { t.inverse() });
            }
            check!(g.contains(&w), "case {case}: product of generators not a member");
            let e = g.express_in_generators(&w).ok_or(format!("case {case}: member not expressible"))?;
            check!(e.substitute(&tuple).ok() == Some(w.clone()), "case {case}: express_in_generators round trip");
            let b = g.express(&w).ok_or(format!("case {case}: member not expressible in basis"))?;
            check!(b.substitute(&g.basis()).ok() == Some(w.clone()), "case {case}: basis round trip");
        }
        for _ in 0..4 {
            let w = random_word_up_to(&mut rng, rank, 6);
            if let Some(e) = g.express_in_generators(&w) {
                check!(e.substitute(&tuple).ok() == Some(w), "case {case}: claimed membership without a valid expression");
            }
        }
        let (vertices, mut edges) = petal_edges(&tuple);
        edges.shuffle(&mut rng);
        let mut perm: Vec<usize> = (0..vertices).collect();
        perm.shuffle(&mut rng);
        let relabelled: Vec<RawEdge> = edges
            .into_iter()
            .map(|e| RawEdge { source: perm[e.source], target: perm[e.target], gen: e.gen, label: e.label })
            .collect();
        let refolded = FoldedGraph::fold(rank, vertices, perm[0], relabelled);
        check!(refolded == g, "case {case}: folding order changed the canonical graph");
    }
    Ok(format!("{CASES} random tuples in F_2 and F_3, shuffled folds agree"))
}

fn random_product(rng: &mut rand_chacha::ChaCha8Rng, p: &Presentation, terms: usize, conj: usize) -> (Word, ConjugateProduct) {
    let mut c = ConjugateProduct::empty();
    for _ in 0..terms {
        let t = Term {
            conjugator: random_word_up_to(rng, p.num_generators(), conj),
            relator: rng.gen_range(0..p.relators().len()),
            exponent: if rng.gen_bool(0.5) { 1 } else { -1 },
        };
        c = c.concat(&ConjugateProduct::single(t));
    }
    let mut w = Word::identity();
    for t in &c.terms {
        let r = p.relators()[t.relator].pow(i64::from(t.exponent));
        w = w.concat(&t.conjugator.concat(&r).concat(&t.conjugator.inverse()));
    }
    (w, c)
}

pub fn word_problem() -> Suite {
    let mut rng = rng("word_problem");
    let budget = Budget::default();
    let mut found = 0;
    let mut sampled = 0;
    for case in 0..CASES {
        let count = rng.gen_range(1..=2);
        let rels: Vec<Word> = (0..count)
            .map(|_| {
                let len = rng.gen_range(1..=4);
                random_reduced(&mut rng, 2, len)
            })
            .collect();
        let p = Presentation::new(vec!["a".into(), "b".into()], rels).map_err(|e| e.to_string())?;
        if p.is_free() {
            continue;
        }
        let oracle = Oracle::standard(&p, &budget);
        for _ in 0..2 {
            let terms = rng.gen_range(1..=2);
            let (w, _) = random_product(&mut rng, &p, terms, 1);
            sampled += 1;
            let answer = oracle.query(&w, &mut BudgetReport::default());
            match &answer {
                OracleAnswer::Trivial(c) => {
                    check!(c.proves(p.relators(), &w), "case {case}: Trivial certificate does not replay");
                    found += 1;
                }
                OracleAnswer::Nontrivial(_) => return Err(format!("case {case}: a product of relators called nontrivial")),
                OracleAnswer::Unknown(_) => {
                    check!(w.len() > budget.max_word_length, "case {case}: short product of one-letter conjugates missed")
                }
            }
        }
    }

    let c3 = Presentation::new(vec!["a".into()], vec![Word::generator(0).pow(3)]).map_err(|e| e.to_string())?;
    let Completion::Complete(s) = knuth_bendix(&c3, &budget) else { return Err("completion of <a|a^3> failed".into()) };
    let irreducible = enumerate_words(1, 6).filter(|w| s.system.is_irreducible(w.letters())).count();
    check!(irreducible == 3, "<a|a^3> has {irreducible} normal forms");

    let (a, b) = (Word::generator(0), Word::generator(1));
    let z2 = Presentation::new(vec!["a".into(), "b".into()], vec![Word::commutator(&a, &b)]).map_err(|e| e.to_string())?;
    let Completion::Complete(s) = knuth_bendix(&z2, &budget) else { return Err("completion of Z^2 failed".into()) };
    check!(s.system.check_confluence(budget.max_rewrite_steps) == Confluence::Confluent, "Z^2 system not confluent");
    let yes = YesPart::new(&z2, &budget);
    let mut agreements = 0;
    let mut i = 0;
    while agreements < 100 && i < 1000 {
        i += 1;
        let w = if i % 2 == 0 {
            let terms = rng.gen_range(1..=2);
            random_product(&mut rng, &z2, terms, 1).0
        } else {
            random_word_up_to(&mut rng, 2, budget.max_word_length)
        };
        if w.len() > budget.max_word_length {
            continue;
        }
        let nf = s.system.normal_form(w.letters(), budget.max_rewrite_steps).map_err(|e| e.to_string())?;
        let trivial = w.exponent_sums(2).iter().all(|&e| e == 0);
        check!(nf.is_empty() == trivial, "sample {i}: rewriting disagrees with exponent sums");
        let y = yes.query(&w, &mut BudgetReport::default()).map_err(|e| e.to_string())?;
        check!(matches!(y, YesPartAnswer::Trivial(_)) == nf.is_empty(), "sample {i}: yes-part disagrees with rewriting");
        agreements += 1;
    }
    check!(agreements == 100, "only {agreements} samples within the word-length bound");
    Ok(format!("{found}/{sampled} relator products certified and replayed, KB checks, {agreements} Z^2 agreements"))
}
