mod support;

use freeiso::decision::{decide_free, embeds_in_free, Certificate, EmbedOutcome, Obstruction, Outcome};
use freeiso::verify::{verify_embedding, verify_outcome, Verdict};
use freeiso::word_problem::Oracle;
use freeiso::{Budget, Presentation, Word};
use rand::Rng;

fn pres(m: usize, rels: Vec<Word>) -> Presentation {
    let names = ["a", "b", "c", "d"][..m].iter().map(|s| s.to_string()).collect();
    Presentation::new(names, rels).unwrap()
}

fn g(i: usize) -> Word {
    Word::generator(i)
}

fn decide(p: &Presentation, n: usize) -> Outcome {
    let budget = Budget::default();
    decide_free(&Oracle::standard(p, &budget), n, &budget).outcome
}

#[test]
fn corpus_outcomes_verify() {
    let cases = [
        (pres(1, vec![]), 1, Verdict::Isomorphic),
        (pres(2, vec![]), 2, Verdict::Isomorphic),
        (pres(3, vec![g(2).inverse().concat(&g(0)).concat(&g(1))]), 2, Verdict::Isomorphic),
        (pres(1, vec![g(0).pow(2)]), 1, Verdict::NotIsomorphic),
        (pres(2, vec![Word::commutator(&g(0), &g(1))]), 2, Verdict::NotIsomorphic),
        (pres(2, vec![Word::commutator(&g(0), &g(1))]), 1, Verdict::NotIsomorphic),
        (pres(2, vec![g(0).pow(2).concat(&g(1).pow(-3))]), 2, Verdict::NotIsomorphic),
        (pres(2, vec![g(1)]), 1, Verdict::Isomorphic),
        (pres(1, vec![g(0).pow(3)]), 0, Verdict::NotIsomorphic),
        (pres(1, vec![g(0)]), 0, Verdict::Isomorphic),
    ];
    for (p, n, expected) in cases {
        let o = decide(&p, n);
        assert_eq!(verify_outcome(&p, &Presentation::free(n), &o), Ok(expected), "{p:?} n={n}: {o:?}");
    }
}

#[test]
fn trefoil_is_never_cyclic() {
    let p = pres(2, vec![g(0).pow(2).concat(&g(1).pow(-3))]);
    for factor in [1, 2] {
        let budget = Budget::default().scaled(factor);
        let o = decide_free(&Oracle::standard(&p, &budget), 1, &budget).outcome;
        assert_ne!(o.kind(), "Isomorphic");
        if o.is_definitive() {
            verify_outcome(&p, &Presentation::free(1), &o).unwrap();
        }
    }
}

#[test]
fn torsion_never_free() {
    let mut rng = support::rng("decision");
    for _ in 0..20 {
        let k = rng.gen_range(2..=5);
        let p = pres(2, vec![g(0).pow(k)]);
        let o = decide(&p, 2);
        assert!(matches!(
            o,
            Outcome::NotIsomorphic(Certificate::Obstruction(Obstruction::AbelianizationMismatch { .. }))
        ));
        assert_eq!(verify_outcome(&p, &Presentation::free(2), &o), Ok(Verdict::NotIsomorphic));
    }
}

/// `<a, b, c | c^-1 u>` with `u` a word in `a, b` is free on `a, b`.
#[test]
fn redundant_generator_is_eliminated() {
    let mut rng = support::rng("decision");
    for case in 0..12 {
        let len = rng.gen_range(1..=2);
        let u = support::random_reduced(&mut rng, 2, len);
        let p = pres(3, vec![g(2).inverse().concat(&u)]);
        let o = decide(&p, 2);
        assert_eq!(o.kind(), "Isomorphic", "case {case}: {u:?}");
        assert_eq!(verify_outcome(&p, &Presentation::free(2), &o), Ok(Verdict::Isomorphic));
        if let Outcome::Isomorphic { phi, inverse, .. } = &o {
            let back: Vec<Word> = phi.images.iter().map(|w| w.substitute(&inverse.psi_images).unwrap()).collect();
            assert_eq!(back[0], g(0));
            assert_eq!(back[1], g(1));
        }
    }
}

#[test]
fn embeddings_verify() {
    let budget = Budget::default();
    let z2 = pres(2, vec![Word::commutator(&g(0), &g(1))]);
    let e = embeds_in_free(&Oracle::standard(&z2, &budget), 2, &budget).unwrap();
    assert_eq!(verify_embedding(&z2, 2, &e.outcome), Ok(Verdict::NotEmbeddable));
    let mut dropped = e.outcome.clone();
    if let EmbedOutcome::NotEmbeddable { certificates } = &mut dropped {
        certificates.remove(1);
    }
    assert!(verify_embedding(&z2, 2, &dropped).is_err());

    let cab = pres(3, vec![g(2).inverse().concat(&g(0)).concat(&g(1))]);
    let e = embeds_in_free(&Oracle::standard(&cab, &budget), 2, &budget).unwrap();
    assert_eq!(verify_embedding(&cab, 2, &e.outcome), Ok(Verdict::Embeds));
}
