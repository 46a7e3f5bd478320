//! Standalone certificate checking.
//!
//! Nothing here searches. Every claim in a certificate is replayed with free
//! reduction, substitution, exponent sums and (for rewriting-system
//! witnesses) a naive rewriting engine written separately from the one that
//! produced the system.

use std::cmp::Ordering;

use thiserror::Error;

use crate::decision::{
    Certificate, EmbedOutcome, ImageTrivialityProof, InverseWitness, KernelWitness, Obstruction, Outcome,
};
use crate::hom_search::GroupHom;
use crate::presentation::Presentation;
use crate::word_problem::knuth_bendix::system_digest;
use crate::word_problem::{CertifiedSystem, ConjugateProduct, NontrivialityWitness};
use crate::words::{Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("verification failed: {0}")]
pub struct VerifyError(pub String);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
    Inconclusive,
    Embeds,
    NotEmbeddable,
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), VerifyError> {
    if cond {
        Ok(())
    } else {
        Err(VerifyError(what()))
    }
}

fn over(w: &Word, rank: usize, what: &str) -> Result<(), VerifyError> {
    ensure(w.check_rank(rank).is_ok(), || format!("{what} uses letters outside rank {rank}"))
}

fn check_product(relators: &[Word], proof: &ConjugateProduct, w: &Word, what: &str) -> Result<(), VerifyError> {
    ensure(proof.proves(relators, w), || format!("{what}: product of conjugates does not reduce to the claimed word"))
}

fn check_trivial_in(h: &Presentation, w: &Word, proof: &ImageTrivialityProof, what: &str) -> Result<(), VerifyError> {
    match proof {
        ImageTrivialityProof::FreeReduction(x) => {
            ensure(h.is_free(), || format!("{what}: free reduction offered for a presented group"))?;
            ensure(x == w && x.is_identity(), || format!("{what}: word does not freely reduce to the identity"))
        }
        ImageTrivialityProof::Presented(c) => check_product(h.relators(), c, w, what),
    }
}

fn check_hom(g: &Presentation, h: &Presentation, phi: &GroupHom, proofs: &[ImageTrivialityProof]) -> Result<(), VerifyError> {
    let (m, n) = (g.num_generators(), h.num_generators());
    ensure(phi.images.len() == m, || format!("phi has {} images for {m} generators", phi.images.len()))?;
    ensure(phi.codomain_rank == n, || format!("phi targets rank {}, expected {n}", phi.codomain_rank))?;
    for (i, img) in phi.images.iter().enumerate() {
        over(img, n, &format!("phi image {i}"))?;
    }
    ensure(proofs.len() == g.relators().len(), || "one relator proof per relator of G required".into())?;
    for (j, (r, p)) in g.relators().iter().zip(proofs).enumerate() {
        let img = r.substitute(&phi.images).expect("checked rank");
        check_trivial_in(h, &img, p, &format!("phi(relator {j})"))?;
    }
    Ok(())
}

fn check_inverse(g: &Presentation, h: &Presentation, phi: &GroupHom, inv: &InverseWitness) -> Result<(), VerifyError> {
    let (m, n) = (g.num_generators(), h.num_generators());
    ensure(inv.psi_images.len() == n, || format!("psi has {} images for {n} generators", inv.psi_images.len()))?;
    for (j, y) in inv.psi_images.iter().enumerate() {
        over(y, m, &format!("psi image {j}"))?;
    }
    ensure(inv.relator_proofs.len() == h.relators().len(), || "one proof per relator of H required".into())?;
    for (j, (s, p)) in h.relators().iter().zip(&inv.relator_proofs).enumerate() {
        let w = s.substitute(&inv.psi_images).expect("checked rank");
        check_product(g.relators(), p, &w, &format!("psi(relator {j} of H)"))?;
    }
    ensure(inv.roundtrip_proofs.len() == m, || "one roundtrip proof per generator of G required".into())?;
    for (i, p) in inv.roundtrip_proofs.iter().enumerate() {
        let w = phi.images[i].substitute(&inv.psi_images).expect("checked rank").concat(&Word::generator(i).inverse());
        check_product(g.relators(), p, &w, &format!("psi(phi(g_{i})) g_{i}^-1"))?;
    }
    ensure(inv.surjection_proofs.len() == n, || "one surjection proof per generator of H required".into())?;
    for (j, p) in inv.surjection_proofs.iter().enumerate() {
        let w = inv.psi_images[j].substitute(&phi.images).expect("checked rank").concat(&Word::generator(j).inverse());
        check_trivial_in(h, &w, p, &format!("phi(psi(h_{j})) h_{j}^-1"))?;
    }
    Ok(())
}

fn check_kernel_witness(g: &Presentation, h: &Presentation, phi: &GroupHom, k: &KernelWitness) -> Result<(), VerifyError> {
    over(&k.word, g.num_generators(), "kernel word")?;
    check_nontrivial(g, &k.word, &k.nontrivial)?;
    let img = k.word.substitute(&phi.images).expect("checked rank");
    check_trivial_in(h, &img, &k.trivial_image, "phi(kernel word)")
}

/// Checks a nontriviality witness for `w` in `g`.
pub fn check_nontrivial(g: &Presentation, w: &Word, wit: &NontrivialityWitness) -> Result<(), VerifyError> {
    match wit {
        NontrivialityWitness::AbelianImage(img) => {
            ensure(img.image.len() == g.num_generators(), || "abelian image has the wrong length".into())?;
            ensure(img.check(g.relators(), w), || "abelian image does not separate the word from the relators".into())
        }
        NontrivialityWitness::NormalFormNonEmpty { system, normal_form } => {
            check_certified_system(g, system)?;
            let nf = naive_normal_form(system, w.letters())?;
            ensure(!nf.is_empty(), || "normal form is empty".into())?;
            ensure(nf == normal_form.letters(), || "normal form differs from the claimed one".into())
        }
    }
}

const NAIVE_STEPS: usize = 1_000_000;

fn shortlex(order: &[Letter], a: &[Letter], b: &[Letter]) -> Ordering {
    let pos = |l: &Letter| order.iter().position(|x| x == l).unwrap_or(usize::MAX);
    a.len().cmp(&b.len()).then_with(|| a.iter().map(pos).cmp(b.iter().map(pos)))
}

/// Leftmost rewriting by rescanning from the start after every step.
fn naive_normal_form(s: &CertifiedSystem, w: &[Letter]) -> Result<Vec<Letter>, VerifyError> {
    let rules = s.system.rules();
    let mut cur = w.to_vec();
    for _ in 0..NAIVE_STEPS {
        let hit = (0..cur.len()).find_map(|i| {
            rules.iter().find(|r| cur[i..].starts_with(&r.lhs)).map(|r| (i, r))
        });
        match hit {
            None => return Ok(cur),
            Some((i, r)) => {
                let mut next = cur[..i].to_vec();
                next.extend_from_slice(&r.rhs);
                next.extend_from_slice(&cur[i + r.lhs.len()..]);
                cur = next;
            }
        }
    }
    Err(VerifyError("rewriting did not terminate within the step limit".into()))
}

/// Checks a certified rewriting system against `g`: digest, orientation,
/// rule proofs, relators and cancellations rewritten to 1, and confluence.
pub fn check_certified_system(g: &Presentation, s: &CertifiedSystem) -> Result<(), VerifyError> {
    let m = g.num_generators();
    let sys = &s.system;
    ensure(s.id == system_digest(sys, &s.proofs), || "system digest mismatch".into())?;
    ensure(sys.rank() == m, || "system rank differs from the presentation".into())?;
    let order = sys.order();
    let mut keys: Vec<usize> = order.iter().map(|l| l.key()).collect();
    keys.sort_unstable();
    ensure(keys == (0..2 * m).collect::<Vec<_>>(), || "letter order is not a permutation".into())?;
    let rules = sys.rules();
    ensure(s.proofs.len() == rules.len(), || "one proof per rule required".into())?;
    for (i, (r, p)) in rules.iter().zip(&s.proofs).enumerate() {
        ensure(!r.lhs.is_empty(), || format!("rule {i} has an empty left side"))?;
        ensure(shortlex(order, &r.lhs, &r.rhs) == Ordering::Greater, || format!("rule {i} is not decreasing"))?;
        let w = Word::reduce(r.lhs.iter().copied()).concat(&Word::reduce(r.rhs.iter().copied()).inverse());
        check_product(g.relators(), p, &w, &format!("rule {i}"))?;
    }
    for (j, r) in g.relators().iter().enumerate() {
        ensure(naive_normal_form(s, r.letters())?.is_empty(), || format!("relator {j} is not rewritten to 1"))?;
    }
    for k in 0..2 * m {
        let l = Letter::from_key(k);
        ensure(naive_normal_form(s, &[l, l.inverted()])?.is_empty(), || "missing free cancellation".into())?;
    }
    for (i, ri) in rules.iter().enumerate() {
        for (j, rj) in rules.iter().enumerate() {
            let (a, b) = (&ri.lhs, &rj.lhs);
            for k in 1..a.len().min(b.len()) {
                if a[a.len() - k..] == b[..k] {
                    let left = [&ri.rhs[..], &b[k..]].concat();
                    let right = [&a[..a.len() - k], &rj.rhs[..]].concat();
                    ensure(naive_normal_form(s, &left)? == naive_normal_form(s, &right)?, || {
                        format!("overlap of rules {i} and {j} does not resolve")
                    })?;
                }
            }
            if i != j && b.len() <= a.len() {
                for p in 0..=a.len() - b.len() {
                    if a[p..p + b.len()] == b[..] {
                        let right = [&a[..p], &rj.rhs[..], &a[p + b.len()..]].concat();
                        ensure(naive_normal_form(s, &ri.rhs)? == naive_normal_form(s, &right)?, || {
                            format!("rule {j} inside rule {i} does not resolve")
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_certificate(g: &Presentation, h: &Presentation, c: &Certificate) -> Result<(), VerifyError> {
    let (m, n) = (g.num_generators(), h.num_generators());
    match c {
        Certificate::Kernel { phi, phi_proofs, surjection, hopfian_asserted, witness } => {
            check_hom(g, h, phi, phi_proofs)?;
            ensure(h.is_free() || *hopfian_asserted, || "kernel certificate needs a Hopfian group".into())?;
            ensure(surjection.len() == n, || "one preimage per generator of H required".into())?;
            for (j, s) in surjection.iter().enumerate() {
                over(&s.preimage, m, &format!("preimage {j}"))?;
                let w = s.preimage.substitute(&phi.images).expect("checked rank").concat(&Word::generator(j).inverse());
                check_trivial_in(h, &w, &s.proof, &format!("phi(preimage {j}) h_{j}^-1"))?;
            }
            check_kernel_witness(g, h, phi, witness)
        }
        Certificate::Obstruction(o) => {
            ensure(h.is_free(), || "obstructions apply to free targets only".into())?;
            match o {
                Obstruction::RankTooLarge { generators, target_rank } => {
                    ensure(*generators == m && *target_rank == n && n > m, || "rank obstruction does not hold".into())
                }
                Obstruction::AbelianizationMismatch { found, target_rank } => {
                    ensure(*target_rank == n, || "target rank mismatch".into())?;
                    ensure(g.abelian_invariants() == *found, || "recorded invariants are wrong".into())?;
                    ensure(!found.is_free_abelian_of_rank(n), || "abelianization matches the target".into())
                }
                Obstruction::AbelianShortcut { target_rank, commutators } => {
                    ensure(*target_rank == n && n >= 2, || "abelian shortcut needs a target of rank >= 2".into())?;
                    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
                    ensure(commutators.len() == pairs.len(), || "every pair of generators must be covered".into())?;
                    for (c, &(i, j)) in commutators.iter().zip(&pairs) {
                        ensure((c.i, c.j) == (i, j), || "commutator pairs out of order".into())?;
                        let w = Word::commutator(&Word::generator(i), &Word::generator(j));
                        check_product(g.relators(), &c.proof, &w, &format!("[g_{i}, g_{j}]"))?;
                    }
                    Ok(())
                }
            }
        }
    }
}

/// Checks an outcome of deciding `G ~= H`.
pub fn verify_outcome(g: &Presentation, h: &Presentation, outcome: &Outcome) -> Result<Verdict, VerifyError> {
    match outcome {
        Outcome::Isomorphic { phi, phi_proofs, inverse } => {
            check_hom(g, h, phi, phi_proofs)?;
            check_inverse(g, h, phi, inverse)?;
            Ok(Verdict::Isomorphic)
        }
        Outcome::NotIsomorphic(c) => {
            check_certificate(g, h, c)?;
            Ok(Verdict::NotIsomorphic)
        }
        Outcome::Inconclusive(_) => Ok(Verdict::Inconclusive),
    }
}

/// Checks an outcome of deciding whether `G` embeds in `F_n`.
pub fn verify_embedding(g: &Presentation, n: usize, e: &EmbedOutcome) -> Result<Verdict, VerifyError> {
    let max_rank = if n >= 2 { g.num_generators() } else { n };
    match e {
        EmbedOutcome::Embeds { rank, outcome } => {
            ensure(*rank <= max_rank, || format!("F_{rank} is not a subgroup of F_{n}"))?;
            match verify_outcome(g, &Presentation::free(*rank), outcome)? {
                Verdict::Isomorphic => Ok(Verdict::Embeds),
                _ => Err(VerifyError("embedding needs an isomorphism certificate".into())),
            }
        }
        EmbedOutcome::NotEmbeddable { certificates } => {
            let ranks: Vec<usize> = certificates.iter().map(|c| c.0).collect();
            ensure(ranks == (0..=max_rank).collect::<Vec<_>>(), || "every rank 0..=max must be refuted".into())?;
            for (r, c) in certificates {
                check_certificate(g, &Presentation::free(*r), c)?;
            }
            Ok(Verdict::NotEmbeddable)
        }
        EmbedOutcome::Inconclusive { .. } => Ok(Verdict::Inconclusive),
    }
}
