//! Deciding `G ~= F_n` and `G embeds in F_n`.

use super::algorithms::decide_iso_with_epi;
use super::certificate::{
    Certificate, CommutatorProof, Decision, EmbedDecision, EmbedOutcome, ImageTrivialityProof, InconclusiveReason,
    InverseWitness, KernelWitness, Obstruction, Outcome,
};
use crate::budget::{Budget, BudgetReport};
use crate::hom_search::{onto_abstract_free, restrict_to_rank_n, search_epi_onto_rank, EpiSearch, GroupHom};
use crate::presentation::{Presentation, RankFilter};
use crate::word_problem::{Oracle, OracleAnswer};
use crate::words::Word;

/// Decides whether `G` (the oracle's presentation) is isomorphic to the
/// free group of rank `n`. The first definitive step wins:
///
/// 1. more target generators than generators of `G`;
/// 2. abelianization not `Z^n`;
/// 3. `G` provably abelian while `n >= 2`;
/// 4. search for an epimorphism onto a free group of rank `>= n`;
/// 5. restrict it to rank exactly `n` and run the kernel / inverse searches.
pub fn decide_free(oracle: &Oracle, n: usize, budget: &Budget) -> Decision {
    let g = oracle.presentation();
    let m = g.num_generators();
    if n == 0 {
        return decide_trivial(oracle);
    }
    if n > m {
        return not_iso(Obstruction::RankTooLarge { generators: m, target_rank: n }, BudgetReport::default());
    }
    if let RankFilter::Fail(mismatch) = g.free_rank_filter(n) {
        return not_iso(
            Obstruction::AbelianizationMismatch { found: mismatch.found, target_rank: n },
            BudgetReport::default(),
        );
    }
    let mut report = BudgetReport::default();
    if let Some(commutators) = commutator_proofs(oracle, &mut report) {
        if n >= 2 {
            return not_iso(Obstruction::AbelianShortcut { target_rank: n, commutators }, report);
        }
    }
    let witness = match search_epi_onto_rank(g, n, budget) {
        EpiSearch::Found(w, r) => {
            report.absorb(&r);
            w
        }
        EpiSearch::Exhausted { report: r, exhaustive } => {
            report.absorb(&r);
            return Decision { outcome: Outcome::Inconclusive(InconclusiveReason::NoEpimorphismFound { exhaustive }), report };
        }
    };
    let restricted = restrict_to_rank_n(g, &witness, n).expect("witness has image rank >= n");
    let (phi, _) = onto_abstract_free(&restricted);
    let d = decide_iso_with_epi(oracle, &Presentation::free(n), &phi, None, true, budget);
    report.absorb(&d.report);
    Decision { outcome: d.outcome, report }
}

fn not_iso(o: Obstruction, report: BudgetReport) -> Decision {
    Decision { outcome: Outcome::NotIsomorphic(Certificate::Obstruction(o)), report }
}

/// Proofs that every pair of generators commutes, if the oracle finds them.
fn commutator_proofs(oracle: &Oracle, report: &mut BudgetReport) -> Option<Vec<CommutatorProof>> {
    let m = oracle.presentation().num_generators();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let c = Word::commutator(&Word::generator(i), &Word::generator(j));
            match oracle.query(&c, report) {
                OracleAnswer::Trivial(proof) => out.push(CommutatorProof { i, j, proof }),
                _ => return None,
            }
        }
    }
    Some(out)
}

/// `G ~= F_0`: every generator trivial (isomorphism with the trivial group)
/// or some generator certified nontrivial (kernel of the map to `{1}`).
pub fn decide_trivial(oracle: &Oracle) -> Decision {
    let m = oracle.presentation().num_generators();
    let phi = trivial_hom(oracle.presentation());
    let phi_proofs = vec![ImageTrivialityProof::FreeReduction(Word::identity()); oracle.presentation().relators().len()];
    let mut report = BudgetReport::default();
    let mut roundtrip_proofs = Vec::with_capacity(m);
    let mut unknown = false;
    for i in 0..m {
        let g = Word::generator(i);
        match oracle.query(&g, &mut report) {
            OracleAnswer::Nontrivial(nontrivial) => {
                let witness = KernelWitness {
                    word: g,
                    nontrivial,
                    trivial_image: ImageTrivialityProof::FreeReduction(Word::identity()),
                };
                let cert = Certificate::Kernel { phi, phi_proofs, surjection: vec![], hopfian_asserted: true, witness };
                return Decision { outcome: Outcome::NotIsomorphic(cert), report };
            }
            OracleAnswer::Trivial(c) => roundtrip_proofs.push(c.inverse()),
            OracleAnswer::Unknown(_) => unknown = true,
        }
    }
    if unknown {
        return Decision { outcome: Outcome::Inconclusive(InconclusiveReason::TrivialityUnknown), report };
    }
    let inverse =
        InverseWitness { psi_images: vec![], relator_proofs: vec![], roundtrip_proofs, surjection_proofs: vec![] };
    Decision { outcome: Outcome::Isomorphic { phi, phi_proofs, inverse }, report }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("embedding targets must have rank at least 2, got {0}")]
pub struct EmbedRankError(pub usize);

/// `G` embeds in `F_n` (`n >= 2`) iff `G ~= F_r` for some `0 <= r <= m`,
/// since subgroups of free groups are free and `F_n` contains every `F_r`.
/// Ranks are tried in increasing order; the first isomorphism ends the run.
pub fn embeds_in_free(oracle: &Oracle, n: usize, budget: &Budget) -> Result<EmbedDecision, EmbedRankError> {
    if n < 2 {
        return Err(EmbedRankError(n));
    }
    Ok(embed_over_ranks(oracle, oracle.presentation().num_generators(), budget))
}

/// `G` embeds in `F_1 = Z` iff `G` is trivial or infinite cyclic.
pub fn embeds_in_f1(oracle: &Oracle, budget: &Budget) -> EmbedDecision {
    embed_over_ranks(oracle, 1, budget)
}

fn embed_over_ranks(oracle: &Oracle, max_rank: usize, budget: &Budget) -> EmbedDecision {
    let mut report = BudgetReport::default();
    let mut certificates = Vec::new();
    let mut per_rank = Vec::new();
    for r in 0..=max_rank {
        let d = decide_free(oracle, r, budget);
        report.absorb(&d.report);
        match d.outcome {
            Outcome::Isomorphic { .. } => {
                return EmbedDecision { outcome: EmbedOutcome::Embeds { rank: r, outcome: d.outcome }, report };
            }
            Outcome::NotIsomorphic(c) => {
                per_rank.push((r, Outcome::NotIsomorphic(c.clone())));
                certificates.push((r, c));
            }
            other => per_rank.push((r, other)),
        }
    }
    if certificates.len() == per_rank.len() {
        EmbedDecision { outcome: EmbedOutcome::NotEmbeddable { certificates }, report }
    } else {
        EmbedDecision { outcome: EmbedOutcome::Inconclusive { per_rank }, report }
    }
}

/// The homomorphism `G -> F_0` used by [`decide_trivial`].
pub fn trivial_hom(g: &Presentation) -> GroupHom {
    GroupHom { codomain_rank: 0, images: vec![Word::identity(); g.num_generators()], verified: true }
}
