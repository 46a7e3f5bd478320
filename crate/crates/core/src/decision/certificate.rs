//! Outcomes and the certificates backing them.

use serde::{Deserialize, Serialize};

use crate::budget::BudgetReport;
use crate::hom_search::GroupHom;
use crate::presentation::AbelianInvariants;
use crate::word_problem::{ConjugateProduct, NontrivialityWitness};
use crate::words::Word;

/// Evidence that a word of `H` is trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ImageTrivialityProof {
    /// `H` is free: the word itself, which must be empty.
    FreeReduction(Word),
    /// `H` has relators: a product of conjugates of them.
    Presented(ConjugateProduct),
}

/// `word` is nontrivial in `G` but `phi(word)` is trivial in `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelWitness {
    pub word: Word,
    pub nontrivial: NontrivialityWitness,
    pub trivial_image: ImageTrivialityProof,
}

/// `phi(preimage) * h^-1` is trivial in `H`, for one generator `h` of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurjectionProof {
    pub preimage: Word,
    pub proof: ImageTrivialityProof,
}

/// A map `psi: H -> G` on generators together with proofs that it is a
/// homomorphism and that `phi` and `psi` are mutually inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseWitness {
    pub psi_images: Vec<Word>,
    /// `psi(s_j)` trivial in `G`, per relator `s_j` of `H`.
    pub relator_proofs: Vec<ConjugateProduct>,
    /// `psi(phi(g_i)) * g_i^-1` trivial in `G`, per generator of `G`.
    pub roundtrip_proofs: Vec<ConjugateProduct>,
    /// `phi(psi(h_j)) * h_j^-1` trivial in `H`, per generator of `H`.
    pub surjection_proofs: Vec<ImageTrivialityProof>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorProof {
    pub i: usize,
    pub j: usize,
    /// Certifies `[g_i, g_j]` trivial in `G`.
    pub proof: ConjugateProduct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Obstruction {
    /// `G` has fewer generators than the target free rank.
    RankTooLarge { generators: usize, target_rank: usize },
    /// The abelianization of `G` is not free abelian of the target rank.
    AbelianizationMismatch { found: AbelianInvariants, target_rank: usize },
    /// Every pair of generators commutes, so `G` is abelian, and the target
    /// free group is not.
    AbelianShortcut { target_rank: usize, commutators: Vec<CommutatorProof> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    /// `phi` is an epimorphism with a nontrivial kernel element; with a
    /// Hopfian group on either side this rules out isomorphism.
    Kernel {
        phi: GroupHom,
        phi_proofs: Vec<ImageTrivialityProof>,
        surjection: Vec<SurjectionProof>,
        hopfian_asserted: bool,
        witness: KernelWitness,
    },
    Obstruction(Obstruction),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InconclusiveReason {
    /// No epimorphism onto a free group of the target rank within budget.
    /// `exhaustive` records that every candidate within the length bound was
    /// tried, which still proves nothing about longer candidates.
    NoEpimorphismFound { exhaustive: bool },
    /// Neither a kernel element nor an inverse map was found.
    BothExhausted,
    /// A kernel element was found but no Hopfian hypothesis was asserted.
    KernelWithoutHopfian(Box<KernelWitness>),
    /// Some generator could neither be proved trivial nor nontrivial.
    TrivialityUnknown,
    /// A preimage of some target generator could not be produced.
    SurjectivityUnproven,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Isomorphic {
        phi: GroupHom,
        /// `phi(r_j)` trivial in `H`, per relator of `G`.
        phi_proofs: Vec<ImageTrivialityProof>,
        inverse: InverseWitness,
    },
    NotIsomorphic(Certificate),
    Inconclusive(InconclusiveReason),
}

impl Outcome {
    pub fn is_definitive(&self) -> bool {
        !matches!(self, Outcome::Inconclusive(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Outcome::Isomorphic { .. } => "Isomorphic",
            Outcome::NotIsomorphic(_) => "NotIsomorphic",
            Outcome::Inconclusive(_) => "Inconclusive",
        }
    }
}

/// An outcome together with the work spent reaching it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub outcome: Outcome,
    pub report: BudgetReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmbedOutcome {
    /// `G` is isomorphic to `F_rank`, which embeds in every `F_n`, `n >= 2`.
    Embeds { rank: usize, outcome: Outcome },
    /// For every `r` in `0..=m`, a certificate that `G` is not `F_r`.
    NotEmbeddable { certificates: Vec<(usize, Certificate)> },
    /// Some rank was left undecided.
    Inconclusive { per_rank: Vec<(usize, Outcome)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedDecision {
    pub outcome: EmbedOutcome,
    pub report: BudgetReport,
}

impl Certificate {
    /// Every word the certificate carries, for auditing and mutation tests.
    pub fn words_mut(&mut self) -> Vec<&mut Word> {
        let mut out = Vec::new();
        match self {
            Certificate::Kernel { phi, phi_proofs, surjection, witness, .. } => {
                out.extend(phi.images.iter_mut());
                out.extend(phi_proofs.iter_mut().flat_map(ImageTrivialityProof::words_mut));
                for s in surjection {
                    out.push(&mut s.preimage);
                    out.extend(s.proof.words_mut());
                }
                out.push(&mut witness.word);
                out.extend(witness.trivial_image.words_mut());
                if let NontrivialityWitness::NormalFormNonEmpty { normal_form, .. } = &mut witness.nontrivial {
                    out.push(normal_form);
                }
            }
            Certificate::Obstruction(Obstruction::AbelianShortcut { commutators, .. }) => {
                for c in commutators {
                    out.extend(product_words(&mut c.proof));
                }
            }
            Certificate::Obstruction(_) => {}
        }
        out
    }
}

impl ImageTrivialityProof {
    fn words_mut(&mut self) -> Vec<&mut Word> {
        match self {
            ImageTrivialityProof::FreeReduction(w) => vec![w],
            ImageTrivialityProof::Presented(c) => product_words(c),
        }
    }
}

fn product_words(c: &mut ConjugateProduct) -> Vec<&mut Word> {
    c.terms.iter_mut().map(|t| &mut t.conjugator).collect()
}

impl Outcome {
    /// Every word the outcome's certificates carry.
    pub fn words_mut(&mut self) -> Vec<&mut Word> {
        match self {
            Outcome::Isomorphic { phi, phi_proofs, inverse } => {
                let mut out: Vec<&mut Word> = phi.images.iter_mut().collect();
                out.extend(phi_proofs.iter_mut().flat_map(ImageTrivialityProof::words_mut));
                out.extend(inverse.psi_images.iter_mut());
                for c in inverse.relator_proofs.iter_mut().chain(inverse.roundtrip_proofs.iter_mut()) {
                    out.extend(product_words(c));
                }
                out.extend(inverse.surjection_proofs.iter_mut().flat_map(ImageTrivialityProof::words_mut));
                out
            }
            Outcome::NotIsomorphic(c) => c.words_mut(),
            Outcome::Inconclusive(_) => Vec::new(),
        }
    }
}
