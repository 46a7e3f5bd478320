//! Isomorphism and embedding decisions against free groups.

pub mod algorithms;
pub mod certificate;
pub mod pipeline;
pub mod scheduler;

pub use algorithms::{decide_iso_with_epi, AlgorithmA, AlgorithmB, Codomain};
pub use certificate::{
    Certificate, CommutatorProof, Decision, EmbedDecision, EmbedOutcome, ImageTrivialityProof, InconclusiveReason,
    InverseWitness, KernelWitness, Obstruction, Outcome, SurjectionProof,
};
pub use pipeline::{decide_free, decide_trivial, embeds_in_f1, embeds_in_free, trivial_hom, EmbedRankError};
pub use scheduler::{run_interleaved, Interleaved, SemiDecider, Step};
