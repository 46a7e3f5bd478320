//! Triviality of words in finitely presented groups.
//!
//! Three backends, each certificate-producing: a bounded search for products
//! of conjugates of relators (proves triviality), the abelianization (proves
//! nontriviality), and confluent rewriting systems, either completed here or
//! supplied by the user and checked (decide both).

pub mod abelian;
pub mod certificate;
pub mod knuth_bendix;
pub mod oracle;
pub mod rewriting;
pub mod yes_part;

use thiserror::Error;

use crate::words::WordError;

pub use abelian::{abelian_no_part, AbelianImage};
pub use certificate::{ConjugateProduct, Term};
pub use knuth_bendix::{certify_supplied, knuth_bendix, CertifiedSystem, Completion, CompletionStop, SupplyRejection};
pub use oracle::{
    compose_oracle, enumerate_nontrivial, Backend, Enumerated, NontrivialEnumerator, NontrivialityWitness, Oracle,
    OracleAnswer,
};
pub use rewriting::{Confluence, CriticalPair, RewritingError, RewritingSystem, Rule};
pub use yes_part::{yes_part, YesPart, YesPartAnswer};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordProblemError {
    #[error("word of length {length} exceeds the limit of {max}")]
    TooLong { length: usize, max: usize },
    #[error(transparent)]
    Word(#[from] WordError),
}
