//! Certificate-producing procedures for deciding whether a finitely presented
//! group is isomorphic to, or embeds in, a free group of given rank.
//!
//! Every definitive answer carries a certificate that [`verify`] replays
//! using only word arithmetic, exponent-sum lattices and rewriting, never the
//! search code that produced it. Bounded searches that run out of budget
//! report `Inconclusive` rather than guessing.

pub mod budget;
pub mod decision;
pub mod hom_search;
pub mod matrix;
pub mod presentation;
pub mod stallings;
pub mod verify;
pub mod word_problem;
pub mod words;

pub use budget::{Budget, BudgetReport};
pub use matrix::{smith_normal_form, IntegerMatrix, IntegerScalar, SmithForm};
pub use presentation::{AbelianInvariants, Presentation, RankFilter};
pub use stallings::{build_graph, FoldedGraph};
pub use words::{GeneratorId, Letter, Word};

/// Arbitrary-precision integer matrix used by every abelianization computation.
pub type IntMatrix = IntegerMatrix<num_bigint::BigInt>;
/// Fixed-width matrix for callers that can bound their entries.
pub type SmallIntMatrix = IntegerMatrix<i64>;
