//! Homomorphisms from finitely presented groups to free groups.
//!
//! A map on generators extends to a homomorphism `G -> F_n` exactly when
//! every relator is sent to the identity, so finding one means solving a
//! system of equations in `F_n`. Here the system is solved by bounded
//! enumeration of candidate image tuples.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, BudgetReport};
use crate::presentation::Presentation;
use crate::stallings::{build_graph, FoldedGraph};
use crate::words::{enumerate_tuples, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("expected {expected} images, got {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("image {index}: {source}")]
    ImageRank { index: usize, source: WordError },
    #[error("relator {0} is not sent to the identity")]
    NotAHomomorphism(usize),
    #[error("image rank {found} is below the requested rank {requested}")]
    RankTooSmall { requested: usize, found: usize },
}

/// Generator images of a map `G -> F_codomain_rank`. The domain
/// presentation is kept by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupHom {
    pub codomain_rank: usize,
    pub images: Vec<Word>,
    pub verified: bool,
}

fn check_images(p: &Presentation, n: usize, images: &[Word]) -> Result<(), HomError> {
    if images.len() != p.num_generators() {
        return Err(HomError::ImageCount { expected: p.num_generators(), found: images.len() });
    }
    for (index, w) in images.iter().enumerate() {
        w.check_rank(n).map_err(|source| HomError::ImageRank { index, source })?;
    }
    Ok(())
}

fn first_failing_relator(p: &Presentation, images: &[Word]) -> Option<usize> {
    p.relators()
        .iter()
        .position(|r| !r.substitute(images).expect("image count checked").is_identity())
}

/// Whether every relator of `p` maps to the identity under `images`.
pub fn is_homomorphism_to_free(p: &Presentation, n: usize, images: &[Word]) -> Result<bool, HomError> {
    check_images(p, n, images)?;
    Ok(first_failing_relator(p, images).is_none())
}

impl GroupHom {
    /// Checks the relator equations and returns a verified homomorphism.
    pub fn new(p: &Presentation, codomain_rank: usize, images: Vec<Word>) -> Result<Self, HomError> {
        check_images(p, codomain_rank, &images)?;
        if let Some(j) = first_failing_relator(p, &images) {
            return Err(HomError::NotAHomomorphism(j));
        }
        Ok(GroupHom { codomain_rank, images, verified: true })
    }

    /// Image of a word in the domain's generators.
    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images).expect("word over the domain alphabet")
    }

    pub fn image_graph(&self) -> FoldedGraph {
        build_graph(self.codomain_rank, &self.images)
    }
}

/// A homomorphism whose image is a free subgroup of rank at least the
/// requested one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpiWitness {
    pub hom: GroupHom,
    pub image_graph: FoldedGraph,
    pub image_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EpiSearch {
    Found(EpiWitness, BudgetReport),
    /// `exhaustive` means every tuple within the length bound was tried.
    /// Even then, longer solutions may exist.
    Exhausted { report: BudgetReport, exhaustive: bool },
}

const CHUNK: usize = 4096;

fn qualifies(p: &Presentation, n: usize, tuple: &[Word]) -> Option<FoldedGraph> {
    if first_failing_relator(p, tuple).is_some() {
        return None;
    }
    let g = build_graph(n, tuple);
    (g.rank() >= n).then_some(g)
}

/// Enumerates image tuples in [`crate::words::TupleEnumerator`] order and
/// returns the first solving every relator equation with image rank
/// `>= n`. With several workers, chunks of tuples are tested in parallel
/// but the earliest qualifying tuple still wins, so results and counters
/// match the single-threaded run.
pub fn search_epi_onto_rank(p: &Presentation, n: usize, budget: &Budget) -> EpiSearch {
    let m = p.num_generators();
    let mut tuples = enumerate_tuples(n, m, budget.max_image_length);
    let mut report = BudgetReport::default();
    let pool = (budget.workers > 1)
        .then(|| rayon::ThreadPoolBuilder::new().num_threads(budget.workers).build().ok())
        .flatten();
    loop {
        let room = budget.max_tuples - report.tuples_tried;
        if room == 0 {
            let exhaustive = tuples.next().is_none();
            return EpiSearch::Exhausted { report, exhaustive };
        }
        let chunk: Vec<Vec<Word>> = tuples.by_ref().take(room.min(CHUNK)).collect();
        if chunk.is_empty() {
            return EpiSearch::Exhausted { report, exhaustive: true };
        }
        let hit = match &pool {
            Some(pool) => pool.install(|| {
                chunk.par_iter().enumerate().find_map_first(|(i, t)| qualifies(p, n, t).map(|g| (i, g)))
            }),
            None => chunk.iter().enumerate().find_map(|(i, t)| qualifies(p, n, t).map(|g| (i, g))),
        };
        match hit {
            Some((i, graph)) => {
                report.tuples_tried += i + 1;
                let hom = GroupHom { codomain_rank: n, images: chunk[i].clone(), verified: true };
                let image_rank = graph.rank();
                return EpiSearch::Found(EpiWitness { hom, image_graph: graph, image_rank }, report);
            }
            None => report.tuples_tried += chunk.len(),
        }
    }
}

/// Composes the witness with the retraction of its image onto the span of
/// the first `n` basis elements, killing the rest.
pub fn restrict_to_rank_n(p: &Presentation, w: &EpiWitness, n: usize) -> Result<GroupHom, HomError> {
    if w.image_rank < n {
        return Err(HomError::RankTooSmall { requested: n, found: w.image_rank });
    }
    let basis = w.image_graph.basis();
    let mut retraction: Vec<Word> = basis[..n].to_vec();
    retraction.resize(basis.len(), Word::identity());
    let images = w
        .hom
        .images
        .iter()
        .map(|img| {
            let e = w.image_graph.express(img).expect("image lies in its own subgroup");
            e.substitute(&retraction).expect("basis-indexed word")
        })
        .collect();
    let hom = GroupHom::new(p, w.hom.codomain_rank, images)?;
    let rank = hom.image_graph().rank();
    if rank != n {
        return Err(HomError::RankTooSmall { requested: n, found: rank });
    }
    Ok(hom)
}

/// Rewrites a homomorphism onto a rank-`n` subgroup `K <= F_k` as an
/// epimorphism onto the free group on a basis of `K`.
pub fn onto_abstract_free(hom: &GroupHom) -> (GroupHom, FoldedGraph) {
    let graph = hom.image_graph();
    let images = hom.images.iter().map(|w| graph.express(w).expect("image lies in its own subgroup")).collect();
    (GroupHom { codomain_rank: graph.rank(), images, verified: hom.verified }, graph)
}
