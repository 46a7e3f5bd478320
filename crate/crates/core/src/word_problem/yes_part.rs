//! Bounded search for products of conjugates of relators.
//!
//! Terms `c * r_j^±1 * c^-1` are ordered by conjugator (shortlex), then
//! relator index, then `+1` before `-1`. Products of up to `ceil(K/2)` terms
//! are tabulated once; a query for `w` then looks for `w = L * R` with both
//! halves in the table, trying total term counts `k = 0, 1, ..., K` in turn.
//! The first hit is the certificate, so answers are deterministic and use
//! the fewest terms available within the bounds.

use std::collections::HashMap;

use super::certificate::{ConjugateProduct, Term};
use super::WordProblemError;
use crate::budget::{Budget, BudgetReport};
use crate::presentation::Presentation;
use crate::words::{enumerate_words, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YesPartAnswer {
    Trivial(ConjugateProduct),
    Unknown,
}

/// Precomputed search tables for one presentation and budget. Immutable
/// after construction; queries may run concurrently.
#[derive(Clone, Debug)]
pub struct YesPart {
    relators: Vec<Word>,
    rank: usize,
    max_terms: usize,
    max_word_length: usize,
    terms: Vec<Term>,
    products: Vec<(Word, Vec<u32>)>,
    index: HashMap<Word, usize>,
    // level_end[a] = number of products with at most `a` terms
    level_end: Vec<usize>,
}

impl YesPart {
    pub fn new(p: &Presentation, budget: &Budget) -> Self {
        let relators = p.relators().to_vec();
        let rank = p.num_generators();
        let mut terms = Vec::new();
        let mut term_words = Vec::new();
        let mut seen = HashMap::new();
        if !relators.is_empty() {
            for c in enumerate_words(rank, budget.max_conjugator_length) {
                for (j, r) in relators.iter().enumerate() {
                    for e in [1i8, -1] {
                        let base = if e == 1 { r.clone() } else { r.inverse() };
                        let w = base.conjugate_by(&c);
                        if seen.insert(w.clone(), ()).is_none() {
                            terms.push(Term::new(c.clone(), j, e));
                            term_words.push(w);
                        }
                    }
                }
            }
        }

        let mut products = vec![(Word::identity(), Vec::new())];
        let mut index = HashMap::from([(Word::identity(), 0)]);
        let mut level_end = vec![1];
        let half = budget.max_certificate_terms.div_ceil(2);
        let mut formed = 0usize;
        'levels: for _ in 1..=half {
            let start = level_end.len().checked_sub(2).map_or(0, |i| level_end[i]);
            let end = *level_end.last().unwrap();
            for i in start..end {
                for (t, tw) in term_words.iter().enumerate() {
                    if formed >= budget.max_search_nodes {
                        level_end.push(products.len());
                        break 'levels;
                    }
                    formed += 1;
                    let w = products[i].0.concat(tw);
                    if !index.contains_key(&w) {
                        let mut ids = products[i].1.clone();
                        ids.push(t as u32);
                        index.insert(w.clone(), products.len());
                        products.push((w, ids));
                    }
                }
            }
            level_end.push(products.len());
        }

        YesPart {
            relators,
            rank,
            max_terms: budget.max_certificate_terms,
            max_word_length: budget.max_word_length,
            terms,
            products,
            index,
            level_end,
        }
    }

    fn level_of(&self, product: usize) -> usize {
        self.level_end.partition_point(|&e| e <= product)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn query(&self, w: &Word, report: &mut BudgetReport) -> Result<YesPartAnswer, WordProblemError> {
        w.check_rank(self.rank)?;
        if w.len() > self.max_word_length {
            report.rejected_too_long += 1;
            return Err(WordProblemError::TooLong { length: w.len(), max: self.max_word_length });
        }
        // One pass over right halves; each left half is a single lookup.
        // Products are stored by level, so once a right half alone uses as
        // many terms as the best certificate so far, nothing later can win.
        let levels = self.level_end.len() - 1;
        let right_levels = (self.max_terms / 2).min(levels);
        let mut best: Option<(usize, usize, usize)> = None;
        for (r, right) in self.products[..self.level_end[right_levels]].iter().enumerate() {
            let right_level = self.level_of(r);
            if best.is_some_and(|(total, _, _)| right_level >= total) {
                break;
            }
            report.certificate_products += 1;
            let target = w.concat(&right.0.inverse());
            if let Some(&l) = self.index.get(&target) {
                let total = self.level_of(l) + right_level;
                if total <= self.max_terms && best.is_none_or(|(t, _, _)| total < t) {
                    best = Some((total, l, r));
                }
            }
        }
        if let Some((_, l, r)) = best {
            let ids = self.products[l].1.iter().chain(&self.products[r].1);
            let terms = ids.map(|&t| self.terms[t as usize].clone()).collect();
            return Ok(YesPartAnswer::Trivial(ConjugateProduct { terms }));
        }
        report.yes_part_exhausted += 1;
        Ok(YesPartAnswer::Unknown)
    }
}

/// One-shot convenience wrapper around [`YesPart`].
pub fn yes_part(p: &Presentation, w: &Word, budget: &Budget) -> Result<YesPartAnswer, WordProblemError> {
    YesPart::new(p, budget).query(w, &mut BudgetReport::default())
}
