//! Search budgets and the accounting reported when they run out.

use serde::{Deserialize, Serialize};

/// Limits for every bounded search in the crate.
///
/// The searches are semi-decision procedures; a budget turns each into a
/// finite run whose exhaustion is reported, never interpreted as "no".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Longest image word per component in homomorphism and inverse-map searches.
    pub max_image_length: usize,
    /// Longest word enumerated or queried against the yes-part search.
    pub max_word_length: usize,
    /// Candidate tuples per homomorphism / inverse-map search.
    pub max_tuples: usize,
    /// Conjugates of relators per yes-part certificate.
    pub max_certificate_terms: usize,
    /// Longest conjugator in a yes-part certificate.
    pub max_conjugator_length: usize,
    /// Products formed by one yes-part query, and equations processed by one
    /// completion run.
    pub max_search_nodes: usize,
    pub kb_max_rules: usize,
    pub kb_max_rule_length: usize,
    /// Rewrite steps per normal-form computation.
    pub max_rewrite_steps: usize,
    /// Scheduler steps per procedure per round.
    pub quantum: usize,
    /// Worker threads for tuple searches. Results never depend on it.
    #[serde(skip, default = "one")]
    pub workers: usize,
}

fn one() -> usize {
    1
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_image_length: 2,
            max_word_length: 6,
            max_tuples: 100_000,
            max_certificate_terms: 4,
            max_conjugator_length: 2,
            max_search_nodes: 200_000,
            kb_max_rules: 200,
            kb_max_rule_length: 16,
            max_rewrite_steps: 100_000,
            quantum: 1,
            workers: 1,
        }
    }
}

impl Budget {
    /// Every limit multiplied by `factor`; quantum and workers unchanged.
    pub fn scaled(&self, factor: usize) -> Budget {
        Budget {
            max_image_length: self.max_image_length * factor,
            max_word_length: self.max_word_length * factor,
            max_tuples: self.max_tuples * factor,
            max_certificate_terms: self.max_certificate_terms * factor,
            max_conjugator_length: self.max_conjugator_length * factor,
            max_search_nodes: self.max_search_nodes * factor,
            kb_max_rules: self.kb_max_rules * factor,
            kb_max_rule_length: self.kb_max_rule_length * factor,
            max_rewrite_steps: self.max_rewrite_steps * factor,
            quantum: self.quantum,
            workers: self.workers,
        }
    }
}

/// Work actually spent, per phase.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetReport {
    /// Words taken from the nontrivial-element enumeration.
    pub words_enumerated: usize,
    /// Enumerated words the word-problem oracle could not classify.
    pub skipped_unknown: usize,
    /// Homomorphism candidate tuples examined.
    pub tuples_tried: usize,
    /// Inverse-map candidate tuples examined.
    pub inverse_tuples_tried: usize,
    /// Products formed by yes-part searches.
    pub certificate_products: usize,
    /// Yes-part queries that ran out of budget.
    pub yes_part_exhausted: usize,
    /// Queries refused because the word exceeded `max_word_length`.
    pub rejected_too_long: usize,
}

impl BudgetReport {
    pub fn absorb(&mut self, other: &BudgetReport) {
        self.words_enumerated += other.words_enumerated;
        self.skipped_unknown += other.skipped_unknown;
        self.tuples_tried += other.tuples_tried;
        self.inverse_tuples_tried += other.inverse_tuples_tried;
        self.certificate_products += other.certificate_products;
        self.yes_part_exhausted += other.yes_part_exhausted;
        self.rejected_too_long += other.rejected_too_long;
    }
}
