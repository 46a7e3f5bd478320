//! Products of conjugates of relators, the certificates of triviality.

use serde::{Deserialize, Serialize};

use crate::words::Word;

/// `conjugator * r_relator^exponent * conjugator^-1`
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub conjugator: Word,
    pub relator: usize,
    pub exponent: i8,
}

impl Term {
    pub fn new(conjugator: Word, relator: usize, exponent: i8) -> Self {
        Term { conjugator, relator, exponent }
    }

    /// The free-group element this term stands for, or `None` if the relator
    /// index or exponent is invalid.
    pub fn evaluate(&self, relators: &[Word]) -> Option<Word> {
        let r = relators.get(self.relator)?;
        let r = match self.exponent {
            1 => r.clone(),
            -1 => r.inverse(),
            _ => return None,
        };
        Some(r.conjugate_by(&self.conjugator))
    }

    pub fn inverse(&self) -> Term {
        Term { conjugator: self.conjugator.clone(), relator: self.relator, exponent: -self.exponent }
    }
}

/// A word written as a product of conjugates of relators. Its free
/// reduction must equal the word it certifies trivial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConjugateProduct {
    pub terms: Vec<Term>,
}

impl ConjugateProduct {
    pub fn empty() -> Self {
        ConjugateProduct { terms: Vec::new() }
    }

    pub fn single(term: Term) -> Self {
        ConjugateProduct { terms: vec![term] }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The reduced product, or `None` if some term is malformed.
    pub fn evaluate(&self, relators: &[Word]) -> Option<Word> {
        self.terms.iter().try_fold(Word::identity(), |acc, t| Some(acc.concat(&t.evaluate(relators)?)))
    }

    /// Whether the product reduces to exactly `w`.
    pub fn proves(&self, relators: &[Word], w: &Word) -> bool {
        self.evaluate(relators).as_ref() == Some(w)
    }

    pub fn inverse(&self) -> Self {
        ConjugateProduct { terms: self.terms.iter().rev().map(Term::inverse).collect() }
    }

    pub fn concat(&self, other: &ConjugateProduct) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        ConjugateProduct { terms }
    }

    /// Certificate for `u * w * u^-1` given one for `w`.
    pub fn conjugate_by(&self, u: &Word) -> Self {
        ConjugateProduct {
            terms: self
                .terms
                .iter()
                .map(|t| Term { conjugator: u.concat(&t.conjugator), ..t.clone() })
                .collect(),
        }
    }
}
