//! Word-problem oracles composed from partial and total backends.

use serde::{Deserialize, Serialize};

use super::abelian::{abelian_no_part, AbelianImage};
use super::certificate::ConjugateProduct;
use super::knuth_bendix::CertifiedSystem;
use super::yes_part::{YesPart, YesPartAnswer};
use crate::budget::{Budget, BudgetReport};
use crate::presentation::{Abelianization, Presentation};
use crate::words::{enumerate_words, Word, WordEnumerator};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NontrivialityWitness {
    AbelianImage(AbelianImage),
    /// The word's normal form under a certified confluent system is nonempty.
    NormalFormNonEmpty { system: Box<CertifiedSystem>, normal_form: Word },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleAnswer {
    Trivial(ConjugateProduct),
    Nontrivial(NontrivialityWitness),
    Unknown(BudgetReport),
}

impl OracleAnswer {
    pub fn is_trivial(&self) -> bool {
        matches!(self, OracleAnswer::Trivial(_))
    }

    pub fn is_nontrivial(&self) -> bool {
        matches!(self, OracleAnswer::Nontrivial(_))
    }
}

#[derive(Clone, Debug)]
pub enum Backend {
    Rewriting(CertifiedSystem),
    Abelian,
    YesPart,
}

#[derive(Clone, Debug)]
enum Ready {
    Rewriting(CertifiedSystem),
    Abelian(Abelianization),
    YesPart(YesPart),
}

/// Consults its backends in order; the first definitive answer wins.
/// Immutable once built, so queries may run concurrently.
#[derive(Clone, Debug)]
pub struct Oracle {
    presentation: Presentation,
    backends: Vec<Ready>,
    max_rewrite_steps: usize,
}

/// Builds an oracle consulting `backends` in the given order.
pub fn compose_oracle(p: &Presentation, backends: Vec<Backend>, budget: &Budget) -> Oracle {
    let backends = backends
        .into_iter()
        .map(|b| match b {
            Backend::Rewriting(s) => Ready::Rewriting(s),
            Backend::Abelian => Ready::Abelian(p.abelianization()),
            Backend::YesPart => Ready::YesPart(YesPart::new(p, budget)),
        })
        .collect();
    Oracle { presentation: p.clone(), backends, max_rewrite_steps: budget.max_rewrite_steps }
}

impl Oracle {
    /// Abelian no-part, then yes-part.
    pub fn standard(p: &Presentation, budget: &Budget) -> Self {
        compose_oracle(p, vec![Backend::Abelian, Backend::YesPart], budget)
    }

    /// A certified rewriting system first, then the standard backends.
    pub fn with_system(p: &Presentation, system: CertifiedSystem, budget: &Budget) -> Self {
        compose_oracle(p, vec![Backend::Rewriting(system), Backend::Abelian, Backend::YesPart], budget)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Whether some backend answers every query (given enough steps).
    pub fn is_total(&self) -> bool {
        self.backends.iter().any(|b| matches!(b, Ready::Rewriting(_)))
    }

    /// Consults only the backends able to prove nontriviality, skipping the
    /// yes-part search. `None` means no certificate, not triviality.
    pub fn certify_nontrivial(&self, w: &Word) -> Option<NontrivialityWitness> {
        let m = self.presentation.num_generators();
        w.check_rank(m).expect("oracle query outside the presentation's alphabet");
        for b in &self.backends {
            match b {
                Ready::Rewriting(s) => {
                    if let Ok(nf) = s.system.normal_form(w.letters(), self.max_rewrite_steps) {
                        return (!nf.is_empty()).then(|| NontrivialityWitness::NormalFormNonEmpty {
                            system: Box::new(s.clone()),
                            normal_form: Word::reduce(nf),
                        });
                    }
                }
                Ready::Abelian(ab) => {
                    if let Some(img) = abelian_no_part(ab, m, w) {
                        return Some(NontrivialityWitness::AbelianImage(img));
                    }
                }
                Ready::YesPart(_) => {}
            }
        }
        None
    }

    /// Panics if `w` uses letters outside the presentation's alphabet.
    pub fn query(&self, w: &Word, report: &mut BudgetReport) -> OracleAnswer {
        let m = self.presentation.num_generators();
        w.check_rank(m).expect("oracle query outside the presentation's alphabet");
        for b in &self.backends {
            match b {
                Ready::Rewriting(s) => match s.prove_trivial(w, self.max_rewrite_steps) {
                    Ok(Some(c)) => return OracleAnswer::Trivial(c),
                    Ok(None) => {
                        let nf = s.system.normal_form(w.letters(), self.max_rewrite_steps).expect("bounded above");
                        let normal_form = Word::reduce(nf);
                        return OracleAnswer::Nontrivial(NontrivialityWitness::NormalFormNonEmpty {
                            system: Box::new(s.clone()),
                            normal_form,
                        });
                    }
                    Err(_) => {}
                },
                Ready::Abelian(ab) => {
                    if let Some(img) = abelian_no_part(ab, m, w) {
                        return OracleAnswer::Nontrivial(NontrivialityWitness::AbelianImage(img));
                    }
                }
                Ready::YesPart(y) => {
                    if let Ok(YesPartAnswer::Trivial(c)) = y.query(w, report) {
                        return OracleAnswer::Trivial(c);
                    }
                }
            }
        }
        OracleAnswer::Unknown(report.clone())
    }
}

/// What the enumeration did with one word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumerated {
    Nontrivial(Word, NontrivialityWitness),
    Trivial(Word),
    Skipped(Word),
}

/// Walks reduced words in shortlex order, classifying each with the oracle.
/// Words the oracle cannot classify are kept in `skipped`.
pub struct NontrivialEnumerator<'a> {
    oracle: &'a Oracle,
    words: WordEnumerator,
    pub skipped: Vec<Word>,
    pub report: BudgetReport,
}

pub fn enumerate_nontrivial<'a>(oracle: &'a Oracle, budget: &Budget) -> NontrivialEnumerator<'a> {
    let mut words = enumerate_words(oracle.presentation().num_generators(), budget.max_word_length);
    words.next();
    NontrivialEnumerator { oracle, words, skipped: Vec::new(), report: BudgetReport::default() }
}

impl NontrivialEnumerator<'_> {
    /// Classifies the next word, or `None` when the length bound is reached.
    pub fn step(&mut self) -> Option<Enumerated> {
        let w = self.words.next()?;
        self.report.words_enumerated += 1;
        Some(match self.oracle.query(&w, &mut self.report) {
            OracleAnswer::Nontrivial(wit) => Enumerated::Nontrivial(w, wit),
            OracleAnswer::Trivial(_) => Enumerated::Trivial(w),
            OracleAnswer::Unknown(_) => {
                self.report.skipped_unknown += 1;
                self.skipped.push(w.clone());
                Enumerated::Skipped(w)
            }
        })
    }
}

impl Iterator for NontrivialEnumerator<'_> {
    type Item = (Word, NontrivialityWitness);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Enumerated::Nontrivial(w, wit) = self.step()? {
                return Some((w, wit));
            }
        }
    }
}
