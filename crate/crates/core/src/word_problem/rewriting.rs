//! String rewriting over the doubled alphabet `{x_i, x_i^-1}`.
//!
//! Strings here are plain letter sequences, not freely reduced words: the
//! system itself must contain whatever cancellation rules it relies on.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::Letter;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewritingError {
    #[error("rule {rule}: empty left-hand side")]
    EmptyLhs { rule: usize },
    #[error("rule {rule}: left-hand side is not larger than right-hand side in shortlex")]
    NotDecreasing { rule: usize },
    #[error("rule {rule}: letter outside the alphabet of rank {rank}")]
    LetterOutOfRange { rule: usize, rank: usize },
    #[error("letter order must list each of the {expected} letters exactly once")]
    BadOrder { expected: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rule {
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

/// Raised when a normal-form computation exceeds its step allowance.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("rewriting exceeded {0} steps")]
pub struct StepLimit(pub usize);

/// One application of `rules[rule]` at offset `prefix.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub prefix: Vec<Letter>,
    pub rule: usize,
}

/// Both one-step reducts of an overlap or containment of two left-hand
/// sides. `word = prefix * lhs(second) * ...` and `word` rewrites by
/// `first` at offset 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub first: usize,
    pub second: usize,
    pub prefix: Vec<Letter>,
    pub word: Vec<Letter>,
    pub left: Vec<Letter>,
    pub right: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Confluence {
    Confluent,
    CriticalPairFailure { pair: CriticalPair, left_normal: Vec<Letter>, right_normal: Vec<Letter> },
    Unknown,
}

/// Length-reducing-or-shortlex-decreasing rules with a fixed letter order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SystemData", try_from = "SystemData")]
pub struct RewritingSystem {
    rank: usize,
    order: Vec<Letter>,
    position: Vec<usize>,
    rules: Vec<Rule>,
    lookup: HashMap<Vec<Letter>, usize>,
    max_lhs: usize,
}

#[derive(Serialize, Deserialize)]
struct SystemData {
    rank: usize,
    order: Vec<Letter>,
    rules: Vec<Rule>,
}

impl From<RewritingSystem> for SystemData {
    fn from(s: RewritingSystem) -> Self {
        SystemData { rank: s.rank, order: s.order, rules: s.rules }
    }
}

impl TryFrom<SystemData> for RewritingSystem {
    type Error = RewritingError;

    fn try_from(d: SystemData) -> Result<Self, Self::Error> {
        RewritingSystem::with_order(d.rank, d.order, d.rules)
    }
}

/// `x x^-1 -> 1` and `x^-1 x -> 1` for every generator.
pub fn free_cancellation_rules(rank: usize) -> Vec<Rule> {
    (0..rank)
        .flat_map(|g| {
            [
                Rule { lhs: vec![Letter::pos(g), Letter::neg(g)], rhs: vec![] },
                Rule { lhs: vec![Letter::neg(g), Letter::pos(g)], rhs: vec![] },
            ]
        })
        .collect()
}

/// The canonical letter order `x_1 < x_1^-1 < x_2 < ...`.
pub fn canonical_order(rank: usize) -> Vec<Letter> {
    (0..2 * rank).map(Letter::from_key).collect()
}

impl RewritingSystem {
    pub fn new(rank: usize, rules: Vec<Rule>) -> Result<Self, RewritingError> {
        Self::with_order(rank, canonical_order(rank), rules)
    }

    pub fn with_order(rank: usize, order: Vec<Letter>, rules: Vec<Rule>) -> Result<Self, RewritingError> {
        let mut position = vec![usize::MAX; 2 * rank];
        for (i, l) in order.iter().enumerate() {
            match position.get_mut(l.key()) {
                Some(p) if *p == usize::MAX => *p = i,
                _ => return Err(RewritingError::BadOrder { expected: 2 * rank }),
            }
        }
        if order.len() != 2 * rank {
            return Err(RewritingError::BadOrder { expected: 2 * rank });
        }
        let mut sys = RewritingSystem { rank, order, position, rules: Vec::new(), lookup: HashMap::new(), max_lhs: 0 };
        for (i, r) in rules.iter().enumerate() {
            if r.lhs.iter().chain(&r.rhs).any(|l| l.gen_index() >= rank) {
                return Err(RewritingError::LetterOutOfRange { rule: i, rank });
            }
            if r.lhs.is_empty() {
                return Err(RewritingError::EmptyLhs { rule: i });
            }
            if sys.compare(&r.lhs, &r.rhs) != Ordering::Greater {
                return Err(RewritingError::NotDecreasing { rule: i });
            }
        }
        for (i, r) in rules.iter().enumerate() {
            sys.lookup.entry(r.lhs.clone()).or_insert(i);
            sys.max_lhs = sys.max_lhs.max(r.lhs.len());
        }
        sys.rules = rules;
        Ok(sys)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> &[Letter] {
        &self.order
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Shortlex comparison under this system's letter order.
    pub fn compare(&self, a: &[Letter], b: &[Letter]) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            a.iter()
                .map(|l| self.position[l.key()])
                .cmp(b.iter().map(|l| self.position[l.key()]))
        })
    }

    pub fn normal_form(&self, s: &[Letter], max_steps: usize) -> Result<Vec<Letter>, StepLimit> {
        self.rewrite(s, max_steps, None)
    }

    /// Normal form together with every step taken, in order.
    pub fn normal_form_traced(
        &self,
        s: &[Letter],
        max_steps: usize,
    ) -> Result<(Vec<Letter>, Vec<RewriteStep>), StepLimit> {
        let mut steps = Vec::new();
        let nf = self.rewrite(s, max_steps, Some(&mut steps))?;
        Ok((nf, steps))
    }

    fn rewrite(
        &self,
        s: &[Letter],
        max_steps: usize,
        mut trace: Option<&mut Vec<RewriteStep>>,
    ) -> Result<Vec<Letter>, StepLimit> {
        let mut input: Vec<Letter> = s.iter().rev().copied().collect();
        let mut out: Vec<Letter> = Vec::with_capacity(s.len());
        let mut steps = 0;
        while let Some(l) = input.pop() {
            out.push(l);
            for len in 1..=self.max_lhs.min(out.len()) {
                let at = out.len() - len;
                if let Some(&r) = self.lookup.get(&out[at..]) {
                    steps += 1;
                    if steps > max_steps {
                        return Err(StepLimit(max_steps));
                    }
                    out.truncate(at);
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(RewriteStep { prefix: out.clone(), rule: r });
                    }
                    input.extend(self.rules[r].rhs.iter().rev());
                    break;
                }
            }
        }
        Ok(out)
    }

    pub fn is_irreducible(&self, s: &[Letter]) -> bool {
        (0..s.len()).all(|i| (i + 1..=s.len().min(i + self.max_lhs)).all(|j| !self.lookup.contains_key(&s[i..j])))
    }

    /// Critical pairs of `rules[i]` against `rules[j]`: proper overlaps of a
    /// suffix of `lhs_i` with a prefix of `lhs_j`, and occurrences of `lhs_j`
    /// inside `lhs_i`.
    pub fn critical_pairs_between(&self, i: usize, j: usize) -> Vec<CriticalPair> {
        critical_pairs(&self.rules[i], &self.rules[j], i, j)
    }

    pub fn check_confluence(&self, max_steps: usize) -> Confluence {
        for i in 0..self.rules.len() {
            for j in 0..self.rules.len() {
                for pair in self.critical_pairs_between(i, j) {
                    let (Ok(l), Ok(r)) = (self.normal_form(&pair.left, max_steps), self.normal_form(&pair.right, max_steps))
                    else {
                        return Confluence::Unknown;
                    };
                    if l != r {
                        return Confluence::CriticalPairFailure { pair, left_normal: l, right_normal: r };
                    }
                }
            }
        }
        Confluence::Confluent
    }
}

pub(crate) fn critical_pairs(ri: &Rule, rj: &Rule, i: usize, j: usize) -> Vec<CriticalPair> {
    let (li, lj) = (&ri.lhs, &rj.lhs);
    let mut out = Vec::new();
    for k in 1..li.len().min(lj.len()) {
        if li[li.len() - k..] == lj[..k] {
            let prefix = li[..li.len() - k].to_vec();
            let suffix = &lj[k..];
            let mut word = li.clone();
            word.extend_from_slice(suffix);
            let mut left = ri.rhs.clone();
            left.extend_from_slice(suffix);
            let mut right = prefix.clone();
            right.extend_from_slice(&rj.rhs);
            out.push(CriticalPair { first: i, second: j, prefix, word, left, right });
        }
    }
    if i != j && lj.len() <= li.len() {
        for p in 0..=li.len() - lj.len() {
            if li[p..p + lj.len()] == lj[..] {
                let prefix = li[..p].to_vec();
                let mut right = prefix.clone();
                right.extend_from_slice(&rj.rhs);
                right.extend_from_slice(&li[p + lj.len()..]);
                out.push(CriticalPair { first: i, second: j, prefix, word: li.clone(), left: ri.rhs.clone(), right });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: Letter = Letter { gen: crate::words::GeneratorId(0), inverse: false };
    const AI: Letter = Letter { gen: crate::words::GeneratorId(0), inverse: true };
    const B: Letter = Letter { gen: crate::words::GeneratorId(1), inverse: false };
    const BI: Letter = Letter { gen: crate::words::GeneratorId(1), inverse: true };

    fn rule(lhs: &[Letter], rhs: &[Letter]) -> Rule {
        Rule { lhs: lhs.to_vec(), rhs: rhs.to_vec() }
    }

    pub(crate) fn z2_system() -> RewritingSystem {
        let mut rules = free_cancellation_rules(2);
        rules.extend([
            rule(&[B, A], &[A, B]),
            rule(&[B, AI], &[AI, B]),
            rule(&[BI, A], &[A, BI]),
            rule(&[BI, AI], &[AI, BI]),
        ]);
        RewritingSystem::new(2, rules).unwrap()
    }

    #[test]
    fn empty_system_is_confluent() {
        assert_eq!(RewritingSystem::new(2, vec![]).unwrap().check_confluence(100), Confluence::Confluent);
    }

    #[test]
    fn z2_system_is_confluent() {
        assert_eq!(z2_system().check_confluence(1000), Confluence::Confluent);
    }

    #[test]
    fn z2_normal_forms() {
        let z2 = z2_system();
        assert_eq!(z2.normal_form(&[B, A, BI], 100).unwrap(), vec![A]);
        assert_eq!(z2.normal_form(&[], 100).unwrap(), vec![]);
        assert_eq!(z2.normal_form(&[A, B], 100).unwrap(), vec![A, B]);
        assert_eq!(z2.normal_form(&[A, B, AI, BI], 100).unwrap(), vec![]);
    }

    #[test]
    fn commutation_alone_is_confluent_but_not_a_group_system() {
        let s = RewritingSystem::new(2, vec![rule(&[B, A], &[A, B])]).unwrap();
        assert_eq!(s.check_confluence(100), Confluence::Confluent);
        assert_eq!(s.normal_form(&[B, A, AI], 100).unwrap(), vec![A, B, AI]);
        assert_ne!(s.normal_form(&[B, A, AI], 100).unwrap(), vec![B]);
    }

    #[test]
    fn detects_non_confluence() {
        let s = RewritingSystem::new(1, vec![rule(&[A, A], &[]), rule(&[A, A, A], &[])]).unwrap();
        assert!(matches!(s.check_confluence(100), Confluence::CriticalPairFailure { .. }));
    }

    #[test]
    fn rejects_malformed_rules() {
        assert_eq!(RewritingSystem::new(2, vec![rule(&[A, B], &[B, A])]), Err(RewritingError::NotDecreasing { rule: 0 }));
        assert_eq!(RewritingSystem::new(2, vec![rule(&[], &[])]), Err(RewritingError::EmptyLhs { rule: 0 }));
        assert_eq!(
            RewritingSystem::new(1, vec![rule(&[B], &[])]),
            Err(RewritingError::LetterOutOfRange { rule: 0, rank: 1 })
        );
        assert!(RewritingSystem::with_order(1, vec![A, A], vec![]).is_err());
    }

    #[test]
    fn custom_order_changes_orientation() {
        let s = RewritingSystem::with_order(2, vec![B, BI, A, AI], vec![rule(&[A, B], &[B, A])]);
        assert!(s.is_ok());
    }

    #[test]
    fn traced_steps_record_prefixes() {
        let (nf, steps) = z2_system().normal_form_traced(&[B, A, BI], 100).unwrap();
        assert_eq!(nf, vec![A]);
        assert_eq!(steps[0], RewriteStep { prefix: vec![], rule: 4 });
        assert_eq!(steps[1], RewriteStep { prefix: vec![A], rule: 2 });
    }

    #[test]
    fn serde_round_trip() {
        let s = z2_system();
        let json = serde_json::to_string(&s).unwrap();
        let back: RewritingSystem = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
