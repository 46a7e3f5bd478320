//! Knuth–Bendix completion that remembers why each rule holds.
//!
//! Every rule `l -> r` carries a product of conjugates of relators equal to
//! `l * r^-1` in the free group. Proofs are built as a shared DAG during
//! completion and flattened once at the end, so any word the completed
//! system sends to the empty string gets a replayable triviality
//! certificate.

use std::collections::BTreeMap;
use std::rc::Rc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::certificate::{ConjugateProduct, Term};
use super::rewriting::{critical_pairs, free_cancellation_rules, Confluence, RewritingSystem, Rule, StepLimit};
use super::yes_part::{YesPart, YesPartAnswer};
use crate::budget::{Budget, BudgetReport};
use crate::presentation::Presentation;
use crate::words::{Letter, Word};

/// A confluent rewriting system for a presentation, with a proof of every
/// rule. `id` is a digest of the rules and proofs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedSystem {
    pub id: String,
    pub system: RewritingSystem,
    pub proofs: Vec<ConjugateProduct>,
}

impl CertifiedSystem {
    pub fn new(system: RewritingSystem, proofs: Vec<ConjugateProduct>) -> Self {
        let id = system_digest(&system, &proofs);
        CertifiedSystem { id, system, proofs }
    }

    /// Certificate that `w` is trivial, if its normal form is empty.
    pub fn prove_trivial(&self, w: &Word, max_steps: usize) -> Result<Option<ConjugateProduct>, StepLimit> {
        let (nf, steps) = self.system.normal_form_traced(w.letters(), max_steps)?;
        if !nf.is_empty() {
            return Ok(None);
        }
        let mut terms = Vec::new();
        for s in steps {
            let u = Word::reduce(s.prefix);
            terms.extend(self.proofs[s.rule].conjugate_by(&u).terms);
        }
        Ok(Some(ConjugateProduct { terms }))
    }
}

/// Hex SHA-256 of a canonical rendering of the system and its proofs.
pub fn system_digest(system: &RewritingSystem, proofs: &[ConjugateProduct]) -> String {
    let code = |l: &Letter| {
        let n = l.gen_index() as i64 + 1;
        if l.inverse {
            -n
        } else {
            n
        }
    };
    let join = |ls: &[Letter]| ls.iter().map(|l| code(l).to_string()).collect::<Vec<_>>().join(",");
    let mut text = format!("rank {}\norder {}\n", system.rank(), join(system.order()));
    for (i, r) in system.rules().iter().enumerate() {
        text.push_str(&format!("rule {} -> {}\n", join(&r.lhs), join(&r.rhs)));
        if let Some(p) = proofs.get(i) {
            for t in &p.terms {
                text.push_str(&format!("  term {} {} {}\n", join(t.conjugator.letters()), t.relator, t.exponent));
            }
        }
    }
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompletionStop {
    #[error("more than {0} rules")]
    TooManyRules(usize),
    #[error("a rule longer than {0} letters was needed")]
    RuleTooLong(usize),
    #[error("more than {0} equations processed")]
    TooManyEquations(usize),
    #[error("normal form exceeded the rewrite-step budget")]
    StepLimit,
    #[error("a rule proof exceeded {0} terms")]
    ProofTooLarge(usize),
    #[error("completed system failed its confluence self-check")]
    SelfCheckFailed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completion {
    Complete(CertifiedSystem),
    Unknown(CompletionStop),
}

#[derive(Debug)]
enum Node {
    Empty,
    Term(Term),
    Conj(Word, Proof),
    Inv(Proof),
    Cat(Proof, Proof),
}

type Proof = Rc<Node>;
/// Equations awaiting orientation, keyed by length then arrival.
type Pending = BTreeMap<(usize, u64), (Vec<Letter>, Vec<Letter>, Proof)>;

fn cat(a: Proof, b: Proof) -> Proof {
    match (&*a, &*b) {
        (Node::Empty, _) => b,
        (_, Node::Empty) => a,
        _ => Rc::new(Node::Cat(a, b)),
    }
}

fn inv(a: Proof) -> Proof {
    match &*a {
        Node::Empty => a,
        Node::Inv(x) => x.clone(),
        _ => Rc::new(Node::Inv(a)),
    }
}

fn conj(u: Word, a: Proof) -> Proof {
    if u.is_identity() || matches!(*a, Node::Empty) {
        a
    } else {
        Rc::new(Node::Conj(u, a))
    }
}

/// Expands a proof DAG into a flat product, cancelling adjacent inverse
/// terms. `None` if more than `cap` nodes would be visited.
fn flatten(p: &Proof, cap: usize) -> Option<ConjugateProduct> {
    let mut out: Vec<Term> = Vec::new();
    let mut stack: Vec<(&Proof, Word, bool)> = vec![(p, Word::identity(), false)];
    let mut visited = 0usize;
    while let Some((node, c, inverted)) = stack.pop() {
        visited += 1;
        if visited > cap {
            return None;
        }
        match &**node {
            Node::Empty => {}
            Node::Term(t) => {
                let e = if inverted { -t.exponent } else { t.exponent };
                let term = Term::new(c.concat(&t.conjugator), t.relator, e);
                if out.last().is_some_and(|last| *last == term.inverse()) {
                    out.pop();
                } else {
                    out.push(term);
                }
            }
            Node::Conj(u, q) => stack.push((q, c.concat(u), inverted)),
            Node::Inv(q) => stack.push((q, c, !inverted)),
            Node::Cat(a, b) => {
                if inverted {
                    stack.push((a, c.clone(), true));
                    stack.push((b, c, true));
                } else {
                    stack.push((b, c.clone(), false));
                    stack.push((a, c, false));
                }
            }
        }
    }
    Some(ConjugateProduct { terms: out })
}

struct Completer {
    rank: usize,
    rules: Vec<Option<(Rule, Proof)>>,
    system: RewritingSystem,
    alive: Vec<usize>,
    max_steps: usize,
}

impl Completer {
    fn rebuild(&mut self) {
        self.alive = (0..self.rules.len()).filter(|&i| self.rules[i].is_some()).collect();
        let rules = self.alive.iter().map(|&i| self.rules[i].as_ref().unwrap().0.clone()).collect();
        self.system = RewritingSystem::new(self.rank, rules).expect("completion only adds oriented rules");
    }

    /// Normal form of `s` and a proof of `s * nf^-1`.
    fn normalize(&self, s: &[Letter]) -> Result<(Vec<Letter>, Proof), StepLimit> {
        let (nf, steps) = self.system.normal_form_traced(s, self.max_steps)?;
        let mut proof: Proof = Rc::new(Node::Empty);
        for st in steps {
            let rule_proof = self.rules[self.alive[st.rule]].as_ref().unwrap().1.clone();
            proof = cat(proof, conj(Word::reduce(st.prefix), rule_proof));
        }
        Ok((nf, proof))
    }
}

fn contains_factor(hay: &[Letter], needle: &[Letter]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Completes the presentation's group rewriting system under shortlex with
/// the canonical letter order.
pub fn knuth_bendix(p: &Presentation, budget: &Budget) -> Completion {
    let rank = p.num_generators();
    let mut c = Completer {
        rank,
        rules: Vec::new(),
        system: RewritingSystem::new(rank, vec![]).unwrap(),
        alive: Vec::new(),
        max_steps: budget.max_rewrite_steps,
    };
    let mut pending: Pending = BTreeMap::new();
    let mut seq = 0u64;
    let mut push = |pending: &mut BTreeMap<_, _>, s: Vec<Letter>, t: Vec<Letter>, e: Proof| {
        pending.insert((s.len().max(t.len()), seq), (s, t, e));
        seq += 1;
    };
    for r in free_cancellation_rules(rank) {
        push(&mut pending, r.lhs, r.rhs, Rc::new(Node::Empty));
    }
    for (j, r) in p.relators().iter().enumerate() {
        push(&mut pending, r.letters().to_vec(), vec![], Rc::new(Node::Term(Term::new(Word::identity(), j, 1))));
    }

    let mut processed = 0usize;
    while let Some((_, (s, t, e))) = pending.pop_first() {
        processed += 1;
        if processed > budget.max_search_nodes {
            return Completion::Unknown(CompletionStop::TooManyEquations(budget.max_search_nodes));
        }
        let (Ok((s1, ds)), Ok((t1, dt))) = (c.normalize(&s), c.normalize(&t)) else {
            return Completion::Unknown(CompletionStop::StepLimit);
        };
        if s1 == t1 {
            continue;
        }
        let proof = cat(inv(ds), cat(e, dt));
        let (lhs, rhs, proof) = if c.system.compare(&s1, &t1).is_gt() { (s1, t1, proof) } else { (t1, s1, inv(proof)) };
        if lhs.len() > budget.kb_max_rule_length {
            return Completion::Unknown(CompletionStop::RuleTooLong(budget.kb_max_rule_length));
        }
        let k = c.rules.len();
        c.rules.push(Some((Rule { lhs: lhs.clone(), rhs }, proof)));

        let mut reduce_rhs = Vec::new();
        for &i in &c.alive.clone() {
            let (rule, pr) = c.rules[i].clone().unwrap();
            if contains_factor(&rule.lhs, &lhs) {
                c.rules[i] = None;
                push(&mut pending, rule.lhs, rule.rhs, pr);
            } else if contains_factor(&rule.rhs, &lhs) {
                reduce_rhs.push(i);
            }
        }
        c.rebuild();
        for i in reduce_rhs {
            let (rule, pr) = c.rules[i].clone().unwrap();
            let Ok((rhs, d)) = c.normalize(&rule.rhs) else {
                return Completion::Unknown(CompletionStop::StepLimit);
            };
            c.rules[i] = Some((Rule { lhs: rule.lhs, rhs }, cat(pr, d)));
        }
        c.rebuild();
        if c.alive.len() > budget.kb_max_rules {
            return Completion::Unknown(CompletionStop::TooManyRules(budget.kb_max_rules));
        }

        for &i in &c.alive {
            let (ri, pi) = c.rules[i].as_ref().unwrap();
            let (rk, pk) = c.rules[k].as_ref().unwrap();
            let mut pairs = critical_pairs(rk, ri, k, i);
            if i != k {
                pairs.extend(critical_pairs(ri, rk, i, k));
            }
            for pair in pairs {
                let (pf, ps) = if pair.first == k { (pk, pi) } else { (pi, pk) };
                let e = cat(inv(pf.clone()), conj(Word::reduce(pair.prefix.iter().copied()), ps.clone()));
                push(&mut pending, pair.left, pair.right, e);
            }
        }
    }

    let mut finished: Vec<(Rule, Proof)> = c.alive.iter().map(|&i| c.rules[i].clone().unwrap()).collect();
    finished.sort_by(|a, b| c.system.compare(&a.0.lhs, &b.0.lhs));
    let mut proofs = Vec::with_capacity(finished.len());
    for (_, pr) in &finished {
        match flatten(pr, budget.max_search_nodes) {
            Some(f) => proofs.push(f),
            None => return Completion::Unknown(CompletionStop::ProofTooLarge(budget.max_search_nodes)),
        }
    }
    let system = RewritingSystem::new(rank, finished.into_iter().map(|(r, _)| r).collect()).unwrap();
    if system.check_confluence(budget.max_rewrite_steps) != Confluence::Confluent {
        return Completion::Unknown(CompletionStop::SelfCheckFailed);
    }
    Completion::Complete(CertifiedSystem::new(system, proofs))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SupplyRejection {
    #[error("system has rank {found}, presentation has {expected} generators")]
    RankMismatch { expected: usize, found: usize },
    #[error("system is not confluent")]
    NotConfluent,
    #[error("confluence could not be established within budget")]
    ConfluenceUnknown,
    #[error("relator {0} does not rewrite to the empty word")]
    RelatorNotTrivial(usize),
    #[error("generator {0} does not cancel with its inverse")]
    MissingCancellation(usize),
    #[error("rule {0} could not be proved in the group")]
    RuleUnproven(usize),
}

/// Accepts a user-supplied system only if it is confluent, kills every
/// relator and every `x x^-1`, and each rule is a yes-part-certified
/// relation of the group.
pub fn certify_supplied(
    p: &Presentation,
    system: RewritingSystem,
    budget: &Budget,
) -> Result<CertifiedSystem, SupplyRejection> {
    let m = p.num_generators();
    if system.rank() != m {
        return Err(SupplyRejection::RankMismatch { expected: m, found: system.rank() });
    }
    match system.check_confluence(budget.max_rewrite_steps) {
        Confluence::Confluent => {}
        Confluence::CriticalPairFailure { .. } => return Err(SupplyRejection::NotConfluent),
        Confluence::Unknown => return Err(SupplyRejection::ConfluenceUnknown),
    }
    let steps = budget.max_rewrite_steps;
    for (j, r) in p.relators().iter().enumerate() {
        if system.normal_form(r.letters(), steps).map_or(true, |nf| !nf.is_empty()) {
            return Err(SupplyRejection::RelatorNotTrivial(j));
        }
    }
    for g in 0..m {
        for pair in [[Letter::pos(g), Letter::neg(g)], [Letter::neg(g), Letter::pos(g)]] {
            if system.normal_form(&pair, steps).map_or(true, |nf| !nf.is_empty()) {
                return Err(SupplyRejection::MissingCancellation(g));
            }
        }
    }
    let yes = YesPart::new(p, budget);
    let mut report = BudgetReport::default();
    let mut proofs = Vec::new();
    for (i, r) in system.rules().iter().enumerate() {
        let w = Word::reduce(r.lhs.iter().copied()).concat(&Word::reduce(r.rhs.iter().copied()).inverse());
        match yes.query(&w, &mut report) {
            Ok(YesPartAnswer::Trivial(c)) => proofs.push(c),
            _ => return Err(SupplyRejection::RuleUnproven(i)),
        }
    }
    Ok(CertifiedSystem::new(system, proofs))
}
