//! The two semi-decision procedures run side by side once an epimorphism
//! `phi: G -> H` is known: one hunts for a nontrivial kernel element, the
//! other for an inverse map `psi: H -> G`.

use super::certificate::{
    Certificate, Decision, ImageTrivialityProof, InconclusiveReason, InverseWitness, KernelWitness, Outcome,
    SurjectionProof,
};
use super::scheduler::{run_interleaved, Interleaved, SemiDecider, Step};
use crate::budget::{Budget, BudgetReport};
use crate::hom_search::GroupHom;
use crate::presentation::Presentation;
use crate::stallings::build_graph;
use crate::word_problem::{ConjugateProduct, Oracle, OracleAnswer, YesPart, YesPartAnswer};
use crate::words::{enumerate_tuples, enumerate_words, TupleEnumerator, Word, WordEnumerator};

/// The codomain `H`, with a triviality test for its words.
pub enum Codomain {
    Free(usize),
    Presented { presentation: Presentation, yes: YesPart },
}

impl Codomain {
    pub fn new(h: &Presentation, budget: &Budget) -> Self {
        if h.is_free() {
            Codomain::Free(h.num_generators())
        } else {
            Codomain::Presented { presentation: h.clone(), yes: YesPart::new(h, budget) }
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Codomain::Free(n) => *n,
            Codomain::Presented { presentation, .. } => presentation.num_generators(),
        }
    }

    pub fn relators(&self) -> &[Word] {
        match self {
            Codomain::Free(_) => &[],
            Codomain::Presented { presentation, .. } => presentation.relators(),
        }
    }

    /// A proof that `w` is trivial in `H`, if one is found.
    pub fn prove_trivial(&self, w: &Word, report: &mut BudgetReport) -> Option<ImageTrivialityProof> {
        match self {
            Codomain::Free(_) => w.is_identity().then(|| ImageTrivialityProof::FreeReduction(w.clone())),
            Codomain::Presented { yes, .. } => match yes.query(w, report) {
                Ok(YesPartAnswer::Trivial(c)) => Some(ImageTrivialityProof::Presented(c)),
                _ => None,
            },
        }
    }
}

/// Enumerates words of `G` in shortlex order and stops at the first one
/// certified nontrivial whose image under `phi` is provably trivial.
/// The image is tested first; words with trivial image are then checked
/// for a nontriviality certificate only, since a triviality proof would not
/// end the search. `skipped_unknown` counts the words left uncertified.
pub struct AlgorithmA<'a> {
    oracle: &'a Oracle,
    phi: &'a GroupHom,
    codomain: &'a Codomain,
    words: WordEnumerator,
    report: BudgetReport,
}

impl<'a> AlgorithmA<'a> {
    pub fn new(oracle: &'a Oracle, codomain: &'a Codomain, phi: &'a GroupHom, budget: &Budget) -> Self {
        let mut words = enumerate_words(oracle.presentation().num_generators(), budget.max_word_length);
        words.next();
        AlgorithmA { oracle, phi, codomain, words, report: BudgetReport::default() }
    }
}

impl SemiDecider for AlgorithmA<'_> {
    type Output = KernelWitness;

    fn step(&mut self) -> Step<KernelWitness> {
        let Some(w) = self.words.next() else {
            return Step::Exhausted;
        };
        self.report.words_enumerated += 1;
        let Some(trivial_image) = self.codomain.prove_trivial(&self.phi.apply(&w), &mut self.report) else {
            return Step::Pending;
        };
        match self.oracle.certify_nontrivial(&w) {
            Some(nontrivial) => Step::Done(KernelWitness { word: w, nontrivial, trivial_image }),
            None => {
                self.report.skipped_unknown += 1;
                Step::Pending
            }
        }
    }

    fn report(&self) -> BudgetReport {
        self.report.clone()
    }
}

/// Enumerates candidate images `(y_1, ..., y_n)` of `H`'s generators in
/// `G` and stops at the first defining a homomorphism inverse to `phi`.
pub struct AlgorithmB<'a> {
    oracle: &'a Oracle,
    phi: &'a GroupHom,
    codomain: &'a Codomain,
    tuples: TupleEnumerator,
    max_tuples: usize,
    report: BudgetReport,
}

impl<'a> AlgorithmB<'a> {
    pub fn new(oracle: &'a Oracle, codomain: &'a Codomain, phi: &'a GroupHom, budget: &Budget) -> Self {
        let m = oracle.presentation().num_generators();
        let tuples = enumerate_tuples(m, codomain.rank(), budget.max_image_length);
        AlgorithmB { oracle, phi, codomain, tuples, max_tuples: budget.max_tuples, report: BudgetReport::default() }
    }

    fn prove_in_g(&mut self, w: &Word) -> Option<ConjugateProduct> {
        match self.oracle.query(w, &mut self.report) {
            OracleAnswer::Trivial(c) => Some(c),
            _ => None,
        }
    }

    fn check(&mut self, psi: Vec<Word>) -> Option<InverseWitness> {
        let mut roundtrip_proofs = Vec::with_capacity(self.phi.images.len());
        for (i, img) in self.phi.images.iter().enumerate() {
            let z = img.substitute(&psi).expect("psi has one image per generator of H");
            let z = z.concat(&Word::generator(i).inverse());
            roundtrip_proofs.push(self.prove_in_g(&z)?);
        }
        let mut relator_proofs = Vec::new();
        for s in self.codomain.relators().to_vec() {
            let w = s.substitute(&psi).expect("psi has one image per generator of H");
            relator_proofs.push(self.prove_in_g(&w)?);
        }
        let mut surjection_proofs = Vec::new();
        for (j, y) in psi.iter().enumerate() {
            let w = self.phi.apply(y).concat(&Word::generator(j).inverse());
            surjection_proofs.push(self.codomain.prove_trivial(&w, &mut self.report)?);
        }
        Some(InverseWitness { psi_images: psi, relator_proofs, roundtrip_proofs, surjection_proofs })
    }
}

impl SemiDecider for AlgorithmB<'_> {
    type Output = InverseWitness;

    fn step(&mut self) -> Step<InverseWitness> {
        if self.report.inverse_tuples_tried >= self.max_tuples {
            return Step::Exhausted;
        }
        let Some(psi) = self.tuples.next() else {
            return Step::Exhausted;
        };
        self.report.inverse_tuples_tried += 1;
        match self.check(psi) {
            Some(w) => Step::Done(w),
            None => Step::Pending,
        }
    }

    fn report(&self) -> BudgetReport {
        self.report.clone()
    }
}

fn phi_proofs(g: &Presentation, codomain: &Codomain, phi: &GroupHom, report: &mut BudgetReport) -> Option<Vec<ImageTrivialityProof>> {
    g.relators().iter().map(|r| codomain.prove_trivial(&phi.apply(r), report)).collect()
}

/// Preimages of `H`'s generators under `phi`. For a free codomain they are
/// read off the image's core graph; otherwise the caller supplies words
/// and they are checked here.
fn surjection(
    codomain: &Codomain,
    phi: &GroupHom,
    preimages: Option<&[Word]>,
    report: &mut BudgetReport,
) -> Option<Vec<SurjectionProof>> {
    let n = codomain.rank();
    let words: Vec<Word> = match (preimages, codomain) {
        (Some(p), _) => p.to_vec(),
        (None, Codomain::Free(_)) => {
            let graph = build_graph(n, &phi.images);
            (0..n).map(|j| graph.express_in_generators(&Word::generator(j))).collect::<Option<_>>()?
        }
        (None, Codomain::Presented { .. }) => return None,
    };
    if words.len() != n {
        return None;
    }
    words
        .into_iter()
        .enumerate()
        .map(|(j, u)| {
            let w = phi.apply(&u).concat(&Word::generator(j).inverse());
            let proof = codomain.prove_trivial(&w, report)?;
            Some(SurjectionProof { preimage: u, proof })
        })
        .collect()
}

/// Runs both procedures interleaved. `phi` must be an epimorphism onto `h`;
/// a kernel element only refutes isomorphism when `hopfian_asserted`, which
/// the caller sets when `G` or `H` is known to be Hopfian (always true for
/// free `H`). `preimages` are required for presented `H`.
pub fn decide_iso_with_epi(
    oracle: &Oracle,
    h: &Presentation,
    phi: &GroupHom,
    preimages: Option<&[Word]>,
    hopfian_asserted: bool,
    budget: &Budget,
) -> Decision {
    let g = oracle.presentation();
    let codomain = Codomain::new(h, budget);
    let mut report = BudgetReport::default();
    let Some(phi_proofs) = phi_proofs(g, &codomain, phi, &mut report) else {
        return Decision { outcome: Outcome::Inconclusive(InconclusiveReason::BothExhausted), report };
    };
    let mut a = AlgorithmA::new(oracle, &codomain, phi, budget);
    let mut b = AlgorithmB::new(oracle, &codomain, phi, budget);
    enum Found {
        Kernel(KernelWitness),
        Inverse(InverseWitness),
    }
    struct Wrap<'s, S>(&'s mut S, fn(<S as SemiDecider>::Output) -> Found)
    where
        S: SemiDecider;
    impl<S: SemiDecider> SemiDecider for Wrap<'_, S> {
        type Output = Found;
        fn step(&mut self) -> Step<Found> {
            match self.0.step() {
                Step::Pending => Step::Pending,
                Step::Exhausted => Step::Exhausted,
                Step::Done(v) => Step::Done((self.1)(v)),
            }
        }
        fn report(&self) -> BudgetReport {
            self.0.report()
        }
    }
    let mut wa = Wrap(&mut a, Found::Kernel);
    let mut wb = Wrap(&mut b, Found::Inverse);
    let result = run_interleaved(&mut [&mut wa, &mut wb], budget.quantum, None);
    report.absorb(&a.report());
    report.absorb(&b.report());
    let outcome = match result {
        Interleaved::Done { value: Found::Inverse(inverse), .. } => {
            Outcome::Isomorphic { phi: phi.clone(), phi_proofs, inverse }
        }
        Interleaved::Done { value: Found::Kernel(witness), .. } => {
            if !hopfian_asserted {
                Outcome::Inconclusive(InconclusiveReason::KernelWithoutHopfian(Box::new(witness)))
            } else {
                match surjection(&codomain, phi, preimages, &mut report) {
                    Some(surjection) => Outcome::NotIsomorphic(Certificate::Kernel {
                        phi: phi.clone(),
                        phi_proofs,
                        surjection,
                        hopfian_asserted,
                        witness,
                    }),
                    None => Outcome::Inconclusive(InconclusiveReason::SurjectivityUnproven),
                }
            }
        }
        Interleaved::AllExhausted => Outcome::Inconclusive(InconclusiveReason::BothExhausted),
    };
    Decision { outcome, report }
}
