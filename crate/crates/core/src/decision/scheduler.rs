//! Deterministic round-robin interleaving of resumable semi-deciders.

use crate::budget::BudgetReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step<T> {
    Pending,
    Done(T),
    Exhausted,
}

/// A search that advances one unit of work per [`SemiDecider::step`].
pub trait SemiDecider {
    type Output;

    fn step(&mut self) -> Step<Self::Output>;

    fn report(&self) -> BudgetReport;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Interleaved<T> {
    Done { index: usize, value: T },
    AllExhausted,
}

/// Steps each live procedure `quantum` times per round, in index order,
/// until one finishes or all are exhausted. Within a round the lowest index
/// reaching `Done` wins. `trace`, if given, records the index of every step.
pub fn run_interleaved<T>(
    procs: &mut [&mut dyn SemiDecider<Output = T>],
    quantum: usize,
    mut trace: Option<&mut Vec<usize>>,
) -> Interleaved<T> {
    assert!(quantum >= 1, "quantum must be positive");
    let mut live = vec![true; procs.len()];
    while live.iter().any(|&l| l) {
        for (i, p) in procs.iter_mut().enumerate() {
            if !live[i] {
                continue;
            }
            for _ in 0..quantum {
                if let Some(t) = trace.as_deref_mut() {
                    t.push(i);
                }
                match p.step() {
                    Step::Pending => {}
                    Step::Done(value) => return Interleaved::Done { index: i, value },
                    Step::Exhausted => {
                        live[i] = false;
                        break;
                    }
                }
            }
        }
    }
    Interleaved::AllExhausted
}
