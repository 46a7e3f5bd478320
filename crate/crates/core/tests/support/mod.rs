//! Shared randomized-test plumbing: a committed seed table and generators.
#![allow(dead_code)]

pub mod props;

use freeiso::{Letter, Word};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One fixed seed per property suite. Changing a seed changes the sampled
/// cases, never the properties.
pub const SEED_TABLE: [(&str, u64); 6] = [
    ("words", 0x5eed_0001_a11c_e5ed),
    ("snf", 0x5eed_0002_d1a9_0a1f),
    ("stallings", 0x5eed_0003_f01d_ed00),
    ("word_problem", 0x5eed_0004_c0de_7a1e),
    ("mutation", 0x5eed_0005_b17f_11b5),
    ("decision", 0x5eed_0006_de1c_1de0),
];

/// Cases per randomized property.
pub const CASES: usize = 256;

pub fn rng(suite: &str) -> ChaCha8Rng {
    let seed = SEED_TABLE.iter().find(|(n, _)| *n == suite).expect("suite listed in SEED_TABLE").1;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_letter(rng: &mut ChaCha8Rng, rank: usize) -> Letter {
    Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5))
}

/// Letters drawn uniformly, not reduced.
pub fn random_letters(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Vec<Letter> {
    (0..len).map(|_| random_letter(rng, rank)).collect()
}

/// A reduced word of length exactly `len`.
pub fn random_reduced(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = random_letter(rng, rank);
        if out.last().is_none_or(|p| !p.cancels(l)) {
            out.push(l);
        }
    }
    Word::from_reduced(out).expect("built reduced")
}

pub fn random_word_up_to(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    random_reduced(rng, rank, len)
}
