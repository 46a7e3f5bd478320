//! Nontriviality detected in the abelianization.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::presentation::{Abelianization, Character};
use crate::words::Word;

/// `image` is the exponent-sum vector of the word; `character` vanishes on
/// every relator but not on `image`. Both facts are checkable by dot
/// products alone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianImage {
    pub image: Vec<BigInt>,
    pub character: Character,
}

impl AbelianImage {
    /// Recomputes every claim from scratch against `relators`.
    pub fn check(&self, relators: &[Word], w: &Word) -> bool {
        let rank = self.image.len();
        if self.character.coefficients.len() != rank || w.check_rank(rank).is_err() {
            return false;
        }
        let image: Vec<BigInt> = w.exponent_sums(rank).into_iter().map(BigInt::from).collect();
        if image != self.image {
            return false;
        }
        let kills_relators = relators.iter().all(|r| {
            r.check_rank(rank).is_ok() && {
                let v: Vec<BigInt> = r.exponent_sums(rank).into_iter().map(BigInt::from).collect();
                self.character.evaluate(&v).is_zero()
            }
        });
        kills_relators && !self.character.evaluate(&image).is_zero()
    }
}

/// Certifies `w` nontrivial when its image in the abelianization is nonzero.
pub fn abelian_no_part(ab: &Abelianization, rank: usize, w: &Word) -> Option<AbelianImage> {
    let image: Vec<BigInt> = w.exponent_sums(rank).into_iter().map(BigInt::from).collect();
    let character = ab.separating_character(&image)?;
    Some(AbelianImage { image, character })
}
