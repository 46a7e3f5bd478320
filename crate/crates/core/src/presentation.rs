//! Finitely presented groups and their abelianization invariants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{smith_normal_form, SmithForm};
use crate::words::{Word, WordError};
use crate::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("relator {index}: {source}")]
    Relator { index: usize, source: WordError },
    #[error("duplicate generator name '{0}'")]
    DuplicateName(String),
    #[error("empty generator name")]
    EmptyName,
}

/// `<g_1, ..., g_m | r_1, ..., r_s>`.
///
/// Relators are stored cyclically reduced and nonempty: relators that reduce
/// to the identity are dropped at construction, so an empty relator list
/// presents the free group of rank `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

/// Conventional names for free-group generators: `x, y, z` up to rank 3,
/// `x1, ..., xn` beyond.
pub fn standard_names(rank: usize) -> Vec<String> {
    if rank <= 3 {
        ["x", "y", "z"][..rank].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=rank).map(|i| format!("x{i}")).collect()
    }
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(PresentationError::EmptyName);
            }
            if names[..i].contains(n) {
                return Err(PresentationError::DuplicateName(n.clone()));
            }
        }
        let m = names.len();
        let mut stored = Vec::with_capacity(relators.len());
        for (index, r) in relators.into_iter().enumerate() {
            r.check_rank(m).map_err(|source| PresentationError::Relator { index, source })?;
            let (core, _) = r.cyclically_reduce();
            if !core.is_identity() {
                stored.push(core);
            }
        }
        Ok(Presentation { names, relators: stored })
    }

    /// The free group of rank `n` with [`standard_names`].
    pub fn free(n: usize) -> Self {
        Presentation { names: standard_names(n), relators: Vec::new() }
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    /// Entry `(j, i)` is the exponent sum of generator `i` in relator `j`.
    pub fn relator_matrix(&self) -> IntMatrix {
        let m = self.num_generators();
        IntMatrix::from_rows(
            m,
            self.relators
                .iter()
                .map(|r| r.exponent_sums(m).into_iter().map(BigInt::from).collect())
                .collect(),
        )
    }

    pub fn abelianization(&self) -> Abelianization {
        Abelianization::new(self)
    }

    pub fn abelian_invariants(&self) -> AbelianInvariants {
        self.abelianization().invariants().clone()
    }

    /// Sound obstruction: `F_n` abelianizes to `Z^n`.
    pub fn free_rank_filter(&self, n: usize) -> RankFilter {
        let inv = self.abelian_invariants();
        if inv.torsion.is_empty() && inv.free_rank == n {
            RankFilter::Pass
        } else {
            RankFilter::Fail(AbelianMismatch { target_rank: n, found: inv })
        }
    }
}

/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `d_i >= 2` and `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn is_free_abelian_of_rank(&self, n: usize) -> bool {
        self.torsion.is_empty() && self.free_rank == n
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianMismatch {
    pub target_rank: usize,
    pub found: AbelianInvariants,
}

impl fmt::Display for AbelianMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.found.torsion.is_empty() {
            write!(f, "abelianization {} has torsion", self.found)
        } else {
            write!(f, "abelianization has free rank {} != {}", self.found.free_rank, self.target_rank)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankFilter {
    Pass,
    Fail(AbelianMismatch),
}

/// A homomorphism `Z^m -> Z` (modulus 0) or `Z^m -> Z/modulus` given by
/// dot product with `coefficients`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub coefficients: Vec<BigInt>,
    pub modulus: BigInt,
}

impl Character {
    pub fn evaluate(&self, v: &[BigInt]) -> BigInt {
        let s = self
            .coefficients
            .iter()
            .zip(v)
            .fold(BigInt::zero(), |acc, (c, x)| acc + c * x);
        if self.modulus.is_zero() {
            s
        } else {
            s.mod_floor(&self.modulus)
        }
    }
}

/// The relator lattice `L <= Z^m` together with its Smith form, answering
/// membership questions in `Z^m / L`.
#[derive(Clone, Debug)]
pub struct Abelianization {
    rank: usize,
    form: SmithForm<BigInt>,
    invariants: AbelianInvariants,
}

impl Abelianization {
    pub fn new(p: &Presentation) -> Self {
        let a = p.relator_matrix();
        let form = smith_normal_form(&a);
        let diag = form.diagonal();
        let nonzero: Vec<&BigInt> = diag.iter().filter(|d| !d.is_zero()).collect();
        let invariants = AbelianInvariants {
            free_rank: p.num_generators() - nonzero.len(),
            torsion: nonzero.into_iter().filter(|d| !d.is_one()).cloned().collect(),
        };
        Abelianization { rank: p.num_generators(), form, invariants }
    }

    pub fn invariants(&self) -> &AbelianInvariants {
        &self.invariants
    }

    pub fn smith_form(&self) -> &SmithForm<BigInt> {
        &self.form
    }

    /// Returns a character vanishing on the relator lattice but not on `v`,
    /// or `None` when `v` lies in the lattice.
    pub fn separating_character(&self, v: &[BigInt]) -> Option<Character> {
        assert_eq!(v.len(), self.rank);
        // v is in the row space of A iff vV is in the row space of D.
        let coords = self.form.v.left_apply(v);
        let diag = self.form.diagonal();
        for (i, c) in coords.iter().enumerate() {
            let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            let outside = if d.is_zero() { !c.is_zero() } else { !c.is_multiple_of(&d) };
            if outside {
                return Some(Character { coefficients: self.form.v.column(i), modulus: d.abs() });
            }
        }
        None
    }
}
