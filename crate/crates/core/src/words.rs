//! Free-group words: letters, free reduction, and canonical enumeration.
//!
//! A [`Word`] is always freely reduced, so structural equality of words is
//! equality in the free group. The alphabet rank is not stored in the word;
//! callers validate it at module boundaries with [`Word::check_rank`].
//!
//! Letters are ordered `x_1 < x_1^-1 < x_2 < x_2^-1 < ...` and words are
//! ordered shortlex (length first, then lexicographically by letter). Every
//! enumeration in the crate uses this order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter references generator {generator} but the alphabet has rank {rank}")]
    RankMismatch { generator: usize, rank: usize },
}

/// Index of a generator in an alphabet of rank `n` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId(pub u32);

impl GeneratorId {
    pub fn new(index: usize) -> Self {
        GeneratorId(u32::try_from(index).expect("generator index overflows u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A generator or its formal inverse.
///
/// The derived ordering (generator first, then `inverse = false` before
/// `true`) is the canonical letter order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: GeneratorId,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen: GeneratorId::new(gen), inverse }
    }

    pub fn pos(gen: usize) -> Self {
        Letter::new(gen, false)
    }

    pub fn neg(gen: usize) -> Self {
        Letter::new(gen, true)
    }

    pub fn gen_index(self) -> usize {
        self.gen.index()
    }

    /// `+1` for a generator, `-1` for an inverse.
    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }

    /// Position of this letter in the canonical letter order.
    pub fn key(self) -> usize {
        2 * self.gen.index() + usize::from(self.inverse)
    }

    pub fn from_key(key: usize) -> Self {
        Letter::new(key / 2, key % 2 == 1)
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(letter: Letter) -> Self {
        Word(vec![letter])
    }

    pub fn generator(gen: usize) -> Self {
        Word(vec![Letter::pos(gen)])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|&last| last.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Wraps letters that are already known to be freely reduced.
    ///
    /// Returns `None` if the sequence contains a cancelling pair.
    pub fn from_reduced(letters: Vec<Letter>) -> Option<Self> {
        if letters.windows(2).any(|p| p[0].cancels(p[1])) {
            None
        } else {
            Some(Word(letters))
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        // Only the seam between the two reduced words can cancel.
        let mut k = 0;
        while k < self.0.len() && k < other.0.len() && self.0[self.0.len() - 1 - k].cancels(other.0[k]) {
            k += 1;
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len() - 2 * k);
        out.extend_from_slice(&self.0[..self.0.len() - k]);
        out.extend_from_slice(&other.0[k..]);
        Word(out)
    }

    pub fn pow(&self, exponent: i64) -> Self {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..exponent.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `c * self * c^-1`
    pub fn conjugate_by(&self, c: &Word) -> Self {
        c.concat(self).concat(&c.inverse())
    }

    /// `a * b * a^-1 * b^-1`
    pub fn commutator(a: &Word, b: &Word) -> Self {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Splits `self` as `conjugator * core * conjugator^-1` with `core`
    /// cyclically reduced.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let n = self.0.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[k].cancels(self.0[n - 1 - k]) {
            k += 1;
        }
        (Word(self.0[k..n - k].to_vec()), Word(self.0[..k].to_vec()))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(f), Some(l)) if self.0.len() > 1 => !f.cancels(*l),
            _ => true,
        }
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen_index()).max()
    }

    pub fn check_rank(&self, rank: usize) -> Result<(), WordError> {
        match self.max_generator() {
            Some(g) if g >= rank => Err(WordError::RankMismatch { generator: g, rank }),
            _ => Ok(()),
        }
    }

    /// Replaces each letter `x_i^{±1}` by `images[i]^{±1}` and reduces.
    pub fn substitute(&self, images: &[Word]) -> Result<Word, WordError> {
        self.check_rank(images.len())?;
        let mut out: Vec<Letter> = Vec::new();
        for l in &self.0 {
            let image = &images[l.gen_index()];
            let push = |out: &mut Vec<Letter>, x: Letter| {
                if out.last().is_some_and(|&last| last.cancels(x)) {
                    out.pop();
                } else {
                    out.push(x);
                }
            };
            if l.inverse {
                for &x in image.0.iter().rev() {
                    push(&mut out, x.inverted());
                }
            } else {
                for &x in &image.0 {
                    push(&mut out, x);
                }
            }
        }
        Ok(Word(out))
    }

    /// Exponent sum of each generator `0..rank`.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0i64; rank];
        for l in &self.0 {
            sums[l.gen_index()] += i64::from(l.sign());
        }
        sums
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl From<Letter> for Word {
    fn from(l: Letter) -> Self {
        Word::letter(l)
    }
}

impl fmt::Display for Word {
    /// Debug-oriented rendering with anonymous generator names `x1, x2, ...`.
    /// Named rendering lives in [`crate::text`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{}", l.gen_index() + 1)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// Serialized as a signed 1-based generator number: `x_2^-1` is `-2`.
impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.gen_index() as i64 + 1;
        s.serialize_i64(if self.inverse { -n } else { n })
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = i64::deserialize(d)?;
        if n == 0 || n.unsigned_abs() > u64::from(u32::MAX) {
            return Err(de::Error::custom(format!("invalid letter code {n}")));
        }
        Ok(Letter::new(n.unsigned_abs() as usize - 1, n < 0))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let letters = Vec::<Letter>::deserialize(d)?;
        Word::from_reduced(letters).ok_or_else(|| de::Error::custom("word is not freely reduced"))
    }
}

/// Shortlex successor machinery shared by word and tuple enumeration.
fn smallest_letter_after(prev: Option<Letter>, rank: usize, from_key: usize) -> Option<Letter> {
    (from_key..2 * rank)
        .map(Letter::from_key)
        .find(|&l| !prev.is_some_and(|p| p.cancels(l)))
}

/// Iterator over all reduced words of length `<= max_length`, in shortlex
/// order, each exactly once.
#[derive(Clone, Debug)]
pub struct WordEnumerator {
    rank: usize,
    max_length: usize,
    current: Option<Vec<Letter>>,
}

impl WordEnumerator {
    fn first_of_length(rank: usize, len: usize) -> Option<Vec<Letter>> {
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            let l = smallest_letter_after(out.last().copied(), rank, 0)?;
            out.push(l);
        }
        Some(out)
    }

    fn successor(&self, word: &[Letter]) -> Option<Vec<Letter>> {
        let mut w = word.to_vec();
        // Rightmost position that can be bumped to a larger letter.
        for i in (0..w.len()).rev() {
            let prev = if i == 0 { None } else { Some(w[i - 1]) };
            if let Some(l) = smallest_letter_after(prev, self.rank, w[i].key() + 1) {
                w[i] = l;
                for j in i + 1..w.len() {
                    w[j] = smallest_letter_after(Some(w[j - 1]), self.rank, 0)?;
                }
                return Some(w);
            }
        }
        let next_len = word.len() + 1;
        if next_len > self.max_length {
            return None;
        }
        Self::first_of_length(self.rank, next_len)
    }
}

impl Iterator for WordEnumerator {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.current.take()?;
        self.current = self.successor(&current);
        Some(Word(current))
    }
}

/// All reduced words over `rank` generators of length at most `max_length`,
/// in shortlex order.
pub fn enumerate_words(rank: usize, max_length: usize) -> WordEnumerator {
    WordEnumerator { rank, max_length, current: Some(Vec::new()) }
}

/// Reduced words of each length `0..=max_length`, each class in shortlex order.
pub fn words_by_length(rank: usize, max_length: usize) -> Vec<Vec<Word>> {
    let mut classes = vec![Vec::new(); max_length + 1];
    for w in enumerate_words(rank, max_length) {
        classes[w.len()].push(w);
    }
    classes
}

/// Iterator over `arity`-tuples of reduced words, each component of length
/// at most `max_length`.
///
/// Order: by the longest component length, then by total length, then
/// lexicographically by component in shortlex. Raising `max_length` only
/// appends tuples, so every bounded run is a prefix of every larger one.
#[derive(Clone, Debug)]
pub struct TupleEnumerator {
    arity: usize,
    max_length: usize,
    classes: Vec<Vec<Word>>,
    level: usize,
    total: usize,
    // (length, index into classes[length]) per component
    state: Option<Vec<(usize, usize)>>,
    done: bool,
}

impl TupleEnumerator {
    pub fn new(rank: usize, arity: usize, max_length: usize) -> Self {
        let classes = words_by_length(rank, max_length);
        let mut e = TupleEnumerator { arity, max_length, classes, level: 0, total: 0, state: None, done: false };
        e.state = e.first_in_class();
        if e.state.is_none() {
            e.advance_class();
        }
        e
    }

    fn available(&self, len: usize) -> bool {
        len <= self.max_length && !self.classes[len].is_empty()
    }

    /// Whether component `pos` may take length `len` given the remaining total
    /// and whether the level has already been attained.
    fn feasible(&self, pos: usize, len: usize, remaining: usize, has_level: bool) -> bool {
        if len > self.level || len > remaining || !self.available(len) {
            return false;
        }
        let rest = self.arity - pos - 1;
        let rem = remaining - len;
        let has = has_level || len == self.level;
        if rest == 0 {
            rem == 0 && has
        } else {
            rem <= rest * self.level && (has || rem >= self.level)
        }
    }

    fn fill_from(&self, state: &mut Vec<(usize, usize)>, pos: usize) -> bool {
        state.truncate(pos);
        let mut used: usize = state.iter().map(|s| s.0).sum();
        let mut has = state.iter().any(|s| s.0 == self.level);
        for p in pos..self.arity {
            let remaining = self.total - used;
            let Some(len) = (0..=self.level).find(|&l| self.feasible(p, l, remaining, has)) else {
                return false;
            };
            state.push((len, 0));
            used += len;
            has |= len == self.level;
        }
        true
    }

    fn first_in_class(&self) -> Option<Vec<(usize, usize)>> {
        if self.arity == 0 {
            return (self.level == 0 && self.total == 0).then(Vec::new);
        }
        let mut state = Vec::with_capacity(self.arity);
        self.fill_from(&mut state, 0).then_some(state)
    }

    fn advance_class(&mut self) {
        loop {
            let max_total = self.arity * self.level;
            if self.total < max_total {
                self.total += 1;
            } else {
                if self.level >= self.max_length || self.arity == 0 {
                    self.done = true;
                    return;
                }
                self.level += 1;
                self.total = self.level;
            }
            if let Some(s) = self.first_in_class() {
                self.state = Some(s);
                return;
            }
        }
    }

    fn successor_in_class(&self, state: &[(usize, usize)]) -> Option<Vec<(usize, usize)>> {
        for pos in (0..state.len()).rev() {
            let (len, idx) = state[pos];
            let mut next = state[..=pos].to_vec();
            if idx + 1 < self.classes[len].len() {
                next[pos] = (len, idx + 1);
                if self.fill_from(&mut next, pos + 1) {
                    return Some(next);
                }
            }
            let used: usize = state[..pos].iter().map(|s| s.0).sum();
            let has = state[..pos].iter().any(|s| s.0 == self.level);
            let remaining = self.total - used;
            for l in len + 1..=self.level {
                if self.feasible(pos, l, remaining, has) {
                    next[pos] = (l, 0);
                    if self.fill_from(&mut next, pos + 1) {
                        return Some(next);
                    }
                }
            }
        }
        None
    }
}

impl Iterator for TupleEnumerator {
    type Item = Vec<Word>;

    fn next(&mut self) -> Option<Vec<Word>> {
        if self.done {
            return None;
        }
        let state = self.state.take()?;
        let tuple = state.iter().map(|&(len, idx)| self.classes[len][idx].clone()).collect();
        match self.successor_in_class(&state) {
            Some(s) => self.state = Some(s),
            None => self.advance_class(),
        }
        Some(tuple)
    }
}

/// See [`TupleEnumerator`].
pub fn enumerate_tuples(rank: usize, arity: usize, max_length: usize) -> TupleEnumerator {
    TupleEnumerator::new(rank, arity, max_length)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Letter {
        Letter::pos(0)
    }
    fn xi() -> Letter {
        Letter::neg(0)
    }
    fn y() -> Letter {
        Letter::pos(1)
    }
    fn yi() -> Letter {
        Letter::neg(1)
    }
    fn z() -> Letter {
        Letter::pos(2)
    }
    fn w(ls: &[Letter]) -> Word {
        Word::reduce(ls.iter().copied())
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w(&[x(), xi()]), Word::identity());
        assert_eq!(w(&[x(), y(), yi(), x()]).letters(), &[x(), x()]);
        assert_eq!(w(&[yi(), x(), xi(), y(), z()]).letters(), &[z()]);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w(&[x(), y()]).inverse().letters(), &[yi(), xi()]);
        assert_eq!(Word::identity().inverse(), Word::identity());
        let a = w(&[x(), y(), xi(), z()]);
        assert!(a.concat(&a.inverse()).is_identity());
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w(&[x(), y()]).concat(&w(&[yi(), z()])).letters(), &[x(), z()]);
        let a = w(&[x(), y()]);
        assert_eq!(a.concat(&Word::identity()), a);
        assert!(a.concat(&a.inverse()).is_identity());
    }

    #[test]
    fn cyclic_reduction_examples() {
        let (core, conj) = w(&[x(), y(), xi()]).cyclically_reduce();
        assert_eq!(core.letters(), &[y()]);
        assert_eq!(conj.letters(), &[x()]);

        let xyx = w(&[x(), y(), x()]);
        assert_eq!(xyx.cyclically_reduce(), (xyx.clone(), Word::identity()));

        let comm = w(&[x(), y(), xi(), yi()]);
        assert_eq!(comm.cyclically_reduce(), (comm.clone(), Word::identity()));

        // x y x^-1 x ... degenerate: a single conjugated letter
        let (core, conj) = w(&[y(), x(), yi()]).cyclically_reduce();
        assert_eq!(core.conjugate_by(&conj), w(&[y(), x(), yi()]));
    }

    #[test]
    fn substitute_examples() {
        // c^-1 a b with a -> x, b -> y, c -> x y
        let word = w(&[Letter::neg(2), Letter::pos(0), Letter::pos(1)]);
        let images = vec![w(&[x()]), w(&[y()]), w(&[x(), y()])];
        assert!(word.substitute(&images).unwrap().is_identity());

        let ident = vec![w(&[x()]), w(&[y()]), w(&[z()])];
        assert_eq!(word.substitute(&ident).unwrap(), word);

        let aaa = w(&[x(), x(), x()]);
        assert_eq!(aaa.substitute(&[w(&[x(), x()])]).unwrap(), Word::generator(0).pow(6));
    }

    #[test]
    fn substitute_rank_mismatch() {
        let word = w(&[z()]);
        assert_eq!(
            word.substitute(&[Word::identity()]),
            Err(WordError::RankMismatch { generator: 2, rank: 1 })
        );
    }

    #[test]
    fn enumeration_prefix_rank_two() {
        let first: Vec<Word> = enumerate_words(2, 3).take(5).collect();
        assert_eq!(first, vec![Word::identity(), w(&[x()]), w(&[xi()]), w(&[y()]), w(&[yi()])]);
    }

    #[test]
    fn enumeration_rank_one() {
        let all: Vec<Word> = enumerate_words(1, 3).collect();
        let expected = vec![
            Word::identity(),
            w(&[x()]),
            w(&[xi()]),
            w(&[x(), x()]),
            w(&[xi(), xi()]),
            w(&[x(), x(), x()]),
            w(&[xi(), xi(), xi()]),
        ];
        assert_eq!(all, expected);
    }

    #[test]
    fn enumeration_count_length_two_rank_two() {
        assert_eq!(enumerate_words(2, 2).filter(|w| w.len() == 2).count(), 12);
    }

    #[test]
    fn enumeration_rank_zero_is_identity_only() {
        assert_eq!(enumerate_words(0, 4).collect::<Vec<_>>(), vec![Word::identity()]);
    }

    #[test]
    fn tuple_order_examples() {
        let tuples: Vec<Vec<Word>> = enumerate_tuples(1, 2, 1).collect();
        let e = Word::identity;
        let expected = vec![
            vec![e(), e()],
            vec![e(), w(&[x()])],
            vec![e(), w(&[xi()])],
            vec![w(&[x()]), e()],
            vec![w(&[xi()]), e()],
            vec![w(&[x()]), w(&[x()])],
            vec![w(&[x()]), w(&[xi()])],
            vec![w(&[xi()]), w(&[x()])],
            vec![w(&[xi()]), w(&[xi()])],
        ];
        assert_eq!(tuples, expected);
    }

    #[test]
    fn tuple_enumeration_zero_arity() {
        let tuples: Vec<Vec<Word>> = enumerate_tuples(2, 0, 3).collect();
        assert_eq!(tuples, vec![Vec::<Word>::new()]);
    }

    #[test]
    fn tuple_enumeration_rank_zero_codomain() {
        let tuples: Vec<Vec<Word>> = enumerate_tuples(0, 2, 3).collect();
        assert_eq!(tuples, vec![vec![Word::identity(), Word::identity()]]);
    }

    #[test]
    fn tuple_enumeration_is_prefix_monotone() {
        let small: Vec<Vec<Word>> = enumerate_tuples(2, 2, 2).collect();
        let large: Vec<Vec<Word>> = enumerate_tuples(2, 2, 3).take(small.len()).collect();
        assert_eq!(small, large);
    }
}
