use std::fmt;

use serde::{Deserialize, Serialize};

/// A generator or its inverse.
///
/// Stored as `±(g + 1)` so that generator 0 still has a distinct inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(i32);

impl Letter {
    pub fn gen(g: usize) -> Self {
        Letter(g as i32 + 1)
    }

    pub fn inv(g: usize) -> Self {
        Letter(-(g as i32) - 1)
    }

    /// Builds a letter from its signed encoding; `None` for 0.
    pub fn from_signed(v: i32) -> Option<Self> {
        (v != 0).then_some(Letter(v))
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }
}

/// A word in the free group (or free product of C2's) on the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// Word made of positive generator letters, e.g. `Word::gens(&[0, 1])` is `g0 g1`.
    pub fn gens(gens: &[usize]) -> Self {
        Word::new(gens.iter().map(|&g| Letter::gen(g)).collect())
    }

    pub fn letter(l: Letter) -> Self {
        Word::new(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        self.letters.iter().copied()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Formal inverse: reversed, every letter inverted.
    pub fn inverse(&self) -> Word {
        Word::new(self.letters.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `n`-th power (`n ≥ 0`) without reduction.
    pub fn pow(&self, n: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        Word { letters }
    }

    /// Highest generator index used, plus one.
    pub fn min_rank(&self) -> usize {
        self.letters.iter().map(|l| l.generator() + 1).max().unwrap_or(0)
    }

    /// Cyclic rotation starting at letter `k`.
    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(k % self.len());
        }
        Word { letters }
    }

    /// Returns `(base, exponent)` with `self == base^exponent` and `base` primitive.
    pub fn primitive_root(&self) -> (Word, usize) {
        let n = self.len();
        if n == 0 {
            return (Word::empty(), 1);
        }
        for p in 1..=n {
            if n % p == 0 && (p..n).all(|i| self.letters[i] == self.letters[i - p]) {
                return (Word::new(self.letters[..p].to_vec()), n / p);
            }
        }
        unreachable!()
    }

    /// Renders the word with the given generator names; inverses get a trailing `'`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "g{}", l.generator())?;
            if l.is_inverse() {
                write!(f, "'")?;
            }
        }
        Ok(())
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match self.names.get(l.generator()) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "g{}", l.generator())?,
            }
            if l.is_inverse() {
                write!(f, "'")?;
            }
        }
        Ok(())
    }
}

/// Free reduction.
///
/// Cancels adjacent `x x⁻¹` pairs. For generators flagged involutive the
/// inverse letter is first replaced by the generator itself, so the result
/// contains no negative letters for them and no adjacent equal pair.
pub fn free_reduce(w: &Word, involutive: &[bool]) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for l in w.iter() {
        let g = l.generator();
        let l = if involutive.get(g).copied().unwrap_or(false) { Letter::gen(g) } else { l };
        match out.last() {
            Some(&prev) if prev == l.inverse() => {
                out.pop();
            }
            Some(&prev) if prev == l && involutive.get(g).copied().unwrap_or(false) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word::new(out)
}

/// Cyclic reduction of an already freely reduced word.
pub fn cyclic_reduce(w: &Word, involutive: &[bool]) -> Word {
    let w = free_reduce(w, involutive);
    let letters = w.letters();
    let (mut i, mut j) = (0usize, letters.len());
    while j - i >= 2 {
        let (first, last) = (letters[i], letters[j - 1]);
        let cancels = first == last.inverse()
            || (first == last && involutive.get(first.generator()).copied().unwrap_or(false));
        if !cancels {
            break;
        }
        i += 1;
        j -= 1;
    }
    Word::new(letters[i..j].to_vec())
}

/// `y⁻¹ x y`, freely reduced.
pub fn conjugate(x: &Word, y: &Word, involutive: &[bool]) -> Word {
    free_reduce(&y.inverse().concat(x).concat(y), involutive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ALL_INV: [bool; 6] = [true; 6];
    const NONE_INV: [bool; 6] = [false; 6];

    #[test]
    fn cancels_inverse_pair() {
        let w = Word::new(vec![Letter::gen(0), Letter::inv(0)]);
        assert!(free_reduce(&w, &NONE_INV).is_empty());
    }

    #[test]
    fn cancels_involution_square() {
        assert!(free_reduce(&Word::gens(&[0, 0]), &ALL_INV).is_empty());
        assert_eq!(free_reduce(&Word::gens(&[0, 0]), &NONE_INV).len(), 2);
    }

    #[test]
    fn nested_cancellation() {
        // d⁻¹ c⁻¹ c d b -> b
        let w = Word::new(vec![Letter::inv(3), Letter::inv(2), Letter::gen(2), Letter::gen(3), Letter::gen(1)]);
        assert_eq!(free_reduce(&w, &NONE_INV), Word::gens(&[1]));
        assert_eq!(free_reduce(&w, &ALL_INV), Word::gens(&[1]));
    }

    #[test]
    fn involutive_inverses_become_positive() {
        let w = Word::new(vec![Letter::inv(2), Letter::gen(1)]);
        assert_eq!(free_reduce(&w, &ALL_INV), Word::gens(&[2, 1]));
    }

    #[test]
    fn conjugation_matches_sigma_and_tau() {
        let (b, c, d, e) = (1, 2, 3, 4);
        let sigma = conjugate(&Word::gens(&[d]), &Word::gens(&[c, b]), &ALL_INV);
        assert_eq!(sigma, Word::gens(&[b, c, d, c, b]));
        let tau = conjugate(&Word::gens(&[c]), &Word::gens(&[d, e]), &ALL_INV);
        assert_eq!(tau, Word::gens(&[e, d, c, d, e]));
        let x = Word::gens(&[0, 2]);
        assert_eq!(conjugate(&x, &Word::empty(), &ALL_INV), x);
    }

    #[test]
    fn primitive_root_of_power() {
        let base = Word::gens(&[0, 1, 2]);
        let (root, k) = base.pow(4).primitive_root();
        assert_eq!((root, k), (base, 4));
        let (root, k) = Word::gens(&[0, 1, 0]).primitive_root();
        assert_eq!((root.len(), k), (3, 1));
    }

    #[test]
    fn cyclic_reduction() {
        let w = Word::new(vec![Letter::inv(1), Letter::gen(0), Letter::gen(1)]);
        assert_eq!(cyclic_reduce(&w, &NONE_INV), Word::gens(&[0]));
        assert_eq!(cyclic_reduce(&Word::gens(&[1, 0, 1]), &ALL_INV), Word::gens(&[0]));
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..4, any::<bool>()), 0..24).prop_map(|v| {
            v.into_iter().map(|(g, inv)| if inv { Letter::inv(g) } else { Letter::gen(g) }).collect()
        })
    }

    fn flags() -> impl Strategy<Value = Vec<bool>> {
        prop::collection::vec(any::<bool>(), 4)
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent_and_shrinks(w in arb_word(), inv in flags()) {
            let r = free_reduce(&w, &inv);
            prop_assert!(r.len() <= w.len());
            prop_assert_eq!(free_reduce(&r, &inv), r.clone());
            for pair in r.letters().windows(2) {
                prop_assert_ne!(pair[0], pair[1].inverse());
                if inv[pair[0].generator()] {
                    prop_assert_ne!(pair[0], pair[1]);
                }
            }
            for l in r.iter() {
                prop_assert!(!(inv[l.generator()] && l.is_inverse()));
            }
        }

        #[test]
        fn conjugate_length_bound(x in arb_word(), y in arb_word(), inv in flags()) {
            let c = conjugate(&x, &y, &inv);
            prop_assert!(c.len() <= x.len() + 2 * y.len());
        }

        #[test]
        fn word_times_inverse_reduces_to_empty(w in arb_word(), inv in flags()) {
            prop_assert!(free_reduce(&w.concat(&w.inverse()), &inv).is_empty());
        }
    }
}
