//! Words over a generating set: free reduction, inversion, commutators.

use alloc::vec::Vec;

/// 0-based position of a generator within its presentation.
pub type GenIndex = usize;

/// A single signed generator occurrence.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub gen: GenIndex,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: GenIndex, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn positive(gen: GenIndex) -> Self {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub fn negative(gen: GenIndex) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// True when `self` and `other` are adjacent-cancelling.
    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }

    /// Signed exponent contribution of this letter.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Packed column code `2*gen + inverse`, shared with coset tables.
    pub fn code(self) -> usize {
        2 * self.gen + usize::from(self.inverse)
    }

    pub fn from_code(code: usize) -> Self {
        Letter {
            gen: code / 2,
            inverse: code % 2 == 1,
        }
    }
}

/// A finite sequence of letters. Not automatically reduced; use
/// [`Word::free_reduce`] to obtain the normal form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// Single positive generator.
    pub fn generator(gen: GenIndex) -> Self {
        Word {
            letters: alloc::vec![Letter::positive(gen)],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    /// Largest generator index referenced, if any.
    pub fn max_gen(&self) -> Option<GenIndex> {
        self.letters.iter().map(|l| l.gen).max()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// The unique freely reduced form. Idempotent and length-nonincreasing.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    /// Strips matching inverse prefix/suffix pairs from a freely reduced word.
    pub fn cyclic_reduce(&self) -> Word {
        debug_assert!(self.is_reduced());
        let mut lo = 0;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo].cancels(self.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word {
            letters: self.letters[lo..hi].to_vec(),
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && (self.letters.len() < 2
                || !self.letters[0].cancels(self.letters[self.letters.len() - 1]))
    }

    /// Reversed sequence with flipped signs; an involution.
    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Plain concatenation, no reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// `self` raised to an integer power, freely reduced.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out.free_reduce()
    }

    /// The commutator `u^-1 v^-1 u v`, freely reduced.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse()
            .concat(&v.inverse())
            .concat(u)
            .concat(v)
            .free_reduce()
    }

    /// Entry `i` is the signed count of occurrences of generator `i`.
    pub fn exponent_vector(&self, gen_count: usize) -> Vec<i64> {
        let mut v = alloc::vec![0i64; gen_count];
        for l in &self.letters {
            v[l.gen] += l.sign();
        }
        v
    }

    /// Rotation starting at `at`, as a new word.
    pub fn rotate(&self, at: usize) -> Word {
        let n = self.letters.len();
        if n == 0 {
            return Word::empty();
        }
        let at = at % n;
        let mut letters = Vec::with_capacity(n);
        letters.extend_from_slice(&self.letters[at..]);
        letters.extend_from_slice(&self.letters[..at]);
        Word { letters }
    }

    /// Lexicographically least rotation of the word or its inverse.
    /// Two relators define the same cyclic relation exactly when their
    /// canonical forms agree.
    pub fn canonical_cyclic(&self) -> Word {
        let n = self.letters.len();
        if n == 0 {
            return Word::empty();
        }
        let mut best: Option<Word> = None;
        for base in [self.clone(), self.inverse()] {
            for i in 0..n {
                let cand = base.rotate(i);
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        best.unwrap()
    }
}

impl core::ops::Index<usize> for Word {
    type Output = Letter;
    fn index(&self, i: usize) -> &Letter {
        &self.letters[i]
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word {
            letters: iter.into_iter().collect(),
        }
    }
}
