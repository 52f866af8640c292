//! Artin braid groups `B_n`: words in the generators `σ_1 … σ_{n-1}`,
//! their images in the symmetric group, the Garside left normal form that
//! decides the word problem, Markov moves and closures.
//!
//! Composition convention: a word is read left to right, and the letter
//! `σ_i` swaps the strands sitting at positions `i` and `i + 1`. The
//! permutation of a word records, for each final position, which strand
//! ends up there (see [`Permutation`]).

mod code;
mod garside;
mod markov;
mod permutation;

pub use code::{insert_relator, GroupCode};
pub use garside::{left_normal_form, words_equal, GarsideNormalForm};
pub use markov::{braid_cobordism, closure_summary, markov_move, BraidCobordism, ClosureSummary, MarkovMove};
pub use permutation::Permutation;

use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraidError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("letter {letter} at position {position} is outside 1..={max} for {strands} strands")]
    LetterOutOfRange {
        letter: i64,
        position: usize,
        max: usize,
        strands: usize,
    },
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("relator index {index} out of range (code has {count} relators)")]
    RelatorOutOfRange { index: usize, count: usize },
    #[error("insertion position {position} exceeds word length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("relator {index} does not fit the word: {reason}")]
    IncompatibleCode { index: usize, reason: &'static str },
    #[error("cannot destabilize: {reason}; offending letters {letters:?}")]
    Destabilize { reason: &'static str, letters: Vec<i64> },
    #[error("images do not form a permutation of 1..={0}")]
    NotAPermutation(usize),
}

/// `σ_index` when `positive`, `σ_index^{-1}` otherwise. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub positive: bool,
}

impl Letter {
    pub const fn pos(index: usize) -> Self {
        Letter { index, positive: true }
    }

    pub const fn neg(index: usize) -> Self {
        Letter { index, positive: false }
    }

    /// `3` is `σ_3`, `-3` is `σ_3^{-1}`. Zero has no meaning and gives `None`.
    pub fn from_signed(value: i64) -> Option<Self> {
        match value {
            0 => None,
            v => Some(Letter {
                index: v.unsigned_abs() as usize,
                positive: v > 0,
            }),
        }
    }

    pub fn to_signed(self) -> i64 {
        let i = self.index as i64;
        if self.positive {
            i
        } else {
            -i
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            index: self.index,
            positive: !self.positive,
        }
    }

    pub fn sign(self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }
}

/// A word in the Artin generators on a fixed number of strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for (position, l) in letters.iter().enumerate() {
            if l.index == 0 || l.index >= strands {
                return Err(BraidError::LetterOutOfRange {
                    letter: l.to_signed(),
                    position,
                    max: strands - 1,
                    strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Builds a word from signed generator indices such as `[1, 2, -1]`.
    pub fn from_signed(strands: usize, letters: &[i64]) -> Result<Self, BraidError> {
        let mut out = Vec::with_capacity(letters.len());
        for (position, &v) in letters.iter().enumerate() {
            match Letter::from_signed(v) {
                Some(l) => out.push(l),
                None => {
                    return Err(BraidError::LetterOutOfRange {
                        letter: v,
                        position,
                        max: strands.saturating_sub(1),
                        strands,
                    })
                }
            }
        }
        Self::new(strands, out)
    }

    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    /// The positive half twist `Δ = (σ_1 σ_2 ⋯ σ_{n-1})(σ_1 ⋯ σ_{n-2})⋯(σ_1)`.
    pub fn half_twist(strands: usize) -> Result<Self, BraidError> {
        let mut letters = Vec::new();
        for top in (1..strands).rev() {
            letters.extend((1..=top).map(Letter::pos));
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
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

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &BraidWord) -> Result<Self, BraidError> {
        self.same_strands(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn pow(&self, exponent: i64) -> Self {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    pub(crate) fn same_strands(&self, other: &BraidWord) -> Result<(), BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        Ok(())
    }

    pub fn permutation(&self) -> Permutation {
        permutation_of(self)
    }
}

impl fmt::Display for BraidWord {
    /// Space separated signed indices, e.g. `1 2 -1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l.to_signed())?;
        }
        Ok(())
    }
}

/// Cancels adjacent `σ_i σ_i^{-1}` and `σ_i^{-1} σ_i` pairs until none remain.
pub fn free_reduce(w: &BraidWord) -> BraidWord {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.letters {
        if stack.last() == Some(&l.inverse()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    BraidWord {
        strands: w.strands,
        letters: stack,
    }
}

/// Image of the word in the symmetric group, signs ignored.
pub fn permutation_of(w: &BraidWord) -> Permutation {
    let mut images: Vec<usize> = (0..w.strands).collect();
    for l in &w.letters {
        images.swap(l.index - 1, l.index);
    }
    Permutation::from_zero_based(images)
}

/// Pure braids are exactly the kernel of `B_n → S_n`.
pub fn is_pure(w: &BraidWord) -> bool {
    permutation_of(w).is_identity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(n: usize, l: &[i64]) -> BraidWord {
        BraidWord::from_signed(n, l).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(BraidWord::from_signed(0, &[]), Err(BraidError::NoStrands));
        assert!(matches!(
            BraidWord::from_signed(3, &[1, 3]),
            Err(BraidError::LetterOutOfRange {
                letter: 3,
                position: 1,
                ..
            })
        ));
        assert!(BraidWord::from_signed(3, &[0]).is_err());
        assert!(BraidWord::from_signed(1, &[]).is_ok());
        assert!(BraidWord::from_signed(1, &[1]).is_err());
    }

    #[test]
    fn free_reduction_examples() {
        assert!(free_reduce(&w(2, &[1, -1])).is_empty());
        assert!(free_reduce(&w(3, &[1, 2, -2, -1])).is_empty());
        let u = w(3, &[1, 2, 1]);
        assert!(u.letters().windows(2).all(|p| p[0] != p[1].inverse()));
        assert_eq!(free_reduce(&u), u);
        assert_eq!(free_reduce(&w(3, &[2, 1, -1, 1, -2])).to_signed(), vec![2, 1, -2]);
    }

    #[test]
    fn permutation_examples() {
        assert!(permutation_of(&w(3, &[])).is_identity());
        assert_eq!(permutation_of(&w(2, &[1])).images(), vec![2, 1]);
        // (1 2) then (2 3): 1→2→3→1.
        assert_eq!(permutation_of(&w(3, &[1, 2])).images(), vec![2, 3, 1]);
        assert_eq!(permutation_of(&w(3, &[-1, 2])), permutation_of(&w(3, &[1, -2])));
    }

    #[test]
    fn purity() {
        assert!(is_pure(&w(2, &[1, 1])));
        assert!(!is_pure(&w(2, &[1])));
        assert!(is_pure(&w(5, &[])));
        assert!(is_pure(&w(3, &[1, 2, 1, 1, 2, 1])));
    }

    #[test]
    fn half_twist_word() {
        assert_eq!(BraidWord::half_twist(3).unwrap().to_signed(), vec![1, 2, 1]);
        assert_eq!(BraidWord::half_twist(4).unwrap().len(), 6);
        assert!(BraidWord::half_twist(1).unwrap().is_empty());
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", w(3, &[1, 2, -1])), "1 2 -1");
        assert_eq!(alloc::format!("{}", w(3, &[])), "");
    }
}
