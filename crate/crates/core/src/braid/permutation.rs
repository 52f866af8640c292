use alloc::vec::Vec;
use core::fmt;

use super::{BraidError, BraidWord, Letter};

/// A bijection of `{1, …, n}`.
///
/// `images()[p - 1]` is the strand that sits at position `p` after the
/// braid has acted. Products follow word concatenation:
/// `permutation_of(uv) == permutation_of(u).compose(&permutation_of(v))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // zero-based
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    /// The permutation of the half twist `Δ`, which reverses the strands.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            map: (0..n).rev().collect(),
        }
    }

    /// Builds from 1-based images, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self, BraidError> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(BraidError::NotAPermutation(n));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            map: images.iter().map(|v| v - 1).collect(),
        })
    }

    pub(crate) fn from_zero_based(map: Vec<usize>) -> Self {
        Permutation { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.map.iter().map(|v| v + 1).collect()
    }

    /// 1-based image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.map[point - 1] + 1
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `(self ∘ other)(p) = self(other(p))`, the product matching `self` followed by `other` as braids.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.len(), other.len());
        Permutation {
            map: other.map.iter().map(|&p| self.map[p]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = alloc::vec![false; self.len()];
        let mut cycles = 0;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.map[p];
            }
        }
        cycles
    }

    /// Number of inversions, i.e. the crossing count of the permutation braid.
    pub fn inversions(&self) -> usize {
        let n = self.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.map[i] > self.map[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Generators `σ_i` that can start a positive word for this permutation
    /// braid: strands `i` and `i + 1` cross.
    pub fn starting_set(&self) -> Vec<usize> {
        let inv = self.inverse();
        (1..self.len()).filter(|&i| inv.map[i - 1] > inv.map[i]).collect()
    }

    /// Generators `σ_i` that can end a positive word: the strands at final
    /// positions `i` and `i + 1` have crossed.
    pub fn finishing_set(&self) -> Vec<usize> {
        (1..self.len()).filter(|&i| self.map[i - 1] > self.map[i]).collect()
    }

    pub(crate) fn starts_with(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.map[i - 1] > inv.map[i]
    }

    pub(crate) fn finishes_with(&self, i: usize) -> bool {
        self.map[i - 1] > self.map[i]
    }

    /// Right multiplication by the transposition `(i i+1)`.
    pub(crate) fn swap_positions(&mut self, i: usize) {
        self.map.swap(i - 1, i);
    }

    /// Left multiplication by the transposition `(i i+1)`.
    pub(crate) fn swap_values(&mut self, i: usize) {
        for v in self.map.iter_mut() {
            if *v == i - 1 {
                *v = i;
            } else if *v == i {
                *v = i - 1;
            }
        }
    }

    /// Conjugation by the half twist, `σ_i ↦ σ_{n-i}`.
    pub fn flip(&self) -> Permutation {
        let n = self.len();
        Permutation {
            map: (0..n).map(|p| n - 1 - self.map[n - 1 - p]).collect(),
        }
    }

    /// A shortest positive word for the permutation braid, obtained by
    /// bubble sort. Its length equals [`Permutation::inversions`].
    pub fn positive_word(&self) -> BraidWord {
        let mut arr = self.map.clone();
        let mut swaps = Vec::new();
        let n = arr.len();
        for pass in 0..n {
            for j in 0..n.saturating_sub(1 + pass) {
                if arr[j] > arr[j + 1] {
                    arr.swap(j, j + 1);
                    swaps.push(Letter::pos(j + 1));
                }
            }
        }
        swaps.reverse();
        BraidWord::new(n.max(1), swaps).expect("bubble sort emits in-range letters")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, v) in self.map.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::super::permutation_of;
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_images(&[2, 3, 1]).is_ok());
    }

    #[test]
    fn positive_word_round_trip() {
        let p = Permutation::from_images(&[3, 1, 4, 2]).unwrap();
        let word = p.positive_word();
        assert_eq!(word.len(), p.inversions());
        assert_eq!(permutation_of(&word), p);
    }

    #[test]
    fn descent_sets_of_half_twist() {
        let d = Permutation::reversal(4);
        assert_eq!(d.starting_set(), vec![1, 2, 3]);
        assert_eq!(d.finishing_set(), vec![1, 2, 3]);
        assert_eq!(d.inversions(), 6);
        assert_eq!(d.flip(), d);
    }

    #[test]
    fn descent_sets_of_sigma1_sigma2() {
        // σ1σ2 can only start with σ1 and only end with σ2.
        let p = permutation_of(&BraidWord::from_signed(3, &[1, 2]).unwrap());
        assert_eq!(p.starting_set(), vec![1]);
        assert_eq!(p.finishing_set(), vec![2]);
        assert_eq!(p.flip(), permutation_of(&BraidWord::from_signed(3, &[2, 1]).unwrap()));
    }

    #[test]
    fn cycles() {
        assert_eq!(Permutation::identity(4).cycle_count(), 4);
        assert_eq!(Permutation::from_images(&[2, 3, 1]).unwrap().cycle_count(), 1);
        assert_eq!(Permutation::from_images(&[2, 1, 4, 3]).unwrap().cycle_count(), 2);
    }
}
