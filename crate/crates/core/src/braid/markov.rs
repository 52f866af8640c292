use alloc::vec::Vec;

use super::{free_reduce, permutation_of, BraidError, BraidWord, Letter, Permutation};

/// Orientation-independent data of the closed braid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClosureSummary {
    /// Link components, the cycle count of the underlying permutation.
    pub components: usize,
    pub exponent_sum: i64,
    pub strands: usize,
}

/// The braid as a cobordism between two `n`-point sets: `n` disjoint
/// intervals, interval `i` running from `(i, 0, 1)` to `(r(i), 0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidCobordism {
    pub intervals: usize,
    pub top: Vec<[i64; 3]>,
    pub bottom: Vec<[i64; 3]>,
    pub permutation: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MarkovMove {
    /// `w ↦ g w g^{-1}`.
    Conjugate(BraidWord),
    /// `w ↦ w σ_n^{±1}` on one more strand. `true` is the positive crossing.
    Stabilize(bool),
    /// Inverse of stabilization, recognised syntactically after free reduction.
    Destabilize,
}

pub fn closure_summary(w: &BraidWord) -> ClosureSummary {
    ClosureSummary {
        components: permutation_of(w).cycle_count(),
        exponent_sum: w.exponent_sum(),
        strands: w.strands(),
    }
}

pub fn markov_move(w: &BraidWord, mv: &MarkovMove) -> Result<BraidWord, BraidError> {
    match mv {
        MarkovMove::Conjugate(g) => g.concat(w)?.concat(&g.inverse()),
        MarkovMove::Stabilize(positive) => {
            let n = w.strands();
            let mut letters = w.letters().to_vec();
            letters.push(Letter {
                index: n,
                positive: *positive,
            });
            BraidWord::new(n + 1, letters)
        }
        MarkovMove::Destabilize => destabilize(w),
    }
}

fn destabilize(w: &BraidWord) -> Result<BraidWord, BraidError> {
    let n = w.strands();
    if n < 2 {
        return Err(BraidError::Destabilize {
            reason: "a one-strand braid has no last generator",
            letters: Vec::new(),
        });
    }
    let reduced = free_reduce(w);
    let (last, prefix) = match reduced.letters().split_last() {
        Some(split) => split,
        None => {
            return Err(BraidError::Destabilize {
                reason: "word is trivial after free reduction",
                letters: Vec::new(),
            })
        }
    };
    if last.index != n - 1 {
        return Err(BraidError::Destabilize {
            reason: "word does not end with the last generator",
            letters: alloc::vec![last.to_signed()],
        });
    }
    let offending: Vec<i64> = prefix
        .iter()
        .filter(|l| l.index == n - 1)
        .map(|l| l.to_signed())
        .collect();
    if !offending.is_empty() {
        return Err(BraidError::Destabilize {
            reason: "last generator occurs before the final letter",
            letters: offending,
        });
    }
    BraidWord::new(n - 1, prefix.to_vec())
}

pub fn braid_cobordism(w: &BraidWord) -> BraidCobordism {
    let r = permutation_of(w);
    let n = w.strands();
    let top = (1..=n).map(|i| [i as i64, 0, 1]).collect();
    let bottom = (1..=n).map(|i| [r.apply(i) as i64, 0, 0]).collect();
    BraidCobordism {
        intervals: n,
        top,
        bottom,
        permutation: r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(n: usize, l: &[i64]) -> BraidWord {
        BraidWord::from_signed(n, l).unwrap()
    }

    #[test]
    fn closures() {
        let s = closure_summary(&w(2, &[1]));
        assert_eq!((s.components, s.exponent_sum), (1, 1));
        let s = closure_summary(&w(2, &[1, 1]));
        assert_eq!((s.components, s.exponent_sum), (2, 2));
        let s = closure_summary(&w(4, &[]));
        assert_eq!((s.components, s.exponent_sum), (4, 0));
    }

    #[test]
    fn stabilize_and_destabilize() {
        let s1 = w(2, &[1]);
        let up = markov_move(&s1, &MarkovMove::Stabilize(true)).unwrap();
        assert_eq!(up, w(3, &[1, 2]));
        assert_eq!(closure_summary(&up).components, 1);
        let down = markov_move(&up, &MarkovMove::Destabilize).unwrap();
        assert_eq!(down, s1);
        let neg = markov_move(&s1, &MarkovMove::Stabilize(false)).unwrap();
        assert_eq!(closure_summary(&neg).exponent_sum, 0);
    }

    #[test]
    fn conjugation() {
        let out = markov_move(&w(3, &[2]), &MarkovMove::Conjugate(w(3, &[1]))).unwrap();
        assert_eq!(out, w(3, &[1, 2, -1]));
        assert_eq!(
            closure_summary(&out).components,
            closure_summary(&w(3, &[2])).components
        );
        assert!(markov_move(&w(3, &[2]), &MarkovMove::Conjugate(w(4, &[1]))).is_err());
    }

    #[test]
    fn destabilize_errors_name_letters() {
        let err = markov_move(&w(3, &[2, 1, 2]), &MarkovMove::Destabilize).unwrap_err();
        assert_eq!(
            err,
            BraidError::Destabilize {
                reason: "last generator occurs before the final letter",
                letters: vec![2]
            }
        );
        let err = markov_move(&w(3, &[2, 1]), &MarkovMove::Destabilize).unwrap_err();
        assert!(matches!(err, BraidError::Destabilize { ref letters, .. } if letters == &vec![1]));
        // Free reduction happens first: σ1 σ2 σ2^{-1} σ2 reduces to σ1 σ2.
        assert_eq!(
            markov_move(&w(3, &[1, 2, -2, 2]), &MarkovMove::Destabilize).unwrap(),
            w(2, &[1])
        );
        assert!(markov_move(&w(1, &[]), &MarkovMove::Destabilize).is_err());
    }

    #[test]
    fn cobordisms() {
        let c = braid_cobordism(&w(3, &[]));
        assert_eq!(c.bottom, vec![[1, 0, 0], [2, 0, 0], [3, 0, 0]]);
        assert_eq!(c.top, vec![[1, 0, 1], [2, 0, 1], [3, 0, 1]]);
        let c = braid_cobordism(&w(2, &[1]));
        assert_eq!(c.permutation.images(), vec![2, 1]);
        let c = braid_cobordism(&w(3, &[1, 2]));
        assert_eq!(c.permutation, permutation_of(&w(3, &[1, 2])));
        assert_eq!(c.intervals, 3);
    }
}
