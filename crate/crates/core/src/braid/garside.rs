use alloc::vec::Vec;

use super::{BraidError, BraidWord, Permutation};

/// `Δ^inf · p_1 ⋯ p_l` with each `p_k` a permutation braid different from
/// the identity and from `Δ`, and every consecutive pair left-weighted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GarsideNormalForm {
    pub strands: usize,
    pub inf: i64,
    pub factors: Vec<Permutation>,
}

impl GarsideNormalForm {
    /// `starting_set(p_{k+1}) ⊆ finishing_set(p_k)` for every consecutive pair.
    pub fn is_left_weighted(&self) -> bool {
        self.factors
            .windows(2)
            .all(|pair| is_left_weighted_pair(&pair[0], &pair[1]))
    }

    /// Checks every structural invariant of a normal form.
    pub fn is_valid(&self) -> bool {
        let delta = Permutation::reversal(self.strands);
        self.factors
            .iter()
            .all(|p| p.len() == self.strands && !p.is_identity() && *p != delta)
            && self.is_left_weighted()
    }

    /// Re-multiplies the factorization into a braid word.
    pub fn to_word(&self) -> BraidWord {
        let delta = BraidWord::half_twist(self.strands).expect("strands >= 1");
        let mut letters = delta.pow(self.inf).letters().to_vec();
        for p in &self.factors {
            letters.extend_from_slice(p.positive_word().letters());
        }
        BraidWord::new(self.strands, letters).expect("normal form letters are in range")
    }

    /// Number of non-Δ factors (the canonical length).
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }
}

pub(crate) fn is_left_weighted_pair(a: &Permutation, b: &Permutation) -> bool {
    let fin = a.finishing_set();
    b.starting_set().iter().all(|i| fin.contains(i))
}

/// Moves crossings from `b` into `a` until the pair is left-weighted.
fn left_weight(a: &mut Permutation, b: &mut Permutation) {
    let n = a.len();
    loop {
        let movable = (1..n).find(|&i| b.starts_with(i) && !a.finishes_with(i));
        match movable {
            Some(i) => {
                a.swap_positions(i);
                b.swap_values(i);
            }
            None => return,
        }
    }
}

/// Computes the left normal form of a braid word.
///
/// Each `σ_i^{-1}` is rewritten as `Δ^{-1} (Δ σ_i^{-1})`; the inverse half
/// twists are collected on the left (conjugating what they pass by the
/// flip `σ_j ↦ σ_{n-j}`), and the remaining positive simple factors are
/// multiplied in one at a time, each followed by a backward left-weighting
/// sweep.
pub fn left_normal_form(w: &BraidWord) -> GarsideNormalForm {
    let n = w.strands();
    let delta = Permutation::reversal(n);

    let mut simples: Vec<(Permutation, usize)> = Vec::with_capacity(w.len());
    let mut negatives = 0usize;
    for l in w.letters() {
        let mut s = Permutation::identity(n);
        s.swap_positions(l.index);
        if l.positive {
            simples.push((s, negatives));
        } else {
            negatives += 1;
            simples.push((delta.compose(&s), negatives));
        }
    }

    let mut factors: Vec<Permutation> = Vec::new();
    for (simple, seen) in simples {
        let simple = if (negatives - seen) % 2 == 1 {
            simple.flip()
        } else {
            simple
        };
        if simple.is_identity() {
            continue;
        }
        factors.push(simple);
        for j in (1..factors.len()).rev() {
            let (head, tail) = factors.split_at_mut(j);
            left_weight(&mut head[j - 1], &mut tail[0]);
        }
    }

    let leading = factors.iter().take_while(|p| **p == delta).count();
    let factors: Vec<Permutation> = factors.into_iter().skip(leading).filter(|p| !p.is_identity()).collect();
    GarsideNormalForm {
        strands: n,
        inf: leading as i64 - negatives as i64,
        factors,
    }
}

/// Decides `u = v` in `B_n` by comparing left normal forms.
pub fn words_equal(u: &BraidWord, v: &BraidWord) -> Result<bool, BraidError> {
    u.same_strands(v)?;
    Ok(left_normal_form(u) == left_normal_form(v))
}
