use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{KzError, RationalMatrix};
use crate::Rational;

/// Default ceiling on the tensor dimension `d^n` built by [`transposition_system`].
pub const MAX_TENSOR_DIM: usize = 4096;

/// A family `{A_{ij}}`, `1 ≤ i < j ≤ n`, of `d × d` rational matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinitesimalSystem {
    points: usize,
    dim: usize,
    // ordered as pairs()
    matrices: Vec<RationalMatrix>,
}

impl InfinitesimalSystem {
    /// Every pair `(i, j)` with `1 ≤ i < j ≤ points` must be present and `dim × dim`.
    pub fn new(
        points: usize,
        dim: usize,
        mut matrices: BTreeMap<(usize, usize), RationalMatrix>,
    ) -> Result<Self, KzError> {
        if points < 2 {
            return Err(KzError::InvalidSystem("need at least two points"));
        }
        if dim == 0 {
            return Err(KzError::InvalidSystem("fibre dimension must be positive"));
        }
        let mut ordered = Vec::with_capacity(points * (points - 1) / 2);
        for (i, j) in pairs(points) {
            let m = matrices.remove(&(i, j)).ok_or(KzError::MissingPair(i, j))?;
            if m.rows() != dim || m.cols() != dim {
                return Err(KzError::DimensionMismatch {
                    pair: (i, j),
                    rows: m.rows(),
                    cols: m.cols(),
                    dim,
                });
            }
            ordered.push(m);
        }
        if let Some((&(i, j), _)) = matrices.iter().next() {
            return Err(KzError::UnexpectedPair(i, j));
        }
        Ok(InfinitesimalSystem {
            points,
            dim,
            matrices: ordered,
        })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `A_{ij}`; the index order does not matter (`A_{ji} = A_{ij}`).
    pub fn get(&self, i: usize, j: usize) -> &RationalMatrix {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        assert!(a >= 1 && a < b && b <= self.points, "pair ({i},{j}) out of range");
        &self.matrices[pair_index(self.points, a, b)]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut RationalMatrix {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let idx = pair_index(self.points, a, b);
        &mut self.matrices[idx]
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &RationalMatrix)> {
        pairs(self.points).zip(self.matrices.iter())
    }

    pub fn to_map(&self) -> BTreeMap<(usize, usize), RationalMatrix> {
        self.iter().map(|(p, m)| (p, m.clone())).collect()
    }
}

/// Pairs `(i, j)`, `1 ≤ i < j ≤ n`, in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> + Clone {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // pairs starting below i, then offset within row i
    (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
}

/// Every `A_{ij}` equal to `value · I_d`.
pub fn scalar_system(points: usize, dim: usize, value: &Rational) -> Result<InfinitesimalSystem, KzError> {
    let m = RationalMatrix::identity(dim).scale(value);
    InfinitesimalSystem::new(points, dim, pairs(points).map(|p| (p, m.clone())).collect())
}

/// The operator on `(k^d)^{⊗n}` exchanging tensor factors `i` and `j`.
pub fn tensor_swap(n: usize, d: usize, i: usize, j: usize) -> RationalMatrix {
    let total = d.pow(n as u32);
    let mut m = RationalMatrix::zeros(total, total);
    let mut digits = alloc::vec![0usize; n];
    for col in 0..total {
        // digit 0 is the most significant tensor factor
        let mut rest = col;
        for slot in digits.iter_mut().rev() {
            *slot = rest % d;
            rest /= d;
        }
        digits.swap(i - 1, j - 1);
        let row = digits.iter().fold(0, |acc, &x| acc * d + x);
        m.set(row, col, Rational::one());
    }
    m
}

/// `A_{ij}` = the swap of tensor factors `i` and `j` on `(k^d)^{⊗n}`,
/// guarded by [`MAX_TENSOR_DIM`].
pub fn transposition_system(n: usize, d: usize) -> Result<InfinitesimalSystem, KzError> {
    transposition_system_bounded(n, d, MAX_TENSOR_DIM)
}

pub fn transposition_system_bounded(n: usize, d: usize, bound: usize) -> Result<InfinitesimalSystem, KzError> {
    if n < 2 || d == 0 {
        return Err(KzError::InvalidSystem("transposition systems need n >= 2 and d >= 1"));
    }
    let total = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > bound as u128 {
        return Err(KzError::TooLarge { dim: total, bound });
    }
    let total = total as usize;
    let map = pairs(n).map(|(i, j)| ((i, j), tensor_swap(n, d, i, j))).collect();
    InfinitesimalSystem::new(n, total, map)
}

/// Matrices `ρ(s_i)` for the adjacent transpositions acting by permuting
/// tensor factors, the natural symmetry of [`transposition_system`].
pub fn permutation_representation(n: usize, d: usize) -> Vec<RationalMatrix> {
    (1..n).map(|i| tensor_swap(n, d, i, i + 1)).collect()
}

/// One triple that breaks the three-index relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleViolation {
    pub triple: (usize, usize, usize),
    /// `[A_ij, A_ik + A_jk] = 0`
    pub left_vanishes: bool,
    /// `[A_jk, A_ij + A_ik] = 0`
    pub right_vanishes: bool,
    /// `[A_ij, A_ik + A_jk] = [A_jk, A_ij + A_ik]`
    pub brackets_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    /// Disjoint pairs whose matrices do not commute.
    pub commuting_violations: Vec<((usize, usize), (usize, usize))>,
    pub triangle_violations: Vec<TriangleViolation>,
    /// Largest absolute entry over all brackets that should vanish.
    pub max_residual: Rational,
}

impl RelationReport {
    pub fn is_empty(&self) -> bool {
        self.commuting_violations.is_empty() && self.triangle_violations.is_empty()
    }
}

/// Exact check of the infinitesimal pure braid relations:
/// `[A_ij, A_kl] = 0` for disjoint pairs, and for every `i < j < k` both
/// `[A_ij, A_ik + A_jk]` and `[A_jk, A_ij + A_ik]` vanish.
pub fn check_infinitesimal_relations(sys: &InfinitesimalSystem) -> RelationReport {
    let n = sys.points();
    let mut commuting_violations = Vec::new();
    let mut triangle_violations = Vec::new();
    let mut max_residual = Rational::zero();
    let mut track = |m: &RationalMatrix| {
        let r = m.max_abs();
        if r > max_residual {
            max_residual = r;
        }
    };

    let all: Vec<(usize, usize)> = pairs(n).collect();
    for (a, &(i, j)) in all.iter().enumerate() {
        for &(k, l) in &all[a + 1..] {
            if i == k || i == l || j == k || j == l {
                continue;
            }
            let c = sys.get(i, j).commutator(sys.get(k, l));
            track(&c);
            if !c.is_zero() {
                commuting_violations.push(((i, j), (k, l)));
            }
        }
    }

    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let (aij, aik, ajk) = (sys.get(i, j), sys.get(i, k), sys.get(j, k));
                let left = aij.commutator(&(aik + ajk));
                let right = ajk.commutator(&(aij + aik));
                track(&left);
                track(&right);
                let (lz, rz) = (left.is_zero(), right.is_zero());
                if !(lz && rz) {
                    triangle_violations.push(TriangleViolation {
                        triple: (i, j, k),
                        left_vanishes: lz,
                        right_vanishes: rz,
                        brackets_agree: left == right,
                    });
                }
            }
        }
    }

    RelationReport {
        commuting_violations,
        triangle_violations,
        max_residual,
    }
}
