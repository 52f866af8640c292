//! Integer solutions of `M u = b` through a column Hermite reduction.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `M U = H` with `U` unimodular and `H` in lower column echelon form.
#[derive(Debug, Clone)]
pub struct ColumnHermite {
    h: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    // (row, column) of each pivot, columns increasing
    pivots: Vec<(usize, usize)>,
    cols: usize,
}

impl ColumnHermite {
    pub fn new(matrix: &[Vec<BigInt>], cols: usize) -> Self {
        let mut h: Vec<Vec<BigInt>> = matrix.to_vec();
        let mut u: Vec<Vec<BigInt>> = (0..cols)
            .map(|i| {
                (0..cols)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for row in 0..h.len() {
            if next == cols {
                break;
            }
            loop {
                // smallest nonzero entry among the free columns goes to `next`
                let best = (next..cols)
                    .filter(|&c| !h[row][c].is_zero())
                    .min_by_key(|&c| h[row][c].abs());
                let Some(best) = best else { break };
                swap_cols(&mut h, next, best);
                swap_cols(&mut u, next, best);
                let mut done = true;
                for c in next + 1..cols {
                    if h[row][c].is_zero() {
                        continue;
                    }
                    let q = h[row][c].div_floor(&h[row][next]);
                    sub_col(&mut h, c, next, &q);
                    sub_col(&mut u, c, next, &q);
                    if !h[row][c].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if !h[row][next].is_zero() {
                if h[row][next].is_negative() {
                    negate_col(&mut h, next);
                    negate_col(&mut u, next);
                }
                pivots.push((row, next));
                next += 1;
            }
        }
        ColumnHermite { h, u, pivots, cols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns of `U` spanning the integer kernel of `M`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.cols)
            .map(|c| self.u.iter().map(|row| row[c].clone()).collect())
            .collect()
    }

    /// An integer `u` with `M u = b`, or `None` when there is none.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut v = alloc::vec![BigInt::zero(); self.cols];
        let mut solved = 0;
        for (row, rhs) in b.iter().enumerate() {
            let mut rest = rhs.clone();
            for (h, x) in self.h[row][..solved].iter().zip(&v[..solved]) {
                rest -= h * x;
            }
            match self.pivots.get(solved) {
                Some(&(prow, pcol)) if prow == row => {
                    let (q, r) = rest.div_rem(&self.h[row][pcol]);
                    if !r.is_zero() {
                        return None;
                    }
                    v[pcol] = q;
                    solved += 1;
                }
                _ => {
                    if !rest.is_zero() {
                        return None;
                    }
                }
            }
        }
        Some(
            (0..self.cols)
                .map(|i| (0..self.cols).fold(BigInt::zero(), |acc, j| acc + &self.u[i][j] * &v[j]))
                .collect(),
        )
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// column[target] -= q · column[source]
fn sub_col(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let delta = &row[source] * q;
        row[target] -= delta;
    }
}

fn negate_col(m: &mut [Vec<BigInt>], c: usize) {
    for row in m.iter_mut() {
        row[c] = -core::mem::take(&mut row[c]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn apply(m: &[Vec<BigInt>], u: &[BigInt]) -> Vec<BigInt> {
        m.iter()
            .map(|row| row.iter().zip(u).fold(BigInt::zero(), |a, (x, y)| a + x * y))
            .collect()
    }

    #[test]
    fn solves_when_integral() {
        let m = big(&[&[2, 4], &[3, 5], &[1, 1]]);
        let hnf = ColumnHermite::new(&m, 2);
        assert_eq!(hnf.rank(), 2);
        let b: Vec<BigInt> = apply(&m, &[BigInt::from(-3), BigInt::from(7)]);
        let u = hnf.solve(&b).unwrap();
        assert_eq!(apply(&m, &u), b);
    }

    #[test]
    fn rejects_rational_only_solutions() {
        // 2u = 1 has no integer solution
        let m = big(&[&[2]]);
        assert!(ColumnHermite::new(&m, 1).solve(&[BigInt::from(1)]).is_none());
        // inconsistent rows
        let m = big(&[&[1, 1], &[2, 2]]);
        assert!(ColumnHermite::new(&m, 2)
            .solve(&[BigInt::from(1), BigInt::from(3)])
            .is_none());
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let m = big(&[&[1, 2, 3], &[2, 4, 6]]);
        let hnf = ColumnHermite::new(&m, 3);
        assert_eq!(hnf.rank(), 1);
        let kernel = hnf.kernel_basis();
        assert_eq!(kernel.len(), 2);
        for k in &kernel {
            assert!(apply(&m, k).iter().all(Zero::is_zero));
        }
        let b = vec![BigInt::from(6), BigInt::from(12)];
        assert_eq!(apply(&m, &hnf.solve(&b).unwrap()), b);
    }
}
