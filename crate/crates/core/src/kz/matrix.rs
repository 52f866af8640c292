use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_traits::{Num, Signed, Zero};

use crate::Rational;

/// Dense row-major matrix over any numeric ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type RationalMatrix = Matrix<Rational>;

impl<T: Clone + Num> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: alloc::vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = T::one();
        }
        m
    }

    /// `None` when the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.entries
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|e| e.clone() * k.clone())
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

impl RationalMatrix {
    /// Largest absolute entry; zero for an empty matrix.
    pub fn max_abs(&self) -> Rational {
        self.entries
            .iter()
            .map(Signed::abs)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a })
    }
}

impl<T: Clone + Num> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shapes differ");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Clone + Num> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shapes differ");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Clone + Num> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: Self) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.entries[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let slot: &mut T = &mut out.entries[i * rhs.cols + j];
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use alloc::vec;

    #[test]
    fn commutator_of_matrix_units() {
        // [E11, E12] = E12
        let e11 = RationalMatrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(0)]]).unwrap();
        let e12 = RationalMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]).unwrap();
        assert_eq!(e11.commutator(&e12), e12);
        assert_eq!(e12.commutator(&e11).max_abs(), int(1));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(RationalMatrix::from_rows(vec![vec![int(1)], vec![int(1), int(2)]]).is_none());
    }

    #[test]
    fn identity_is_neutral() {
        let m = RationalMatrix::from_rows(vec![vec![ratio(1, 2), int(3)], vec![int(-1), ratio(2, 7)]]).unwrap();
        let id = RationalMatrix::identity(2);
        assert_eq!(&m * &id, m);
        assert_eq!(&id * &m, m);
        assert!((&m - &m).is_zero());
    }
}
