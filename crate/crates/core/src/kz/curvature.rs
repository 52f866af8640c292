use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex;
use num_traits::{One, Signed, Zero};

use super::{check_infinitesimal_relations, InfinitesimalSystem, KzError, Matrix, RationalMatrix, RelationReport};
use crate::rational::ratio;
use crate::Rational;

/// A point `(z_1, …, z_n)` of configuration space with Gaussian rational
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigurationPoint {
    pub coords: Vec<Complex<Rational>>,
}

impl ConfigurationPoint {
    pub fn new(coords: Vec<Complex<Rational>>) -> Self {
        ConfigurationPoint { coords }
    }

    pub fn real(coords: &[Rational]) -> Self {
        ConfigurationPoint {
            coords: coords
                .iter()
                .map(|x| Complex::new(x.clone(), Rational::zero()))
                .collect(),
        }
    }

    /// First pair `(i, j)` (1-based) with `|z_i − z_j| ≤ tolerance`.
    pub fn near_diagonal(&self, tolerance: &Rational) -> Option<(usize, usize)> {
        let tol2 = tolerance * tolerance;
        for i in 0..self.coords.len() {
            for j in i + 1..self.coords.len() {
                let d = &self.coords[i] - &self.coords[j];
                let norm2 = d.norm_sqr();
                if norm2.is_zero() || norm2 < tol2 {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatnessWitness {
    pub flat: bool,
    pub report: RelationReport,
}

/// `dΓ = 0` because every `dlog(z_i − z_j)` is closed, and the Arnold
/// relation among `ω_ij, ω_jk, ω_ik` reduces `Γ ∧ Γ = 0` to the
/// infinitesimal braid relations. The relation report is the witness.
pub fn curvature_is_zero(sys: &InfinitesimalSystem) -> FlatnessWitness {
    let report = check_infinitesimal_relations(sys);
    FlatnessWitness {
        flat: report.is_empty(),
        report,
    }
}

/// [`numeric_curvature_sample_with`] at clearance `10^-9`.
pub fn numeric_curvature_sample(sys: &InfinitesimalSystem, point: &ConfigurationPoint) -> Result<Rational, KzError> {
    numeric_curvature_sample_with(sys, point, &ratio(1, 1_000_000_000))
}

/// Writes `Γ = Σ_a G_a dz_a` at the point and returns the largest real or
/// imaginary part among the entries of the `dz_a ∧ dz_b` coefficients
/// `[G_a, G_b]` of `Γ ∧ Γ`. Exact.
pub fn numeric_curvature_sample_with(
    sys: &InfinitesimalSystem,
    point: &ConfigurationPoint,
    min_separation: &Rational,
) -> Result<Rational, KzError> {
    let n = sys.points();
    if point.coords.len() != n {
        return Err(KzError::PointCount {
            got: point.coords.len(),
            expected: n,
        });
    }
    if let Some((i, j)) = point.near_diagonal(min_separation) {
        return Err(KzError::DiagonalProximity(i, j));
    }
    let d = sys.dim();
    let mut g: Vec<Matrix<Complex<Rational>>> = (0..n).map(|_| Matrix::zeros(d, d)).collect();
    for ((i, j), a) in sys.iter() {
        let inv = Complex::<Rational>::one() / (&point.coords[i - 1] - &point.coords[j - 1]);
        let term = a.map(|e| Complex::new(e.clone(), Rational::zero())).scale(&inv);
        g[i - 1] = &g[i - 1] + &term;
        g[j - 1] = &g[j - 1] - &term;
    }
    let mut residual = Rational::zero();
    for a in 0..n {
        for b in a + 1..n {
            for e in g[a].commutator(&g[b]).entries() {
                for part in [e.re.abs(), e.im.abs()] {
                    if part > residual {
                        residual = part;
                    }
                }
            }
        }
    }
    Ok(residual)
}

/// Checks that `rho` (matrices for `s_1 … s_{n-1}`) satisfies the Coxeter
/// relations of `S_n`, then tests `ρ(s) A_{ij} ρ(s)^{-1} = A_{s(i) s(j)}`
/// for every generator and pair, the condition for the connection to
/// descend to the quotient by `S_n`.
pub fn sn_equivariance_check(sys: &InfinitesimalSystem, rho: &[RationalMatrix]) -> Result<bool, KzError> {
    let n = sys.points();
    let d = sys.dim();
    if rho.len() != n - 1 {
        return Err(KzError::NotARepresentation(format!(
            "expected {} generator matrices, got {}",
            n - 1,
            rho.len()
        )));
    }
    if let Some(k) = rho.iter().position(|m| m.rows() != d || m.cols() != d) {
        return Err(KzError::NotARepresentation(format!(
            "matrix for s_{} is not {d}x{d}",
            k + 1
        )));
    }
    let id = RationalMatrix::identity(d);
    for (k, r) in rho.iter().enumerate() {
        if (r * r) != id {
            return Err(KzError::NotARepresentation(format!(
                "s_{} does not square to the identity",
                k + 1
            )));
        }
    }
    for k in 0..rho.len() {
        for l in k + 1..rho.len() {
            let prod = &rho[k] * &rho[l];
            let (power, name) = if l == k + 1 { (3, "braid") } else { (2, "commutation") };
            let mut acc = id.clone();
            for _ in 0..power {
                acc = &acc * &prod;
            }
            if acc != id {
                return Err(KzError::NotARepresentation(format!(
                    "{name} relation fails for s_{} and s_{}",
                    k + 1,
                    l + 1
                )));
            }
        }
    }

    let swap = |s: usize, p: usize| {
        if p == s {
            s + 1
        } else if p == s + 1 {
            s
        } else {
            p
        }
    };
    for (k, r) in rho.iter().enumerate() {
        let s = k + 1;
        for ((i, j), a) in sys.iter() {
            // ρ(s) is an involution, so it is its own inverse
            let conj = &(r * a) * r;
            if &conj != sys.get(swap(s, i), swap(s, j)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
