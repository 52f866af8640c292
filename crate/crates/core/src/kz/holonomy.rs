use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use super::{curvature_is_zero, InfinitesimalSystem, KzError, Matrix};
use crate::rational::to_f64;

pub type CMatrix = Matrix<Complex64>;

const MIN_STEPS: usize = 16;

/// A closed path in configuration space.
///
/// Circle loops start and end at the base point `(0, 1, …, n−1)`.
#[derive(Debug, Clone, PartialEq)]
pub enum LoopPath {
    /// Point `moving` runs once counter-clockwise around the circle through
    /// its base position centred at `z_moving + radius_factor·(z_around − z_moving)`.
    /// A factor of 1 centres the circle on `z_around`.
    Circle {
        moving: usize,
        around: usize,
        radius_factor: f64,
    },
    /// Point `moving` runs around the circle of the given radius centred
    /// straight above its base position; it encloses no other point.
    OffsetCircle { moving: usize, radius: f64 },
    /// Piecewise linear path through full configurations; first and last must agree.
    Polyline(Vec<Vec<Complex64>>),
    /// The loops traversed one after the other.
    Concat(Vec<LoopPath>),
}

/// Base point `(0, 1, …, n−1)` shared by the circle loops.
pub fn base_point(n: usize) -> Vec<Complex64> {
    (0..n).map(|k| Complex64::new(k as f64, 0.0)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct HolonomyOptions {
    pub steps: usize,
    /// Integrate even if the system fails the flatness check.
    pub allow_non_flat: bool,
    /// Minimum `|z_i − z_j|`, relative to the diameter of the starting configuration.
    pub clearance: f64,
}

impl Default for HolonomyOptions {
    fn default() -> Self {
        HolonomyOptions {
            steps: 4096,
            allow_non_flat: false,
            clearance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HolonomyResult {
    /// Parallel transport `W(1)` with `W' = Γ(ż) W`, `W(0) = I`, at `steps` steps.
    pub matrix: CMatrix,
    pub steps: usize,
    /// Largest entry of `|W_N − W_{2N}|`.
    pub error_estimate: f64,
}

enum Piece {
    Circle {
        base: Vec<Complex64>,
        moving: usize,
        center: Complex64,
        offset: Complex64,
    },
    Line {
        from: Vec<Complex64>,
        to: Vec<Complex64>,
    },
}

impl Piece {
    /// Position and velocity at local parameter `s ∈ [0, 1]`.
    fn eval(&self, s: f64, z: &mut [Complex64], dz: &mut [Complex64]) {
        match self {
            Piece::Circle {
                base,
                moving,
                center,
                offset,
            } => {
                z.copy_from_slice(base);
                dz.iter_mut().for_each(|v| *v = Complex64::zero());
                let angle = 2.0 * core::f64::consts::PI * s;
                let rot = Complex64::new(Float::cos(angle), Float::sin(angle));
                z[*moving] = center + offset * rot;
                dz[*moving] = offset * rot * Complex64::new(0.0, 2.0 * core::f64::consts::PI);
            }
            Piece::Line { from, to } => {
                for k in 0..z.len() {
                    z[k] = from[k] + (to[k] - from[k]) * s;
                    dz[k] = to[k] - from[k];
                }
            }
        }
    }
}

fn flatten(path: &LoopPath, n: usize, out: &mut Vec<Piece>) -> Result<Vec<Complex64>, KzError> {
    let check_index = |k: usize| {
        if k == 0 || k > n {
            Err(KzError::InvalidLoop(format!("point index {k} outside 1..={n}")))
        } else {
            Ok(k - 1)
        }
    };
    let base = base_point(n);
    match path {
        LoopPath::Circle {
            moving,
            around,
            radius_factor,
        } => {
            let (m, a) = (check_index(*moving)?, check_index(*around)?);
            if m == a {
                return Err(KzError::InvalidLoop(format!(
                    "circle moves point {moving} around itself"
                )));
            }
            if !radius_factor.is_finite() || *radius_factor <= 0.0 {
                return Err(KzError::InvalidLoop(format!(
                    "radius factor {radius_factor} must be positive"
                )));
            }
            let center = base[m] + (base[a] - base[m]) * *radius_factor;
            out.push(Piece::Circle {
                base: base.clone(),
                moving: m,
                center,
                offset: base[m] - center,
            });
            Ok(base)
        }
        LoopPath::OffsetCircle { moving, radius } => {
            let m = check_index(*moving)?;
            if !radius.is_finite() || *radius <= 0.0 {
                return Err(KzError::InvalidLoop(format!("radius {radius} must be positive")));
            }
            let center = base[m] + Complex64::new(0.0, *radius);
            out.push(Piece::Circle {
                base: base.clone(),
                moving: m,
                center,
                offset: base[m] - center,
            });
            Ok(base)
        }
        LoopPath::Polyline(points) => {
            if points.len() < 2 {
                return Err(KzError::InvalidLoop(
                    "a polyline needs at least two configurations".into(),
                ));
            }
            if let Some(bad) = points.iter().find(|p| p.len() != n) {
                return Err(KzError::InvalidLoop(format!(
                    "configuration with {} points, expected {n}",
                    bad.len()
                )));
            }
            let (first, last) = (&points[0], &points[points.len() - 1]);
            if first.iter().zip(last).any(|(a, b)| (a - b).norm() > 1e-12) {
                return Err(KzError::InvalidLoop("polyline is not closed".into()));
            }
            for w in points.windows(2) {
                out.push(Piece::Line {
                    from: w[0].clone(),
                    to: w[1].clone(),
                });
            }
            Ok(first.clone())
        }
        LoopPath::Concat(parts) => {
            let mut start: Option<Vec<Complex64>> = None;
            for part in parts {
                let s = flatten(part, n, out)?;
                match &start {
                    None => start = Some(s),
                    Some(b) if b.iter().zip(&s).any(|(x, y)| (x - y).norm() > 1e-12) => {
                        return Err(KzError::InvalidLoop(
                            "concatenated loops have different base points".into(),
                        ))
                    }
                    Some(_) => {}
                }
            }
            start.ok_or_else(|| KzError::InvalidLoop("empty concatenation".into()))
        }
    }
}

struct Transport<'a> {
    pairs: Vec<((usize, usize), CMatrix)>,
    pieces: &'a [Piece],
    dim: usize,
    min_gap: f64,
}

impl Transport<'_> {
    fn generator(&self, piece: &Piece, s: f64, z: &mut [Complex64], dz: &mut [Complex64]) -> Result<CMatrix, KzError> {
        piece.eval(s, z, dz);
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for ((i, j), a) in &self.pairs {
            let diff = z[i - 1] - z[j - 1];
            if diff.norm() < self.min_gap {
                return Err(KzError::DiagonalProximity(*i, *j));
            }
            let coeff = (dz[i - 1] - dz[j - 1]) / diff;
            m = &m + &a.scale(&coeff);
        }
        Ok(m)
    }

    fn run(&self, steps: usize, n: usize) -> Result<(CMatrix, usize), KzError> {
        let per_piece = (steps / self.pieces.len()).max(1);
        let mut z = alloc::vec![Complex64::zero(); n];
        let mut dz = z.clone();
        let mut w = CMatrix::identity(self.dim);
        for piece in self.pieces {
            let h = 1.0 / per_piece as f64;
            let hc = Complex64::new(h, 0.0);
            let half = Complex64::new(h / 2.0, 0.0);
            let mut local = CMatrix::identity(self.dim);
            for step in 0..per_piece {
                let s = step as f64 * h;
                let m0 = self.generator(piece, s, &mut z, &mut dz)?;
                let mh = self.generator(piece, s + h / 2.0, &mut z, &mut dz)?;
                let m1 = self.generator(piece, s + h, &mut z, &mut dz)?;
                let k1 = &m0 * &local;
                let k2 = &mh * &(&local + &k1.scale(&half));
                let k3 = &mh * &(&local + &k2.scale(&half));
                let k4 = &m1 * &(&local + &k3.scale(&hc));
                let two = Complex64::new(2.0, 0.0);
                let incr = &(&(&k1 + &k2.scale(&two)) + &k3.scale(&two)) + &k4;
                local = &local + &incr.scale(&Complex64::new(h / 6.0, 0.0));
            }
            w = &local * &w;
        }
        Ok((w, per_piece * self.pieces.len()))
    }
}

fn prepare<'a>(
    sys: &InfinitesimalSystem,
    pieces: &'a [Piece],
    start: &[Complex64],
    options: &HolonomyOptions,
) -> Result<Transport<'a>, KzError> {
    if options.steps < MIN_STEPS {
        return Err(KzError::TooFewSteps {
            got: options.steps,
            min: MIN_STEPS,
        });
    }
    if !options.allow_non_flat {
        let witness = curvature_is_zero(sys);
        if !witness.flat {
            let count = witness.report.commuting_violations.len() + witness.report.triangle_violations.len();
            return Err(KzError::NotFlat(count));
        }
    }
    let mut diameter: f64 = 0.0;
    for a in start {
        for b in start {
            diameter = diameter.max((a - b).norm());
        }
    }
    let pairs = sys
        .iter()
        .filter(|(_, a)| !a.is_zero())
        .map(|(p, a)| (p, a.map(|e| Complex64::new(to_f64(e), 0.0))))
        .collect();
    Ok(Transport {
        pairs,
        pieces,
        dim: sys.dim(),
        min_gap: options.clearance * diameter.max(1.0),
    })
}

fn max_entry_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// [`holonomy_with`] at `steps` steps and default options.
pub fn holonomy(sys: &InfinitesimalSystem, path: &LoopPath, steps: usize) -> Result<HolonomyResult, KzError> {
    holonomy_with(
        sys,
        path,
        &HolonomyOptions {
            steps,
            ..HolonomyOptions::default()
        },
    )
}

/// Integrates `W' = Γ(z(t))[ż(t)] W`, `W(0) = I` with classical RK4 at a
/// fixed step, and estimates the error by repeating at twice the steps.
/// Concatenated loops multiply right to left: the first loop's transport
/// is applied first.
pub fn holonomy_with(
    sys: &InfinitesimalSystem,
    path: &LoopPath,
    options: &HolonomyOptions,
) -> Result<HolonomyResult, KzError> {
    let mut pieces = Vec::new();
    let start = flatten(path, sys.points(), &mut pieces)?;
    let t = prepare(sys, &pieces, &start, options)?;
    let (coarse, used) = t.run(options.steps, sys.points())?;
    let (fine, _) = t.run(options.steps * 2, sys.points())?;
    Ok(HolonomyResult {
        error_estimate: max_entry_diff(&coarse, &fine),
        matrix: coarse,
        steps: used,
    })
}

/// Observed order `log2(|W_N − W_2N| / |W_2N − W_4N|)` of the integrator.
pub fn convergence_order(
    sys: &InfinitesimalSystem,
    path: &LoopPath,
    options: &HolonomyOptions,
) -> Result<f64, KzError> {
    let mut pieces = Vec::new();
    let start = flatten(path, sys.points(), &mut pieces)?;
    let t = prepare(sys, &pieces, &start, options)?;
    let n = sys.points();
    let (w1, _) = t.run(options.steps, n)?;
    let (w2, _) = t.run(options.steps * 2, n)?;
    let (w4, _) = t.run(options.steps * 4, n)?;
    Ok(Float::log2(max_entry_diff(&w1, &w2) / max_entry_diff(&w2, &w4)))
}

#[cfg(test)]
mod tests {
    use super::super::{scalar_system, InfinitesimalSystem, RationalMatrix};
    use super::*;
    use crate::rational::{int, ratio};
    use alloc::collections::BTreeMap;
    use alloc::vec;

    fn circle12() -> LoopPath {
        LoopPath::Circle {
            moving: 1,
            around: 2,
            radius_factor: 1.0,
        }
    }

    #[test]
    fn half_monodromy_is_minus_one() {
        let sys = scalar_system(2, 1, &ratio(1, 2)).unwrap();
        let res = holonomy(&sys, &circle12(), 4096).unwrap();
        let w = res.matrix.get(0, 0);
        assert!((w - Complex64::new(-1.0, 0.0)).norm() < 1e-6, "{w}");
        assert!(res.error_estimate < 1e-9);
    }

    #[test]
    fn zero_system_is_identity() {
        let sys = scalar_system(2, 3, &int(0)).unwrap();
        let res = holonomy(&sys, &circle12(), 64).unwrap();
        assert_eq!(res.matrix, CMatrix::identity(3));
    }

    #[test]
    fn non_enclosing_loop() {
        let sys = scalar_system(2, 1, &ratio(1, 2)).unwrap();
        let res = holonomy(
            &sys,
            &LoopPath::OffsetCircle {
                moving: 1,
                radius: 0.25,
            },
            4096,
        )
        .unwrap();
        assert!((res.matrix.get(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn guards() {
        let sys = scalar_system(2, 1, &ratio(1, 2)).unwrap();
        assert_eq!(
            holonomy(&sys, &circle12(), 8),
            Err(KzError::TooFewSteps { got: 8, min: 16 })
        );
        assert!(matches!(
            holonomy(
                &sys,
                &LoopPath::Circle {
                    moving: 1,
                    around: 1,
                    radius_factor: 1.0
                },
                64
            ),
            Err(KzError::InvalidLoop(_))
        ));
        // Radius factor 1/2 puts the circle through the other point.
        assert!(matches!(
            holonomy(
                &sys,
                &LoopPath::Circle {
                    moving: 1,
                    around: 2,
                    radius_factor: 0.5
                },
                64
            ),
            Err(KzError::DiagonalProximity(1, 2))
        ));
        let open = LoopPath::Polyline(vec![
            base_point(2),
            vec![Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)],
        ]);
        assert!(matches!(holonomy(&sys, &open, 64), Err(KzError::InvalidLoop(_))));
    }

    #[test]
    fn non_flat_needs_override() {
        let mut e11 = RationalMatrix::zeros(2, 2);
        e11.set(0, 0, int(1));
        let mut e12 = RationalMatrix::zeros(2, 2);
        e12.set(0, 1, int(1));
        let mut map = BTreeMap::new();
        map.insert((1, 2), e11);
        map.insert((1, 3), e12);
        map.insert((2, 3), RationalMatrix::zeros(2, 2));
        let sys = InfinitesimalSystem::new(3, 2, map).unwrap();
        let path = LoopPath::Circle {
            moving: 1,
            around: 2,
            radius_factor: 0.75,
        };
        assert_eq!(holonomy(&sys, &path, 64), Err(KzError::NotFlat(1)));
        let opts = HolonomyOptions {
            steps: 64,
            allow_non_flat: true,
            ..HolonomyOptions::default()
        };
        assert!(holonomy_with(&sys, &path, &opts).is_ok());
    }

    #[test]
    fn square_polyline_around_point() {
        // z1 walks a square around z2 = 1; winding number one.
        let c = |x: f64, y: f64| vec![Complex64::new(x, y), Complex64::new(1.0, 0.0)];
        let path = LoopPath::Polyline(vec![
            c(0.0, 0.0),
            c(0.0, -1.0),
            c(2.0, -1.0),
            c(2.0, 1.0),
            c(0.0, 1.0),
            c(0.0, 0.0),
        ]);
        let sys = scalar_system(2, 1, &ratio(1, 4)).unwrap();
        let res = holonomy(&sys, &path, 4000).unwrap();
        // exp(2πi/4) = i
        assert!(
            (res.matrix.get(0, 0) - Complex64::new(0.0, 1.0)).norm() < 1e-6,
            "{}",
            res.matrix.get(0, 0)
        );
    }
}
