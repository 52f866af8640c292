//! Stepwise construction of the universal law over `ℤ[α_1, α_2, …]`.
//!
//! Stage `q` holds a `(q+1)`-bud `f_q` with integral coefficients in
//! `α_1 … α_q`. The next stage solves, over the integers, for a symmetric
//! homogeneous correction `h'` of degree `q + 2` that kills the
//! associativity defect, then adjoins `α_{q+1}` along the cocycle `C_{q+2}`:
//! `f_{q+1} = f_q + h' + α_{q+1} C_{q+2}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::bud::{binomial, cocycle_divisor};
use super::hnf::ColumnHermite;
use super::log::log_of_law;
use super::{sym_cocycle, Bud, FglError, GradedPolynomial, LogSeries, Monomial};
use crate::Rational;

pub const DEFAULT_STAGE_CEILING: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LazardState {
    stage: usize,
    law: Bud,
    log: LogSeries,
}

impl LazardState {
    /// Stage 0: the additive law `x + y` with logarithm `t`.
    pub fn initial() -> Self {
        LazardState {
            stage: 0,
            law: Bud::additive(1),
            log: LogSeries::identity(1),
        }
    }

    pub fn stage(&self) -> usize {
        self.stage
    }

    /// `f_q`, a `(q+1)`-bud.
    pub fn law(&self) -> &Bud {
        &self.law
    }

    /// `φ_q` up to `t^{q+1}`.
    pub fn log(&self) -> &LogSeries {
        &self.log
    }

    /// Names of the adjoined generators, `a1 … aq`.
    pub fn generators(&self) -> Vec<String> {
        (1..=self.stage).map(|k| format!("a{k}")).collect()
    }
}

/// Basis `g_k = x^k y^{n-k} + x^{n-k} y^k`, `1 ≤ k ≤ n/2`, of symmetric
/// homogeneous degree-`n` polynomials vanishing on both axes.
fn symmetric_basis(n: u32) -> Vec<GradedPolynomial> {
    (1..=n / 2)
        .map(|k| {
            let mut g = GradedPolynomial::term(
                Monomial::new([k, n - k, 0, 0], Vec::new()),
                Rational::from_integer(1.into()),
            );
            if k != n - k {
                g.add_term(
                    Monomial::new([n - k, k, 0, 0], Vec::new()),
                    Rational::from_integer(1.into()),
                );
            }
            g
        })
        .collect()
}

/// `δG = G(y,z) − G(x+y,z) + G(x,y+z) − G(x,y)`.
fn coboundary(g: &GradedPolynomial) -> GradedPolynomial {
    let (x, y, z) = (GradedPolynomial::x(), GradedPolynomial::y(), GradedPolynomial::z());
    let xy = &x + &y;
    let yz = &y + &z;
    let m = u32::MAX;
    &(&(&g.compose_xy(&y, &z, m) - &g.compose_xy(&xy, &z, m)) + &g.compose_xy(&x, &yz, m)) - g
}

fn to_integer(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// Produces stage `q + 1` from stage `q`.
pub fn extend_bud(state: &LazardState) -> Result<LazardState, FglError> {
    let q = state.stage;
    let n = q as u32 + 2;
    let f = state.law.law();
    let (x, y, z) = (GradedPolynomial::x(), GradedPolynomial::y(), GradedPolynomial::z());

    // degree-n associativity defect of f_q
    let left = f.compose_xy(&f.compose_xy(&x, &y, n), &z, n);
    let right = f.compose_xy(&x, &f.compose_xy(&y, &z, n), n);
    let defect = (&left - &right).homogeneous_part(n);

    // integer matrix of δ on the symmetric basis, rows indexed by x^a y^b z^c
    let basis = symmetric_basis(n);
    let rows: Vec<[u32; 4]> = (0..=n)
        .flat_map(|a| (0..=n - a).map(move |b| [a, b, n - a - b, 0]))
        .collect();
    let images: Vec<GradedPolynomial> = basis.iter().map(coboundary).collect();
    let matrix: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            images
                .iter()
                .map(|img| to_integer(&img.coefficient(&Monomial::new(*r, Vec::new()))).expect("δ has integer entries"))
                .collect()
        })
        .collect();
    let hermite = ColumnHermite::new(&matrix, basis.len());

    // C_n in the same basis; its x·y^{n−1} coefficient fixes the canonical representative
    let d = cocycle_divisor(n);
    let cocycle_coords: Vec<BigInt> = (1..=n / 2).map(|k| binomial(n, k) / &d).collect();
    let period = cocycle_coords[0].clone();

    let mut correction = GradedPolynomial::zero();
    for (gen_mono, part) in defect.by_generator_monomial() {
        let rhs: Option<Vec<BigInt>> = rows
            .iter()
            .map(|r| to_integer(&part.coefficient(&Monomial::new(*r, Vec::new()))))
            .collect();
        let solution = rhs.as_ref().and_then(|b| hermite.solve(b));
        let Some(mut coords) = solution else {
            return Err(FglError::IntegralSolveFailed {
                stage: q,
                generator_monomial: format!("{gen_mono}"),
                system: describe_system(&rows, &matrix, &part),
            });
        };
        let shift = coords[0].div_floor(&period);
        for (c, k) in coords.iter_mut().zip(&cocycle_coords) {
            *c -= &shift * k;
        }
        for (c, g) in coords.iter().zip(&basis) {
            if !c.is_zero() {
                correction = &correction + &g.mul_monomial(&gen_mono).scale(&Rational::from_integer(c.clone()));
            }
        }
    }

    let cocycle = sym_cocycle(n)?;
    let new_gen = GradedPolynomial::generator(q + 1);
    let law = &(f + &correction) + &(&new_gen * &cocycle);
    let log = log_of_law(&law, n);
    Ok(LazardState {
        stage: q + 1,
        law: Bud::new_unchecked(law, n),
        log,
    })
}

fn describe_system(rows: &[[u32; 4]], matrix: &[Vec<BigInt>], rhs: &GradedPolynomial) -> String {
    let mut out = String::new();
    for (r, row) in rows.iter().zip(matrix) {
        let b = rhs.coefficient(&Monomial::new(*r, Vec::new()));
        out.push_str(&format!("x^{} y^{} z^{}: {:?} = {}\n", r[0], r[1], r[2], row, b));
    }
    out
}

/// Runs the tower up to stage `q` with the default ceiling.
pub fn universal_bud(q: usize) -> Result<LazardState, FglError> {
    universal_bud_bounded(q, DEFAULT_STAGE_CEILING)
}

pub fn universal_bud_bounded(q: usize, ceiling: usize) -> Result<LazardState, FglError> {
    if q == 0 {
        return Err(FglError::InvalidStage(q));
    }
    if q > ceiling {
        return Err(FglError::StageCeiling { requested: q, ceiling });
    }
    let mut state = LazardState::initial();
    while state.stage < q {
        state = extend_bud(&state)?;
    }
    Ok(state)
}

/// Every stage `1 ..= q`.
pub fn universal_tower(q: usize, ceiling: usize) -> Result<Vec<LazardState>, FglError> {
    if q > ceiling {
        return Err(FglError::StageCeiling { requested: q, ceiling });
    }
    let mut out: Vec<LazardState> = Vec::with_capacity(q);
    let mut state = LazardState::initial();
    for _ in 0..q {
        state = extend_bud(&state)?;
        out.push(state.clone());
    }
    Ok(out)
}

/// Per-monomial weight check: the coefficient of `x^i y^j` must have pure
/// weight `i + j − 1`. Returns the offending monomials.
pub fn weight_violations(law: &GradedPolynomial) -> Vec<Monomial> {
    law.terms()
        .filter(|(m, _)| m.weight() + 1 != m.degree())
        .map(|(m, _)| m.clone())
        .collect()
}

/// Generator assignments keyed by generator index.
pub type Assignment = BTreeMap<usize, GradedPolynomial>;
