use alloc::vec::Vec;

use super::{bud_defects, Bud, FglError, GradedPolynomial, Monomial, Var};
use crate::Rational;

/// `φ(t) = t + Σ_{k≥1} m_k t^{k+1}` known up to `t^degree`.
/// `coefficients()[k]` is `m_k` (so the first entry is `1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogSeries {
    coefficients: Vec<GradedPolynomial>,
}

impl LogSeries {
    /// `coefficients[k]` multiplies `t^{k+1}`; the first must be `1`.
    pub fn new(coefficients: Vec<GradedPolynomial>) -> Result<Self, FglError> {
        match coefficients.first() {
            Some(c) if *c == GradedPolynomial::one() => {}
            _ => return Err(FglError::NotALogarithm("the coefficient of t must be 1")),
        }
        if coefficients.iter().any(GradedPolynomial::uses_series_vars) {
            return Err(FglError::NotALogarithm("coefficients may only involve the generators"));
        }
        Ok(LogSeries { coefficients })
    }

    /// Reads the coefficients of `t^1 … t^degree` from a polynomial in `t`.
    pub fn from_polynomial(p: &GradedPolynomial, degree: u32) -> Result<Self, FglError> {
        if p.uses_var(Var::X) || p.uses_var(Var::Y) || p.uses_var(Var::Z) {
            return Err(FglError::NotALogarithm("a logarithm is a series in t alone"));
        }
        if !p.coefficient_of([0; 4]).is_zero() {
            return Err(FglError::NotALogarithm("a logarithm has no constant term"));
        }
        Self::new((1..=degree).map(|k| p.coefficient_of([0, 0, 0, k])).collect())
    }

    pub fn identity(degree: u32) -> Self {
        let mut coefficients = alloc::vec![GradedPolynomial::zero(); degree.max(1) as usize];
        coefficients[0] = GradedPolynomial::one();
        LogSeries { coefficients }
    }

    pub fn degree(&self) -> u32 {
        self.coefficients.len() as u32
    }

    pub fn coefficients(&self) -> &[GradedPolynomial] {
        &self.coefficients
    }

    /// `φ` as a polynomial in the series variable `v`.
    pub fn to_polynomial(&self, v: Var) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero();
        for (k, c) in self.coefficients.iter().enumerate() {
            out = &out + &c.mul_monomial(&Monomial::var(v, k as u32 + 1));
        }
        out
    }

    /// `φ(p)` keeping series degree `≤ max_degree`; `p` should have no constant term.
    pub fn apply(&self, p: &GradedPolynomial, max_degree: u32) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero();
        let mut power = p.truncate(max_degree);
        for c in &self.coefficients {
            if power.is_zero() {
                break;
            }
            out = &out + &power.mul_truncated(c, max_degree);
            power = power.mul_truncated(p, max_degree);
        }
        out
    }

    pub fn truncate(&self, degree: u32) -> Self {
        LogSeries {
            coefficients: self.coefficients.iter().take(degree.max(1) as usize).cloned().collect(),
        }
    }
}

/// The logarithm of a bud: `φ' = 1 / (∂F/∂x)(0, t)` integrated termwise,
/// so that `φ(F(x, y)) = φ(x) + φ(y)` modulo degree `m + 1`.
pub fn log_of_bud(bud: &Bud) -> Result<LogSeries, FglError> {
    let m = bud.degree();
    let defects = bud_defects(bud.law(), m);
    if !defects.is_zero() {
        return Err(FglError::NotABud {
            degree: m,
            defects: alloc::boxed::Box::new(defects),
        });
    }
    Ok(log_of_law(bud.law(), m))
}

pub(crate) fn log_of_law(law: &GradedPolynomial, m: u32) -> LogSeries {
    if m == 0 {
        return LogSeries::identity(1);
    }
    let zero = GradedPolynomial::zero();
    let t = GradedPolynomial::t();
    // p(t) = 1 + r(t)
    let p = law.derivative(Var::X).compose_xy(&zero, &t, m - 1);
    let r = &p - &GradedPolynomial::one();
    // 1/p = Σ (−r)^k
    let neg_r = -&r;
    let mut inv = GradedPolynomial::one();
    let mut power = GradedPolynomial::one();
    for _ in 1..m {
        power = power.mul_truncated(&neg_r, m - 1);
        if power.is_zero() {
            break;
        }
        inv = &inv + &power;
    }
    let coefficients = (0..m)
        .map(|k| {
            inv.coefficient_of([0, 0, 0, k])
                .scale(&Rational::new(1.into(), (k + 1).into()))
        })
        .collect();
    LogSeries { coefficients }
}

/// Compositional inverse `ψ` with `ψ(φ(t)) = φ(ψ(t)) = t` modulo degree `m + 1`.
pub fn reversion(phi: &LogSeries, m: u32) -> LogSeries {
    let t = GradedPolynomial::t();
    let mut psi = LogSeries::identity(m);
    for k in 2..=m {
        let composed = phi.apply(&psi.to_polynomial(Var::T), k);
        let excess = composed.coefficient_of([0, 0, 0, k]);
        psi.coefficients[k as usize - 1] = &psi.coefficients[k as usize - 1] - &excess;
    }
    debug_assert_eq!(phi.apply(&psi.to_polynomial(Var::T), m), t.truncate(m));
    psi
}

/// `F(x, y) = φ^{-1}(φ(x) + φ(y))` modulo degree `m + 1`.
pub fn fgl_from_log(phi: &LogSeries, m: u32) -> Result<Bud, FglError> {
    if phi.degree() < m {
        return Err(FglError::LogTooShort {
            have: phi.degree(),
            need: m,
        });
    }
    let phi = phi.truncate(m);
    let psi = reversion(&phi, m);
    let sum = &phi.to_polynomial(Var::X) + &phi.to_polynomial(Var::Y);
    Ok(Bud::new_unchecked(psi.apply(&sum, m), m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use alloc::string::ToString;

    #[test]
    fn additive_log() {
        let log = log_of_bud(&Bud::additive(4)).unwrap();
        assert_eq!(log.to_polynomial(Var::T).to_string(), "t");
    }

    #[test]
    fn multiplicative_log() {
        let a1 = GradedPolynomial::generator(1);
        let log = log_of_bud(&Bud::multiplicative(&a1, 2)).unwrap();
        assert_eq!(log.to_polynomial(Var::T).to_string(), "t - 1/2*a1*t^2");
        let log = log_of_bud(&Bud::multiplicative(&a1, 3)).unwrap();
        assert_eq!(log.to_polynomial(Var::T).to_string(), "t - 1/2*a1*t^2 + 1/3*a1^2*t^3");
        let one = GradedPolynomial::one();
        let log = log_of_bud(&Bud::multiplicative(&one, 3)).unwrap();
        assert_eq!(log.to_polynomial(Var::T).to_string(), "t - 1/2*t^2 + 1/3*t^3");
    }

    #[test]
    fn exp_of_truncated_logs() {
        assert_eq!(
            fgl_from_log(&LogSeries::identity(5), 5).unwrap().law().to_string(),
            "x + y"
        );
        let phi = LogSeries::from_polynomial(
            &(&GradedPolynomial::t()
                - &GradedPolynomial::term(Monomial::new([0, 0, 0, 2], alloc::vec![1]), ratio(1, 2))),
            2,
        )
        .unwrap();
        assert_eq!(fgl_from_log(&phi, 2).unwrap().law().to_string(), "x + y + a1*x*y");
        assert_eq!(fgl_from_log(&phi, 3), Err(FglError::LogTooShort { have: 2, need: 3 }));
    }

    #[test]
    fn malformed_logs() {
        assert!(LogSeries::new(alloc::vec![GradedPolynomial::constant(ratio(2, 1))]).is_err());
        assert!(LogSeries::from_polynomial(&GradedPolynomial::x(), 2).is_err());
        assert!(LogSeries::from_polynomial(&(&GradedPolynomial::t() + &GradedPolynomial::one()), 2).is_err());
    }

    #[test]
    fn non_bud_has_no_log() {
        let law = &(&GradedPolynomial::x() + &GradedPolynomial::y()) + &GradedPolynomial::x().pow_truncated(2, 2);
        assert!(matches!(
            log_of_bud(&Bud::new_unchecked(law, 2)),
            Err(FglError::NotABud { .. })
        ));
    }
}
