use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Bud, FglError, GradedPolynomial, LazardState, LogSeries};
use crate::Rational;

/// Classes `[ℂP^k]` read off the logarithm: `[ℂP^k] = (k + 1)·m_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MishchenkoClasses {
    classes: Vec<GradedPolynomial>,
}

impl MishchenkoClasses {
    /// `classes()[k]` is `[ℂP^k]`; the first entry is `1`.
    pub fn classes(&self) -> &[GradedPolynomial] {
        &self.classes
    }

    /// `g(t) = Σ_k [ℂP^k]/(k+1) · t^{k+1}`.
    pub fn logarithm(&self) -> LogSeries {
        let coefficients = self
            .classes
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&Rational::new(1.into(), (k as i64 + 1).into())))
            .collect();
        LogSeries::new(coefficients).expect("[CP^0] = 1")
    }
}

/// `[ℂP^k]` for `0 ≤ k ≤ q` from the stage-`q` logarithm.
pub fn mishchenko_classes(state: &LazardState) -> MishchenkoClasses {
    let classes = state
        .log()
        .coefficients()
        .iter()
        .enumerate()
        .map(|(k, m)| m.scale(&Rational::from_integer((k as i64 + 1).into())))
        .collect();
    MishchenkoClasses { classes }
}

/// First Chern class of a tensor product, `F(a, b)`, modulo degree `m + 1`.
/// Both classes must have no constant term.
pub fn quillen_c1_tensor(
    bud: &Bud,
    a: &GradedPolynomial,
    b: &GradedPolynomial,
    m: u32,
) -> Result<GradedPolynomial, FglError> {
    for (name, p) in [("a", a), ("b", b)] {
        if p.low_degree() == Some(0) {
            return Err(FglError::ConstantTerm(name));
        }
    }
    Ok(bud.law().compose_xy(a, b, m.min(bud.degree())))
}

/// Applies a ring map `α_k ↦ assignment[k]` to the coefficients.
pub fn specialize(bud: &Bud, assignment: &BTreeMap<usize, GradedPolynomial>) -> Result<Bud, FglError> {
    for (&k, p) in assignment {
        if p.uses_series_vars() {
            return Err(FglError::AssignmentUsesSeriesVariable(k));
        }
    }
    let law = bud
        .law()
        .substitute_generators(assignment)
        .map_err(FglError::IncompleteAssignment)?;
    Ok(Bud::new_unchecked(law, bud.degree()))
}

#[cfg(test)]
mod tests {
    use super::super::{bud_defects, universal_bud, Monomial, Var};
    use super::*;
    use crate::rational::int;
    use alloc::string::ToString;

    #[test]
    fn first_classes() {
        let s1 = universal_bud(1).unwrap();
        let c = mishchenko_classes(&s1);
        assert_eq!(c.classes()[0], GradedPolynomial::one());
        assert_eq!(c.classes()[1], -&GradedPolynomial::generator(1));
        assert_eq!(c.logarithm(), *s1.log());
    }

    #[test]
    fn quillen_for_multiplicative_law() {
        let u = GradedPolynomial::generator(1);
        let f = Bud::multiplicative(&u, 4);
        let (a, b) = (GradedPolynomial::z(), GradedPolynomial::t());
        let c = quillen_c1_tensor(&f, &a, &b, 4).unwrap();
        assert_eq!(c.to_string(), "z + t + a1*z*t");
        assert_eq!(quillen_c1_tensor(&f, &GradedPolynomial::zero(), &b, 4).unwrap(), b);
        let with_const = &a + &GradedPolynomial::one();
        assert_eq!(
            quillen_c1_tensor(&f, &with_const, &b, 4),
            Err(FglError::ConstantTerm("a"))
        );
        let gen_only = GradedPolynomial::generator(2);
        assert_eq!(
            quillen_c1_tensor(&f, &a, &gen_only, 4),
            Err(FglError::ConstantTerm("b"))
        );
    }

    #[test]
    fn specialization() {
        let f1 = universal_bud(1).unwrap().law().clone();
        let mut zero = BTreeMap::new();
        zero.insert(1, GradedPolynomial::zero());
        assert_eq!(specialize(&f1, &zero).unwrap().law().to_string(), "x + y");
        assert_eq!(
            specialize(&f1, &BTreeMap::new()),
            Err(FglError::IncompleteAssignment(1))
        );
        let mut bad = BTreeMap::new();
        bad.insert(1, GradedPolynomial::x());
        assert_eq!(specialize(&f1, &bad), Err(FglError::AssignmentUsesSeriesVariable(1)));

        let f3 = universal_bud(3).unwrap().law().clone();
        let mut a = BTreeMap::new();
        a.insert(1, GradedPolynomial::constant(int(2)));
        a.insert(2, GradedPolynomial::constant(int(-5)));
        a.insert(3, GradedPolynomial::term(Monomial::generator(1, 3), int(1)));
        let s = specialize(&f3, &a).unwrap();
        assert!(bud_defects(s.law(), 4).is_zero());
        assert!(!s.law().uses_var(Var::Z));
    }
}
