use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{FglError, GradedPolynomial, Monomial, Var};
use crate::Rational;

/// A commutative one-dimensional formal group law known modulo series
/// degree `degree + 1`: unit, commutativity and associativity hold for all
/// terms of degree `≤ degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bud {
    degree: u32,
    law: GradedPolynomial,
}

impl Bud {
    /// Truncates `law` to `degree` and checks the three axioms.
    pub fn new(law: GradedPolynomial, degree: u32) -> Result<Self, FglError> {
        let law = law.truncate(degree);
        let defects = bud_defects(&law, degree);
        if !defects.is_zero() {
            return Err(FglError::NotABud {
                degree,
                defects: alloc::boxed::Box::new(defects),
            });
        }
        Ok(Bud { degree, law })
    }

    pub(crate) fn new_unchecked(law: GradedPolynomial, degree: u32) -> Self {
        Bud {
            degree,
            law: law.truncate(degree),
        }
    }

    /// The additive law `x + y`.
    pub fn additive(degree: u32) -> Self {
        Bud::new_unchecked(&GradedPolynomial::x() + &GradedPolynomial::y(), degree)
    }

    /// `x + y + u·xy`.
    pub fn multiplicative(u: &GradedPolynomial, degree: u32) -> Self {
        let xy = GradedPolynomial::term(Monomial::new([1, 1, 0, 0], Vec::new()), Rational::one());
        let law = &(&GradedPolynomial::x() + &GradedPolynomial::y()) + &(u * &xy);
        Bud::new_unchecked(law, degree)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn law(&self) -> &GradedPolynomial {
        &self.law
    }

    pub fn into_law(self) -> GradedPolynomial {
        self.law
    }

    /// `F(a, b)` modulo degree `degree + 1`.
    pub fn apply(&self, a: &GradedPolynomial, b: &GradedPolynomial) -> GradedPolynomial {
        self.law.compose_xy(a, b, self.degree)
    }
}

/// Defect polynomials of the bud axioms; all zero exactly for a bud.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudDefects {
    /// `F(F(x,y),z) − F(x,F(y,z))`
    pub associativity: GradedPolynomial,
    /// `F(x,y) − F(y,x)`
    pub commutativity: GradedPolynomial,
    /// `(F(x,0) − x) + (F(0,y) − y)`
    pub unit: GradedPolynomial,
}

impl BudDefects {
    pub fn is_zero(&self) -> bool {
        self.associativity.is_zero() && self.commutativity.is_zero() && self.unit.is_zero()
    }
}

/// The three axiom defects of `law`, keeping terms of series degree `≤ m`.
pub fn bud_defects(law: &GradedPolynomial, m: u32) -> BudDefects {
    let (x, y, z) = (GradedPolynomial::x(), GradedPolynomial::y(), GradedPolynomial::z());
    let f = law.truncate(m);
    let left = f.compose_xy(&f, &z, m);
    let inner = f.compose_xy(&y, &z, m);
    let right = f.compose_xy(&x, &inner, m);
    let zero = GradedPolynomial::zero();
    let unit = &(&f.compose_xy(&x, &zero, m) - &x) + &(&f.compose_xy(&zero, &y, m) - &y);
    BudDefects {
        associativity: &left - &right,
        commutativity: &f - &f.swap_vars(Var::X, Var::Y),
        unit: unit.truncate(m),
    }
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `gcd` of the binomial coefficients `C(n, k)`, `0 < k < n`.
pub fn cocycle_divisor(n: u32) -> BigInt {
    (1..n).fold(BigInt::zero(), |g, k| g.gcd(&binomial(n, k)))
}

/// `C_n(x, y) = ((x + y)^n − x^n − y^n) / d_n` with `d_n` from [`cocycle_divisor`].
pub fn sym_cocycle(n: u32) -> Result<GradedPolynomial, FglError> {
    if n < 2 {
        return Err(FglError::CocycleDegree(n));
    }
    let d = cocycle_divisor(n);
    Ok(GradedPolynomial::from_terms((1..n).map(|k| {
        (
            Monomial::new([k, n - k, 0, 0], Vec::new()),
            Rational::from_integer(binomial(n, k) / &d),
        )
    })))
}
