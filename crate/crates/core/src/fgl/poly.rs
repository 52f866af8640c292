use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::format_rational;
use crate::Rational;

/// Series variables. Truncation degrees only count these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    T,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z", "t"][self.index()]
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

/// `x^a y^b z^c t^d · α_1^{e_1} α_2^{e_2} ⋯`.
///
/// Ordered by ascending degree in the series variables, then by descending
/// exponent vector `(x, y, z, t, α_1, α_2, …)` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    vars: [u32; 4],
    // exponent of α_{k+1}; no trailing zeros
    gens: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            vars: [0; 4],
            gens: Vec::new(),
        }
    }

    pub fn new(vars: [u32; 4], gens: Vec<u32>) -> Self {
        let mut m = Monomial { vars, gens };
        m.trim();
        m
    }

    pub fn var(v: Var, exponent: u32) -> Self {
        let mut vars = [0; 4];
        vars[v.index()] = exponent;
        Monomial { vars, gens: Vec::new() }
    }

    /// `α_k^exponent`, `k ≥ 1`.
    pub fn generator(k: usize, exponent: u32) -> Self {
        assert!(k >= 1, "generators are numbered from 1");
        let mut gens = alloc::vec![0; k];
        gens[k - 1] = exponent;
        Monomial::new([0; 4], gens)
    }

    fn trim(&mut self) {
        while self.gens.last() == Some(&0) {
            self.gens.pop();
        }
    }

    pub fn vars(&self) -> [u32; 4] {
        self.vars
    }

    pub fn var_exponent(&self, v: Var) -> u32 {
        self.vars[v.index()]
    }

    /// Exponent of `α_k`.
    pub fn gen_exponent(&self, k: usize) -> u32 {
        self.gens.get(k - 1).copied().unwrap_or(0)
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    /// Total degree in the series variables.
    pub fn degree(&self) -> u32 {
        self.vars.iter().sum()
    }

    /// Weight of the generator part, `α_k` weighing `k`.
    pub fn weight(&self) -> u32 {
        self.gens.iter().enumerate().map(|(k, e)| (k as u32 + 1) * e).sum()
    }

    pub fn generator_part(&self) -> Monomial {
        Monomial {
            vars: [0; 4],
            gens: self.gens.clone(),
        }
    }

    pub fn var_part(&self) -> Monomial {
        Monomial {
            vars: self.vars,
            gens: Vec::new(),
        }
    }

    pub fn highest_generator(&self) -> usize {
        self.gens.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut vars = self.vars;
        for (a, b) in vars.iter_mut().zip(other.vars) {
            *a += b;
        }
        let (long, short) = if self.gens.len() >= other.gens.len() {
            (&self.gens, &other.gens)
        } else {
            (&other.gens, &self.gens)
        };
        let mut gens = long.clone();
        for (a, b) in gens.iter_mut().zip(short) {
            *a += b;
        }
        Monomial { vars, gens }
    }

    fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.vars.iter().copied().chain(self.gens.iter().copied())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // descending lex on exponent vectors, missing entries read as zero
            let len = 4 + self.gens.len().max(other.gens.len());
            let a = self.exponents().chain(core::iter::repeat(0)).take(len);
            let b = other.exponents().chain(core::iter::repeat(0)).take(len);
            b.cmp(a)
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// `a1^2*a3*x*y^2`; the empty monomial prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut factor = |f: &mut fmt::Formatter<'_>, name: &dyn fmt::Display, e: u32| -> fmt::Result {
            if e == 0 {
                return Ok(());
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")
            } else {
                write!(f, "{name}^{e}")
            }
        };
        for (k, &e) in self.gens.iter().enumerate() {
            factor(f, &format_args!("a{}", k + 1), e)?;
        }
        for v in Var::ALL {
            factor(f, &v.name(), self.vars[v.index()])?;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Exact polynomial in `x, y, z, t` and the generators `α_1, α_2, …` with
/// rational coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPolynomial {
    pub fn zero() -> Self {
        GradedPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), Rational::one())
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn y() -> Self {
        Self::var(Var::Y)
    }

    pub fn z() -> Self {
        Self::var(Var::Z)
    }

    pub fn t() -> Self {
        Self::var(Var::T)
    }

    /// The Lazard generator `α_k`.
    pub fn generator(k: usize) -> Self {
        Self::term(Monomial::generator(k, 1), Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest series degree present, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest series degree present, `None` for zero.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn highest_generator(&self) -> usize {
        self.terms.keys().map(Monomial::highest_generator).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.var_exponent(v) > 0)
    }

    pub fn uses_series_vars(&self) -> bool {
        self.terms.keys().any(|m| m.degree() > 0)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Keeps the terms of series degree at most `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        GradedPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        GradedPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        GradedPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        GradedPolynomial {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Product keeping only series degree `≤ max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > max_degree {
                // terms are sorted by degree
                break;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree() > max_degree {
                    break;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow_truncated(&self, exponent: u32, max_degree: u32) -> Self {
        let mut acc = Self::one().truncate(max_degree);
        for _ in 0..exponent {
            acc = acc.mul_truncated(self, max_degree);
        }
        acc
    }

    /// Simultaneously replaces each series variable `v` by `subs[v]` (or
    /// keeps it when `None`), keeping series degree `≤ max_degree`.
    pub fn substitute(&self, subs: &[Option<&GradedPolynomial>; 4], max_degree: u32) -> Self {
        let images: Vec<GradedPolynomial> = Var::ALL
            .iter()
            .map(|&v| subs[v.index()].cloned().unwrap_or_else(|| Self::var(v)))
            .collect();
        let mut powers: Vec<Vec<GradedPolynomial>> = images.iter().map(|_| alloc::vec![Self::one()]).collect();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::term(m.generator_part(), c.clone());
            for v in 0..4 {
                let e = m.vars[v] as usize;
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e {
                    let next = powers[v].last().unwrap().mul_truncated(&images[v], max_degree);
                    powers[v].push(next);
                }
                acc = acc.mul_truncated(&powers[v][e], max_degree);
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// `self(x ↦ a, y ↦ b)` with every other variable kept.
    pub fn compose_xy(&self, a: &GradedPolynomial, b: &GradedPolynomial, max_degree: u32) -> Self {
        self.substitute(&[Some(a), Some(b), None, None], max_degree)
    }

    /// Replaces generators `α_k` by `assignment[k]`. Every generator that occurs
    /// must be assigned; otherwise its index is returned.
    pub fn substitute_generators(&self, assignment: &BTreeMap<usize, GradedPolynomial>) -> Result<Self, usize> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::term(m.var_part(), c.clone());
            for (k, &e) in m.gens.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let image = assignment.get(&(k + 1)).ok_or(k + 1)?;
                for _ in 0..e {
                    acc = &acc * image;
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.vars[v.index()];
            if e == 0 {
                continue;
            }
            let mut vars = m.vars;
            vars[v.index()] -= 1;
            out.add_term(
                Monomial {
                    vars,
                    gens: m.gens.clone(),
                },
                c * Rational::from_integer(e.into()),
            );
        }
        out
    }

    /// Coefficient of the series monomial `vars`, as a polynomial in the generators.
    pub fn coefficient_of(&self, vars: [u32; 4]) -> Self {
        GradedPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.vars == vars)
                .map(|(m, c)| (m.generator_part(), c.clone()))
                .collect(),
        }
    }

    /// Groups the terms by their series monomial.
    pub fn by_series_monomial(&self) -> BTreeMap<[u32; 4], GradedPolynomial> {
        let mut out: BTreeMap<[u32; 4], GradedPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.vars).or_default().add_term(m.generator_part(), c.clone());
        }
        out
    }

    /// Groups the terms by their generator monomial.
    pub fn by_generator_monomial(&self) -> BTreeMap<Monomial, GradedPolynomial> {
        let mut out: BTreeMap<Monomial, GradedPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.generator_part())
                .or_default()
                .add_term(m.var_part(), c.clone());
        }
        out
    }

    /// Swaps the roles of two series variables.
    pub fn swap_vars(&self, a: Var, b: Var) -> Self {
        let (pa, pb) = (Self::var(a), Self::var(b));
        let mut subs: [Option<&GradedPolynomial>; 4] = [None; 4];
        subs[a.index()] = Some(&pb);
        subs[b.index()] = Some(&pa);
        self.substitute(&subs, u32::MAX)
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(Signed::abs)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a })
    }
}

impl Add for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn add(self, rhs: Self) -> GradedPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn sub(self, rhs: Self) -> GradedPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn mul(self, rhs: Self) -> GradedPolynomial {
        self.mul_truncated(rhs, u32::MAX)
    }
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn neg(self) -> GradedPolynomial {
        GradedPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl fmt::Display for GradedPolynomial {
    /// Canonical text such as `x + y + a1*x*y` or `t - 1/2*a1*t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let is_const = *m == Monomial::one();
            if is_const {
                f.write_str(&format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use alloc::string::ToString;

    fn f1() -> GradedPolynomial {
        let a1xy = GradedPolynomial::generator(1).mul_monomial(&Monomial::new([1, 1, 0, 0], alloc::vec![]));
        &(&GradedPolynomial::x() + &GradedPolynomial::y()) + &a1xy
    }

    #[test]
    fn canonical_text() {
        assert_eq!(f1().to_string(), "x + y + a1*x*y");
        let phi =
            &GradedPolynomial::t() - &GradedPolynomial::term(Monomial::new([0, 0, 0, 2], alloc::vec![1]), ratio(1, 2));
        assert_eq!(phi.to_string(), "t - 1/2*a1*t^2");
        assert_eq!(GradedPolynomial::zero().to_string(), "0");
        assert_eq!(GradedPolynomial::constant(ratio(-3, 4)).to_string(), "-3/4");
        let m = Monomial::new([1, 2, 0, 0], alloc::vec![2, 0, 1]);
        assert_eq!(m.to_string(), "a1^2*a3*x*y^2");
        assert_eq!(m.weight(), 5);
    }

    #[test]
    fn monomial_order() {
        let x = Monomial::var(Var::X, 1);
        let y = Monomial::var(Var::Y, 1);
        let xy = Monomial::new([1, 1, 0, 0], alloc::vec![]);
        let one = Monomial::one();
        let a1 = Monomial::generator(1, 1);
        assert!(x < y);
        assert!(y < xy);
        assert!(a1 < one);
        assert!(one < x);
        assert_eq!(Monomial::new([0; 4], alloc::vec![1, 0, 0]), a1);
    }

    #[test]
    fn substitution_and_truncation() {
        // (x + y + a1 x y)(x ↦ x + y + a1 x y, y ↦ z) truncated to degree 2
        let f = f1();
        let g = f.compose_xy(&f, &GradedPolynomial::z(), 2);
        assert_eq!(g.to_string(), "x + y + z + a1*x*y + a1*x*z + a1*y*z");
        assert_eq!(g.degree(), Some(2));
        let full = f.compose_xy(&f, &GradedPolynomial::z(), u32::MAX);
        assert_eq!(full.degree(), Some(3));
    }

    #[test]
    fn generator_substitution() {
        let mut assignment = BTreeMap::new();
        assignment.insert(1, GradedPolynomial::constant(int(3)));
        let g = f1().substitute_generators(&assignment).unwrap();
        assert_eq!(g.to_string(), "x + y + 3*x*y");
        assert_eq!(f1().substitute_generators(&BTreeMap::new()), Err(1));
    }

    #[test]
    fn derivative_and_coefficients() {
        let f = f1();
        assert_eq!(f.derivative(Var::X).to_string(), "1 + a1*y");
        assert_eq!(f.coefficient_of([1, 1, 0, 0]), GradedPolynomial::generator(1));
        assert_eq!(f.swap_vars(Var::X, Var::Y), f);
        assert!(f.is_integral());
        assert!(!f.scale(&ratio(1, 2)).is_integral());
    }
}
