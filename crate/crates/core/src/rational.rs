//! Exact rational numbers backed by arbitrary precision integers.

use alloc::string::String;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Builds `num/den` from machine integers.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` (optional sign, surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Canonical `p/q` text; integers print without a denominator.
pub fn format_rational(r: &Rational) -> String {
    use alloc::string::ToString;
    if r.is_integer() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    // Scale down large operands so the quotient stays representable.
    let (n, d) = (r.numer(), r.denom());
    let bits = n.bits().max(d.bits());
    if bits < 1000 {
        big_to_f64(n) / big_to_f64(d)
    } else {
        let shift = bits - 900;
        big_to_f64(&(n >> shift)) / big_to_f64(&(d >> shift))
    }
}

fn big_to_f64(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Least common multiple of `1..=n`.
pub fn lcm_upto(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 1..=n {
        acc = acc.lcm(&BigInt::from(k));
    }
    acc
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
