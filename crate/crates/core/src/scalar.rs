//! Scalar fields the polynomial machinery runs over.
//!
//! Everything in this crate is generic over [`Scalar`]. Two families are
//! provided: exact rationals ([`BigRational`]), where every comparison is
//! decided exactly, and binary floating point (`f64`, `f32`), where
//! comparisons go through an absolute tolerance.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// A real field usable for polynomial arithmetic, root isolation and the
/// feasibility criteria.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Num
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Whether arithmetic is exact (equality is decidable).
    const EXACT: bool;

    /// Absolute tolerance for sign decisions. Zero for exact types.
    fn default_tolerance() -> Self;

    /// Target precision for approximating irrational (exact types) or any
    /// (floating types) real roots.
    fn root_tolerance() -> Self;

    /// Parses an integer, a decimal with optional exponent, or a `p/q` fraction.
    fn parse_literal(token: &str) -> Option<Self>;

    /// A representative of the closed interval `[lo, hi]`. For rationals this
    /// is the element with the smallest denominator; for floats the midpoint.
    fn simplest_between(lo: &Self, hi: &Self) -> Self;

    /// For exact types, a positive width `δ` such that any interval shorter
    /// than `δ` holds at most one rational root of the polynomial with these
    /// coefficients. `None` for inexact types.
    fn rational_root_separation(coeffs: &[Self]) -> Option<Self>;

    /// For exact types, the primitive integer polynomial with the same roots
    /// and a positive multiple of these coefficients. `None` for inexact types.
    fn integer_form(_coeffs: &[Self]) -> Option<Vec<BigInt>> {
        None
    }

    /// The exact rational value, for exact types.
    fn to_rational(&self) -> Option<BigRational> {
        None
    }

    /// The nearest representable value.
    fn from_rational(q: &BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar type represents small integers")
    }

    fn ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `|self| <= tol`.
    fn is_negligible(&self, tol: &Self) -> bool {
        self.abs() <= *tol
    }
}

/// Larger of two values (first one on ties).
pub fn max_of<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

/// Smaller of two values (first one on ties).
pub fn min_of<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn default_tolerance() -> Self {
        Self::zero()
    }

    fn root_tolerance() -> Self {
        Self::new(BigInt::one(), BigInt::from(10u32).pow(15))
    }

    fn parse_literal(token: &str) -> Option<Self> {
        parse_exact(token.trim())
    }

    fn simplest_between(lo: &Self, hi: &Self) -> Self {
        if lo > hi {
            return simplest_rational(hi, lo);
        }
        simplest_rational(lo, hi)
    }

    fn rational_root_separation(coeffs: &[Self]) -> Option<Self> {
        let ints = Self::integer_form(coeffs)?;
        let bound = ints.iter().rev().find(|c| !c.is_zero())?.abs();
        Some(BigRational::new(BigInt::one(), &bound * &bound))
    }

    fn integer_form(coeffs: &[Self]) -> Option<Vec<BigInt>> {
        let denom_lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if content.is_zero() {
            return Some(ints);
        }
        Some(ints.into_iter().map(|n| n / &content).collect())
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

/// Stern–Brocot descent: the rational with the smallest denominator in `[lo, hi]`.
fn simplest_rational(lo: &BigRational, hi: &BigRational) -> BigRational {
    if !lo.is_positive() && !hi.is_negative() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_rational(&-hi, &-lo);
    }
    let floor = lo.floor();
    if floor == *lo {
        return floor;
    }
    let next = &floor + BigRational::one();
    if next <= *hi {
        return next;
    }
    let inner = simplest_rational(&(hi - &floor).recip(), &(lo - &floor).recip());
    floor + inner.recip()
}

fn parse_exact(token: &str) -> Option<BigRational> {
    if let Some((numer, denom)) = token.split_once('/') {
        let numer = parse_exact(numer.trim())?;
        let denom = parse_exact(denom.trim())?;
        if denom.is_zero() {
            return None;
        }
        return Some(numer / denom);
    }
    let (mantissa, exponent) = match token.find(['e', 'E']) {
        Some(at) => (&token[..at], token[at + 1..].parse::<i32>().ok()?),
        None => (token, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let all_digits = format!("{whole}{frac}");
    let mut value = BigRational::from_integer(BigInt::from_str_radix(&all_digits, 10).ok()?);
    let shift = exponent - frac.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10u32));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, shift.unsigned_abs() as usize);
    }
    Some(if negative { -value } else { value })
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn default_tolerance() -> Self {
                $tol
            }

            fn root_tolerance() -> Self {
                $tol
            }

            fn parse_literal(token: &str) -> Option<Self> {
                let token = token.trim();
                let value = match token.split_once('/') {
                    Some((n, d)) => n.trim().parse::<$t>().ok()? / d.trim().parse::<$t>().ok()?,
                    None => token.parse::<$t>().ok()?,
                };
                value.is_finite().then_some(value)
            }

            fn simplest_between(lo: &Self, hi: &Self) -> Self {
                0.5 * (lo + hi)
            }

            fn rational_root_separation(_coeffs: &[Self]) -> Option<Self> {
                None
            }

            fn from_rational(q: &BigRational) -> Self {
                q.to_f64().unwrap_or(f64::NAN) as $t
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-4);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::ratio(n, d)
    }

    #[test]
    fn parses_exact_literals() {
        assert_eq!(BigRational::parse_literal("47/10"), Some(q(47, 10)));
        assert_eq!(BigRational::parse_literal("-0.2"), Some(q(-1, 5)));
        assert_eq!(BigRational::parse_literal("+4"), Some(q(4, 1)));
        assert_eq!(BigRational::parse_literal(".5"), Some(q(1, 2)));
        assert_eq!(BigRational::parse_literal("1.5e-2"), Some(q(3, 200)));
        assert_eq!(BigRational::parse_literal("2E3"), Some(q(2000, 1)));
        assert_eq!(BigRational::parse_literal("-1/-5"), Some(q(1, 5)));
        assert_eq!(BigRational::parse_literal("1/0"), None);
        assert_eq!(BigRational::parse_literal("notanumber"), None);
        assert_eq!(BigRational::parse_literal(""), None);
        assert_eq!(BigRational::parse_literal("."), None);
        assert_eq!(BigRational::parse_literal("1.2.3"), None);
    }

    #[test]
    fn parses_float_literals() {
        assert_eq!(f64::parse_literal("47/10"), Some(4.7));
        assert_eq!(f64::parse_literal("-1e-3"), Some(-0.001));
        assert_eq!(f64::parse_literal("inf"), None);
        assert_eq!(f64::parse_literal("nan"), None);
    }

    #[test]
    fn simplest_rational_has_least_denominator() {
        assert_eq!(BigRational::simplest_between(&q(1, 3), &q(1, 2)), q(1, 2));
        assert_eq!(BigRational::simplest_between(&q(3, 10), &q(4, 10)), q(1, 3));
        assert_eq!(
            BigRational::simplest_between(&q(-7, 2), &q(-3, 1)),
            q(-3, 1)
        );
        assert_eq!(BigRational::simplest_between(&q(-1, 7), &q(1, 9)), q(0, 1));
        assert_eq!(
            BigRational::simplest_between(&q(-5, 7), &q(-9, 13)),
            q(-5, 7)
        );
        assert_eq!(
            BigRational::simplest_between(&q(22, 7), &q(22, 7)),
            q(22, 7)
        );
    }

    #[test]
    fn separation_uses_leading_coefficient_of_integer_form() {
        // 6x^2 - 5x + 1 = (2x - 1)(3x - 1) after clearing x^2 - 5/6 x + 1/6.
        let coeffs = [q(1, 6), q(-5, 6), q(1, 1)];
        assert_eq!(
            BigRational::rational_root_separation(&coeffs),
            Some(q(1, 36))
        );
        assert_eq!(f64::rational_root_separation(&[1.0, 2.0]), None);
    }
}
