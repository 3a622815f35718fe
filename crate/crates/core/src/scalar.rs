//! Coefficient rings.
//!
//! Every algebraic object in the crate is generic over [`Scalar`]. Two rings
//! implement it: exact rationals ([`Rational`], arbitrary precision) and
//! 64-bit floats. Identities are checked in the exact ring; floats are used
//! for finite differences and user-supplied numeric input.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Default comparison tolerance of the float ring.
pub const FLOAT_TOL: f64 = 1e-9;

/// A commutative field usable as a form coefficient.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    /// True for rings without rounding.
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn to_f64(&self) -> f64;

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Zero test under the ring's comparison rule. The exact ring ignores
    /// `tol` and tests for literal zero.
    fn is_negligible(&self, tol: f64) -> bool;

    /// The tolerance a ring uses when the caller has none.
    fn default_tol() -> f64 {
        if Self::EXACT {
            0.0
        } else {
            FLOAT_TOL
        }
    }

    fn is_positive(&self) -> bool {
        self.to_f64() > 0.0
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_frac(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_frac(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
}

/// Shorthand for `S::from_frac(num, den)`.
pub fn frac<S: Scalar>(num: i64, den: i64) -> S {
    S::from_frac(num, den)
}

/// Shorthand for `S::from_int(n)`.
pub fn int<S: Scalar>(n: i64) -> S {
    S::from_int(n)
}

/// Parse `"p/q"`, `"p"` or a decimal literal into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    if let Ok(n) = text.parse::<BigInt>() {
        return Some(BigRational::from_integer(n));
    }
    // finite decimal such as "-0.25" or "1.5e-3"
    let (mantissa, exponent) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac_part.chars().any(|c| !c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Exact square root of a rational, when it exists.
pub fn rational_sqrt(value: &Rational) -> Option<Rational> {
    if Signed::is_negative(value) {
        return None;
    }
    let num = value.numer().sqrt();
    let den = value.denom().sqrt();
    if &(&num * &num) == value.numer() && &(&den * &den) == value.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_ring_has_no_rounding() {
        let third: Rational = frac(1, 3);
        let sum = third.clone() + third.clone() + third;
        assert_eq!(sum, Rational::one());
        let tenth: f64 = frac(1, 10);
        assert!((tenth * 3.0 - 0.3).is_negligible(FLOAT_TOL));
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("-3/6"), Some(frac(-1, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("0.25"), Some(frac(1, 4)));
        assert_eq!(parse_rational("-1.5e-1"), Some(frac(-3, 20)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(rational_sqrt(&frac(2, 1)), None);
        assert_eq!(rational_sqrt(&frac(-1, 1)), None);
    }

    #[test]
    fn default_tolerances() {
        assert_eq!(Rational::default_tol(), 0.0);
        assert_eq!(f64::default_tol(), FLOAT_TOL);
    }
}
