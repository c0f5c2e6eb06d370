//! Scalar arithmetic shared by the exact and floating-point solver paths.
//!
//! Every algorithm in this crate is generic over [`Scalar`]. The reference
//! arithmetic is [`Rational`] (arbitrary precision, comparisons are exact and
//! the tolerance is ignored); the alternate arithmetic is `f64`, where every
//! sign test goes through one absolute epsilon.

use core::fmt;
use core::ops::{Div, Mul, Neg, Sub};
use core::str::FromStr;

use alloc::string::String;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Exact rational scalar: arbitrary-precision numerator over a positive
/// denominator, always in canonical (fully reduced) form.
pub type Rational = BigRational;

/// Three-way sign classification of a scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    /// Sign of the negated value.
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Absolute epsilon used to classify float signs. `eps = 0` means exact
/// comparison; rational arithmetic ignores the tolerance entirely.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    eps: f64,
}

impl Tolerance {
    /// Exact comparison (`eps = 0`).
    pub const EXACT: Tolerance = Tolerance { eps: 0.0 };

    /// Default epsilon for the float path.
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self, Error> {
        if eps.is_finite() && eps >= 0.0 {
            Ok(Tolerance { eps })
        } else {
            Err(Error::InvalidTolerance)
        }
    }

    /// The default float tolerance (`eps = 1e-9`).
    pub fn standard() -> Self {
        Tolerance { eps: Self::DEFAULT_EPS }
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

/// Field operations plus the sign classification the pivot rules are built on.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_int(v: i64) -> Self;

    /// Classify the sign of `self`. Rationals compare exactly and ignore the
    /// tolerance; floats are `Negative` iff `x < -eps`, `Positive` iff
    /// `x > eps`, `Zero` otherwise. Non-finite floats are an error.
    fn classify_sign(&self, tol: &Tolerance) -> Result<Sign, Error>;

    fn abs(&self) -> Self;

    /// Whether `self` would be a better elimination pivot than `incumbent`.
    /// The rational path keeps the first nonzero candidate (determinism);
    /// the float path prefers the larger magnitude (stability).
    fn better_pivot(&self, incumbent: &Self) -> bool;

    /// Lossy conversion for diagnostics and magnitude filters.
    fn to_f64_lossy(&self) -> f64;
}

impl Scalar for Rational {
    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn classify_sign(&self, _tol: &Tolerance) -> Result<Sign, Error> {
        Ok(match self.numer().sign() {
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Positive,
        })
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn better_pivot(&self, _incumbent: &Self) -> bool {
        false
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn classify_sign(&self, tol: &Tolerance) -> Result<Sign, Error> {
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(if *self < -tol.eps {
            Sign::Negative
        } else if *self > tol.eps {
            Sign::Positive
        } else {
            Sign::Zero
        })
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn better_pivot(&self, incumbent: &Self) -> bool {
        f64::abs(*self) > f64::abs(*incumbent)
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

/// Failure modes of [`rational_of_string`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseRationalError {
    Empty,
    Invalid,
    ZeroDenominator,
    ExponentOutOfRange,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseRationalError::Empty => write!(f, "empty scalar text"),
            ParseRationalError::Invalid => write!(f, "malformed scalar text"),
            ParseRationalError::ZeroDenominator => write!(f, "zero denominator"),
            ParseRationalError::ExponentOutOfRange => write!(f, "exponent out of range"),
        }
    }
}

impl core::error::Error for ParseRationalError {}

/// Parse `"p/q"`, integer, or decimal text into an exact rational.
/// Decimals convert exactly (`"0.25"` is 1/4, not the nearest double);
/// a scientific exponent is accepted on the decimal form.
pub fn rational_of_string(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }

    if let Some((p, q)) = s.split_once('/') {
        let num = BigInt::from_str(p.trim()).map_err(|_| ParseRationalError::Invalid)?;
        let den = BigInt::from_str(q.trim()).map_err(|_| ParseRationalError::Invalid)?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator);
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e.parse().map_err(|_| ParseRationalError::Invalid)?;
            if exp.unsigned_abs() > 9_999 {
                return Err(ParseRationalError::ExponentOutOfRange);
            }
            (m, exp)
        }
        None => (s, 0),
    };

    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };

    let (negative, int_digits) = match int_part.as_bytes().first() {
        Some(b'-') => (true, &int_part[1..]),
        Some(b'+') => (false, &int_part[1..]),
        _ => (false, int_part),
    };

    if int_digits.is_empty() && frac_part.is_empty() {
        return Err(ParseRationalError::Invalid);
    }
    if !int_digits.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(ParseRationalError::Invalid);
    }

    let mut digits = String::with_capacity(int_digits.len() + frac_part.len() + 1);
    digits.push_str(int_digits);
    digits.push_str(frac_part);
    let mut num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
        .map_err(|_| ParseRationalError::Invalid)?;
    if negative {
        num = -num;
    }

    let shift = exp - frac_part.len() as i64;
    let mut den = BigInt::one();
    if shift >= 0 {
        num *= pow10(shift as u32);
    } else {
        den = pow10((-shift) as u32);
    }
    Ok(Rational::new(num, den))
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn rat(s: &str) -> Rational {
        rational_of_string(s).unwrap()
    }

    #[test]
    fn classify_float_trivia() {
        let tol = Tolerance::new(1e-9).unwrap();
        assert_eq!(0.0f64.classify_sign(&tol).unwrap(), Sign::Zero);
        assert_eq!((-1.0f64).classify_sign(&tol).unwrap(), Sign::Negative);
        assert_eq!(5e-10f64.classify_sign(&tol).unwrap(), Sign::Zero);
        assert_eq!(2e-9f64.classify_sign(&tol).unwrap(), Sign::Positive);
    }

    #[test]
    fn classify_rational_ignores_eps() {
        let tol = Tolerance::new(0.5).unwrap();
        assert_eq!(rat("-1/1000000").classify_sign(&tol).unwrap(), Sign::Negative);
        assert_eq!(rat("0").classify_sign(&tol).unwrap(), Sign::Zero);
        assert_eq!(rat("1/1000000").classify_sign(&tol).unwrap(), Sign::Positive);
    }

    #[test]
    fn classify_rejects_non_finite() {
        let tol = Tolerance::EXACT;
        assert_eq!(f64::NAN.classify_sign(&tol), Err(Error::NonFinite));
        assert_eq!(f64::INFINITY.classify_sign(&tol), Err(Error::NonFinite));
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(0.0).is_ok());
        assert!(Tolerance::new(-1e-9).is_err());
        assert!(Tolerance::new(f64::NAN).is_err());
    }

    #[test]
    fn parse_integer_and_fraction() {
        assert_eq!(rat("3"), Rational::from_int(3));
        assert_eq!(rat("-2/4"), Rational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(rat("3/-6"), Rational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(rat("+7"), Rational::from_int(7));
    }

    #[test]
    fn parse_decimal_exactly() {
        assert_eq!(rat("0.25"), Rational::new(BigInt::from(1), BigInt::from(4)));
        assert_eq!(rat("-1.5"), Rational::new(BigInt::from(-3), BigInt::from(2)));
        assert_eq!(rat(".5"), Rational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(rat("2.5e-3"), Rational::new(BigInt::from(1), BigInt::from(400)));
        assert_eq!(rat("1e3"), Rational::from_int(1000));
    }

    #[test]
    fn parse_rejects_malformed() {
        assert_eq!(rational_of_string(""), Err(ParseRationalError::Empty));
        assert_eq!(rational_of_string("1/0"), Err(ParseRationalError::ZeroDenominator));
        assert_eq!(rational_of_string("abc"), Err(ParseRationalError::Invalid));
        assert_eq!(rational_of_string("1//2"), Err(ParseRationalError::Invalid));
        assert_eq!(rational_of_string("1.2.3"), Err(ParseRationalError::Invalid));
        assert_eq!(rational_of_string("1e1000000"), Err(ParseRationalError::ExponentOutOfRange));
    }

    #[test]
    fn canonical_text_round_trip() {
        for s in ["0", "1", "-1", "1/2", "-22/7", "1000000007"] {
            assert_eq!(rat(s).to_string(), s);
        }
    }
}
