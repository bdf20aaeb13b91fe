//! Coefficient fields.
//!
//! Two fields are supported: arbitrary-precision rationals for every exact
//! criterion, and binary64 for root finding and integration. Moving between
//! them is always an explicit call ([`TrigPoly::to_f64`](crate::TrigPoly::to_f64)).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// A field usable as a trigonometric-polynomial coefficient.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Num
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// Short name used in field-mismatch errors.
    const FIELD: &'static str;

    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Scalar for Rational {
    const FIELD: &'static str = "exact";

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        // BigRational::to_f64 goes through a correctly rounded path; the
        // fallback only matters for values outside the f64 range.
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            let n = self.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }

    fn abs_f64(&self) -> f64 {
        Scalar::to_f64(&self.abs())
    }
}

impl Scalar for f64 {
    const FIELD: &'static str = "float";

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Builds a rational `n/d`. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Runtime-tagged coefficient, the unit of the JSON interchange format.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Exact(Rational),
    Float(f64),
}

impl Coefficient {
    pub fn field(&self) -> &'static str {
        match self {
            Coefficient::Exact(_) => Rational::FIELD,
            Coefficient::Float(_) => f64::FIELD,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Coefficient::Exact(q) => Scalar::to_f64(q),
            Coefficient::Float(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Exact(q) => q.is_zero(),
            Coefficient::Float(x) => *x == 0.0,
        }
    }
}

impl Display for Coefficient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coefficient::Exact(q) => write!(f, "{q}"),
            Coefficient::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Parses `"p/q"` or `"p"` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced_with_positive_denominator() {
        let q = parse_rational("6/-4").unwrap();
        assert_eq!(q, rat(-3, 2));
        assert!(q.denom().is_positive());
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7, 1));
    }

    #[test]
    fn parse_rejects_garbage_and_zero_denominator() {
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
        assert!(parse_rational("1.5").is_none());
    }
}
