//! Scalar fields used for frame components.
//!
//! Two instantiations exist: [`Exact`] (arbitrary-precision rationals) and
//! `f64`. A model commits to one of them for its whole lifetime, so every
//! zero test downstream either is exact or goes through the same tolerance.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar (gcd-reduced, positive denominator).
pub type Exact = BigRational;

/// Relative tolerance for float-mode comparisons.
pub const FLOAT_REL_TOL: f64 = 1e-9;
/// Absolute floor for float-mode comparisons near zero.
pub const FLOAT_ABS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Exact,
    Float,
}

impl ScalarMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarMode::Exact => "exact",
            ScalarMode::Float => "float",
        }
    }
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarParseError {
    #[error("decimal literal `{0}` is not allowed in exact mode")]
    DecimalInExactMode(String),
    #[error("invalid scalar literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Field operations plus the handful of extras the geometry needs.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    const MODE: ScalarMode;

    fn from_int(n: i64) -> Self;

    /// `num / den`; panics on a zero denominator.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn abs(&self) -> Self;

    /// True when `self` counts as zero relative to a magnitude `scale`.
    ///
    /// Exact mode ignores `scale`.
    fn is_negligible(&self, scale: &Self) -> bool;

    /// Square root when it exists in the field (perfect squares for rationals).
    fn sqrt_exact(&self) -> Option<Self>;

    fn to_f64(&self) -> f64;

    /// Parses an integer, a `p/q` fraction or (float mode only) a decimal.
    fn parse_literal(s: &str) -> Result<Self, ScalarParseError>;

    fn is_zero_scalar(&self) -> bool {
        self.is_negligible(&Self::zero())
    }

    /// Equality under the mode's comparison rule.
    fn approx_eq(&self, other: &Self) -> bool {
        let scale = max_abs(self, other);
        (self.clone() - other.clone()).is_negligible(&scale)
    }

    fn half(self) -> Self {
        self / Self::from_int(2)
    }
}

pub(crate) fn max_abs<S: Scalar>(a: &S, b: &S) -> S {
    let (a, b) = (a.abs(), b.abs());
    if a >= b {
        a
    } else {
        b
    }
}

impl Scalar for Exact {
    const MODE: ScalarMode = ScalarMode::Exact;

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn is_negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &n * &n == *self.numer() && &d * &d == *self.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }

    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_literal(s: &str) -> Result<Self, ScalarParseError> {
        let t = s.trim();
        if t.contains(['.', 'e', 'E']) {
            return Err(ScalarParseError::DecimalInExactMode(s.to_string()));
        }
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num
            .parse()
            .map_err(|_| ScalarParseError::Invalid(s.to_string()))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| ScalarParseError::Invalid(s.to_string()))?;
        if den.is_zero() {
            return Err(ScalarParseError::ZeroDenominator(s.to_string()));
        }
        Ok(BigRational::new(num, den))
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn is_negligible(&self, scale: &Self) -> bool {
        f64::abs(*self) <= FLOAT_ABS_TOL.max(FLOAT_REL_TOL * f64::abs(*scale))
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(self.sqrt())
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_literal(s: &str) -> Result<Self, ScalarParseError> {
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: f64 = n
                .trim()
                .parse()
                .map_err(|_| ScalarParseError::Invalid(s.to_string()))?;
            let d: f64 = d
                .trim()
                .parse()
                .map_err(|_| ScalarParseError::Invalid(s.to_string()))?;
            if d == 0.0 {
                return Err(ScalarParseError::ZeroDenominator(s.to_string()));
            }
            return Ok(n / d);
        }
        let v: f64 = t
            .parse()
            .map_err(|_| ScalarParseError::Invalid(s.to_string()))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ScalarParseError::Invalid(s.to_string()))
        }
    }
}

/// Running max-norm of a defect, tracked alongside the size of the terms
/// that produced it so float mode can apply a relative tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Defect<S> {
    pub residual: S,
    pub scale: S,
}

impl<S: Scalar> Default for Defect<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> Defect<S> {
    pub fn new() -> Self {
        Self {
            residual: S::zero(),
            scale: S::zero(),
        }
    }

    /// Records `lhs - rhs`.
    pub fn push(&mut self, lhs: &S, rhs: &S) {
        let d = (lhs.clone() - rhs.clone()).abs();
        if d > self.residual {
            self.residual = d;
        }
        let m = max_abs(lhs, rhs);
        if m > self.scale {
            self.scale = m;
        }
    }

    pub fn push_zero(&mut self, value: &S) {
        self.push(value, &S::zero());
    }

    pub fn merge(&mut self, other: &Defect<S>) {
        if other.residual > self.residual {
            self.residual = other.residual.clone();
        }
        if other.scale > self.scale {
            self.scale = other.scale.clone();
        }
    }

    pub fn passes(&self) -> bool {
        self.residual.is_negligible(&self.scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Exact {
        Exact::from_ratio(n, d)
    }

    #[test]
    fn exact_fractions_are_canonical() {
        let x = q(6, -4);
        assert_eq!(x, q(-3, 2));
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(q(4, 2).to_string(), "2");
    }

    #[test]
    fn exact_parsing() {
        assert_eq!(Exact::parse_literal("1/3").unwrap(), q(1, 3));
        assert_eq!(Exact::parse_literal(" -7 ").unwrap(), q(-7, 1));
        assert_eq!(Exact::parse_literal("4/-6").unwrap(), q(-2, 3));
        assert!(matches!(
            Exact::parse_literal("0.5"),
            Err(ScalarParseError::DecimalInExactMode(_))
        ));
        assert!(matches!(
            Exact::parse_literal("1/0"),
            Err(ScalarParseError::ZeroDenominator(_))
        ));
        assert!(Exact::parse_literal("abc").is_err());
    }

    #[test]
    fn float_parsing_accepts_decimals_and_fractions() {
        assert_eq!(f64::parse_literal("0.25").unwrap(), 0.25);
        assert_eq!(f64::parse_literal("1/4").unwrap(), 0.25);
        assert!(f64::parse_literal("inf").is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(q(9, 4).sqrt_exact(), Some(q(3, 2)));
        assert_eq!(q(2, 1).sqrt_exact(), None);
        assert_eq!(q(-1, 1).sqrt_exact(), None);
        assert_eq!(Exact::zero().sqrt_exact(), Some(Exact::zero()));
    }

    #[test]
    fn float_tolerance_is_relative_with_absolute_floor() {
        assert!(1e-13_f64.is_zero_scalar());
        assert!(!1e-11_f64.is_zero_scalar());
        assert!(1e-6_f64.is_negligible(&1e4));
        assert!(!1e-4_f64.is_negligible(&1e4));
        assert!((1.0 + 1e-12).approx_eq(&1.0));
    }

    #[test]
    fn defect_tracks_residual_and_scale() {
        let mut d = Defect::<Exact>::new();
        d.push(&q(3, 1), &q(3, 1));
        assert!(d.passes());
        d.push(&q(1, 2), &q(0, 1));
        assert!(!d.passes());
        assert_eq!(d.residual, q(1, 2));
        assert_eq!(d.scale, q(3, 1));
    }
}
