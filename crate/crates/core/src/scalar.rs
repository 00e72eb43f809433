//! Numeric backends.
//!
//! Every kernel in this crate is generic over [`Scalar`], which has two
//! implementations: `f64` and [`BigFloat`], an MPFR-backed binary float whose
//! mantissa width is derived from a requested number of decimal digits.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use rug::float::{Constant, Round};
use rug::Float;

use crate::error::{Error, Result};

/// Smallest decimal precision accepted for the big-float backend.
pub const MIN_BIG_DIGITS: u32 = 30;

/// log2(10), used to size big-float mantissas.
const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Extra mantissa bits on top of the decimal requirement.
const GUARD_BITS: u32 = 32;

/// Arithmetic precision of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Precision {
    /// IEEE 754 binary64.
    Hardware64,
    /// MPFR float carrying at least `decimal_digits` correct decimal digits.
    BigFloat { decimal_digits: u32 },
}

impl Precision {
    pub fn big(decimal_digits: u32) -> Result<Self> {
        if decimal_digits < MIN_BIG_DIGITS {
            return Err(Error::InvalidPrecision(format!(
                "big-float precision needs at least {MIN_BIG_DIGITS} digits, got {decimal_digits}"
            )));
        }
        Ok(Precision::BigFloat { decimal_digits })
    }

    /// Decimal digits carried. Binary64 is counted as 16.
    pub fn decimal_digits(self) -> u32 {
        match self {
            Precision::Hardware64 => 16,
            Precision::BigFloat { decimal_digits } => decimal_digits,
        }
    }

    /// Mantissa bits: `ceil(d * log2(10)) + 32` for big floats.
    pub fn mantissa_bits(self) -> u32 {
        match self {
            Precision::Hardware64 => 53,
            Precision::BigFloat { decimal_digits } => {
                (decimal_digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS
            }
        }
    }

    /// Relative error bound of one arithmetic operation: `2^-52` for binary64,
    /// `10^(1-d)` for big floats.
    pub fn unit_roundoff(self) -> f64 {
        match self {
            Precision::Hardware64 => f64::EPSILON,
            Precision::BigFloat { decimal_digits } => 10f64.powi(1 - decimal_digits as i32),
        }
    }

    /// `10^(k - d)`, the scale every rounding slack in the crate is written in.
    pub fn slack(self, k: i32) -> f64 {
        10f64.powi(k - self.decimal_digits() as i32)
    }

    /// Tolerance used by the identity and proposition verifiers: `1e-12` in
    /// binary64 and `10^(6-d)` at `d` digits.
    pub fn verification_tolerance(self) -> f64 {
        match self {
            Precision::Hardware64 => 1e-12,
            Precision::BigFloat { .. } => self.slack(6),
        }
    }

    pub fn is_big(self) -> bool {
        matches!(self, Precision::BigFloat { .. })
    }

    /// Digits needed by the slow-convergence experiments for a given epsilon:
    /// `max(30, ceil(4 |log10 eps|) + 30)`.
    pub fn auto_for_epsilon(eps: f64) -> Self {
        let digits = ((4.0 * eps.log10().abs()).ceil() as u32 + 30).max(MIN_BIG_DIGITS);
        Precision::BigFloat { decimal_digits: digits }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Hardware64 => f.write_str("hw"),
            Precision::BigFloat { decimal_digits } => write!(f, "big:{decimal_digits}"),
        }
    }
}

impl FromStr for Precision {
    type Err = Error;

    /// Parses `hw` or `big:<digits>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "hw" {
            return Ok(Precision::Hardware64);
        }
        let digits = s
            .strip_prefix("big:")
            .ok_or_else(|| Error::InvalidPrecision(format!("expected `hw` or `big:<digits>`, got `{s}`")))?;
        let digits: u32 = digits
            .parse()
            .map_err(|_| Error::InvalidPrecision(format!("bad digit count `{digits}`")))?;
        Precision::big(digits)
    }
}

/// A real number under a fixed [`Precision`].
///
/// Arithmetic is by value; all transcendental functions are deterministic
/// (binary64 uses the platform libm, big floats are correctly rounded by MPFR).
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn precision(&self) -> Precision;

    /// Exact conversion of a binary64 value (every backend holds >= 53 bits).
    fn from_f64(precision: Precision, value: f64) -> Self;

    /// Parses a decimal string, rounding to nearest.
    fn parse(precision: Precision, s: &str) -> Result<Self>;

    fn pi(precision: Precision) -> Self;

    fn abs(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn tan(&self) -> Self;
    /// Four-quadrant arctangent of `self / x`.
    fn atan2(&self, x: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_sign_negative(&self) -> bool;
    fn to_f64(&self) -> f64;

    /// Square root without the domain check.
    fn sqrt_unchecked(&self) -> Self;

    /// Decimal scientific notation that parses back to the same value.
    fn to_sci_string(&self) -> String;

    /// Significant decimal digits truncated toward zero: returns
    /// `(negative, digits, exponent)` with the value equal to
    /// `0.digits × 10^exponent`. Zero yields `(false, "0", 0)`.
    fn to_truncated_digits(&self, digits: usize) -> (bool, String, i32);

    fn zero(precision: Precision) -> Self {
        Self::from_f64(precision, 0.0)
    }

    fn one(precision: Precision) -> Self {
        Self::from_f64(precision, 1.0)
    }

    /// Constant in the precision of `self`.
    fn lit(&self, value: f64) -> Self {
        Self::from_f64(self.precision(), value)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Converts through the exact string form.
    fn convert<U: Scalar>(&self, precision: Precision) -> U {
        U::parse(precision, &self.to_sci_string()).expect("sci string always parses")
    }
}

/// Square root with a domain check.
pub fn scalar_sqrt<T: Scalar>(x: &T) -> Result<T> {
    if x.is_sign_negative() && !x.is_zero() {
        return Err(Error::Domain(format!("sqrt of negative value {x}")));
    }
    if x.is_zero() {
        return Ok(T::zero(x.precision()));
    }
    Ok(x.sqrt_unchecked())
}

/// Jacobi rotation angle `φ ∈ [-π/4, π/4]` with `tan 2φ = y / x`.
///
/// Returns exactly zero when `y` is zero. When `x` is zero the angle is
/// `±π/4` with the sign of `y`. A negative `x` is folded by evaluating
/// `atan2(-y, -x)`, which keeps `2φ` inside `[-π/2, π/2]`.
pub fn scalar_atan2_half<T: Scalar>(y: &T, x: &T) -> T {
    let p = y.precision();
    if y.is_zero() {
        return T::zero(p);
    }
    let two_phi = if x.is_sign_negative() && !x.is_zero() {
        (-y.clone()).atan2(&(-x.clone()))
    } else if x.is_zero() {
        // atan2(y, ±0) would depend on the sign of zero.
        y.atan2(&T::zero(p))
    } else {
        y.atan2(x)
    };
    two_phi / T::from_f64(p, 2.0)
}

impl Scalar for f64 {
    fn precision(&self) -> Precision {
        Precision::Hardware64
    }

    fn from_f64(_precision: Precision, value: f64) -> Self {
        value
    }

    fn parse(_precision: Precision, s: &str) -> Result<Self> {
        s.trim()
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("`{s}`: {e}")))
    }

    fn pi(_precision: Precision) -> Self {
        std::f64::consts::PI
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sin(&self) -> Self {
        f64::sin(*self)
    }

    fn cos(&self) -> Self {
        f64::cos(*self)
    }

    fn tan(&self) -> Self {
        f64::tan(*self)
    }

    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn is_sign_negative(&self) -> bool {
        f64::is_sign_negative(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt_unchecked(&self) -> Self {
        f64::sqrt(*self)
    }

    fn to_sci_string(&self) -> String {
        format!("{self:e}")
    }

    fn to_truncated_digits(&self, digits: usize) -> (bool, String, i32) {
        to_big(*self).to_truncated_digits(digits)
    }
}

fn to_big(value: f64) -> BigFloat {
    BigFloat(Float::with_val(53, value))
}

/// Arbitrary-precision binary float.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct BigFloat(Float);

impl BigFloat {
    pub fn new(precision: Precision, value: f64) -> Self {
        BigFloat(Float::with_val(precision.mantissa_bits(), value))
    }

    pub fn inner(&self) -> &Float {
        &self.0
    }

    fn bits(&self) -> u32 {
        self.0.prec()
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string())
    }
}

macro_rules! big_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                BigFloat($tr::$method(self.0, rhs.0))
            }
        }
    };
}

big_binop!(Add, add);
big_binop!(Sub, sub);
big_binop!(Mul, mul);
big_binop!(Div, div);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl Scalar for BigFloat {
    fn precision(&self) -> Precision {
        // Inverts `mantissa_bits`: floor((bits - 32) / log2 10) recovers d exactly.
        let digits = ((self.bits().saturating_sub(GUARD_BITS)) as f64 / LOG2_10).floor() as u32;
        Precision::BigFloat { decimal_digits: digits }
    }

    fn from_f64(precision: Precision, value: f64) -> Self {
        BigFloat::new(precision, value)
    }

    fn parse(precision: Precision, s: &str) -> Result<Self> {
        let parsed = Float::parse(s.trim()).map_err(|e| Error::Parse(format!("`{s}`: {e}")))?;
        Ok(BigFloat(Float::with_val(precision.mantissa_bits(), parsed)))
    }

    fn pi(precision: Precision) -> Self {
        BigFloat(Float::with_val(precision.mantissa_bits(), Constant::Pi))
    }

    fn abs(&self) -> Self {
        BigFloat(self.0.clone().abs())
    }

    fn sin(&self) -> Self {
        BigFloat(self.0.clone().sin())
    }

    fn cos(&self) -> Self {
        BigFloat(self.0.clone().cos())
    }

    fn tan(&self) -> Self {
        BigFloat(self.0.clone().tan())
    }

    fn atan2(&self, x: &Self) -> Self {
        BigFloat(self.0.clone().atan2(&x.0))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative()
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    fn sqrt_unchecked(&self) -> Self {
        BigFloat(self.0.clone().sqrt())
    }

    fn to_sci_string(&self) -> String {
        if self.0.is_zero() {
            return if self.0.is_sign_negative() { "-0e0".into() } else { "0e0".into() };
        }
        let (neg, digits, exp) = self.0.to_sign_string_exp(10, None);
        let exp = exp.expect("finite nonzero value") - 1;
        let (head, tail) = digits.split_at(1);
        let tail = tail.trim_end_matches('0');
        let sign = if neg { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        }
    }

    fn to_truncated_digits(&self, digits: usize) -> (bool, String, i32) {
        if self.0.is_zero() {
            return (false, "0".into(), 0);
        }
        let (neg, s, exp) = self.0.to_sign_string_exp_round(10, Some(digits), Round::Zero);
        (neg, s, exp.expect("finite nonzero value"))
    }
}
