//! Extended nonnegative values `[0, ∞]` with exact rational finite part.
//!
//! Pseudo-addition is `max`, exposed as [`ExtNonneg::oplus`] and through the
//! total order. Multiplication here is the ordinary one with the convention
//! `0 · ∞ = 0`; other pseudo-multiplications live in [`crate::arith`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A value in `[0, ∞]`.
///
/// Variant order matters: the derived `Ord` puts every finite value below
/// `Infinity`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNonneg {
    Finite(BigRational),
    Infinity,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseValueError {
    #[error("empty value")]
    Empty,
    #[error("negative value `{0}`")]
    Negative(String),
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl ExtNonneg {
    pub fn zero() -> Self {
        ExtNonneg::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        ExtNonneg::Finite(BigRational::one())
    }

    pub fn infinity() -> Self {
        ExtNonneg::Infinity
    }

    pub fn from_int(n: u64) -> Self {
        ExtNonneg::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`. Panics if `den == 0`.
    pub fn ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        ExtNonneg::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Returns `None` for negative rationals.
    pub fn from_rational(r: BigRational) -> Option<Self> {
        if r.is_negative() {
            None
        } else {
            Some(ExtNonneg::Finite(r))
        }
    }

    /// Exact conversion of a binary64 value. `+∞` maps to `Infinity`; NaN and
    /// negative values (other than `-0.0`) are rejected.
    pub fn from_f64(x: f64) -> Option<Self> {
        if x.is_nan() || x < 0.0 {
            return None;
        }
        if x.is_infinite() {
            return Some(ExtNonneg::Infinity);
        }
        BigRational::from_float(x).map(ExtNonneg::Finite)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtNonneg::Finite(r) => r.to_f64().unwrap_or(f64::MAX),
            ExtNonneg::Infinity => f64::INFINITY,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtNonneg::Finite(r) if r.is_zero())
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero()
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtNonneg::Infinity)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExtNonneg::Finite(r) => Some(r),
            ExtNonneg::Infinity => None,
        }
    }

    /// `self ⊕ other`.
    pub fn oplus(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min_of(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Ordinary product with `0 · ∞ = ∞ · 0 = 0`.
    pub fn times(&self, other: &Self) -> Self {
        match (self, other) {
            (ExtNonneg::Finite(a), ExtNonneg::Finite(b)) => ExtNonneg::Finite(a * b),
            (a, b) if a.is_zero() || b.is_zero() => ExtNonneg::zero(),
            _ => ExtNonneg::Infinity,
        }
    }

    /// Ordinary sum with `x + ∞ = ∞`.
    pub fn plus(&self, other: &Self) -> Self {
        match (self, other) {
            (ExtNonneg::Finite(a), ExtNonneg::Finite(b)) => ExtNonneg::Finite(a + b),
            _ => ExtNonneg::Infinity,
        }
    }

    /// `self / other` for finite positive `other`.
    pub fn div_finite(&self, other: &BigRational) -> Self {
        assert!(other.is_positive(), "division by a non-positive value");
        match self {
            ExtNonneg::Finite(a) => ExtNonneg::Finite(a / other),
            ExtNonneg::Infinity => ExtNonneg::Infinity,
        }
    }

    /// Canonical text form: `p`, `p/q` or `inf`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

/// Maximum of a family; `0` when empty.
pub fn oplus_all<'a, I: IntoIterator<Item = &'a ExtNonneg>>(values: I) -> ExtNonneg {
    values
        .into_iter()
        .fold(ExtNonneg::zero(), |acc, v| if *v > acc { v.clone() } else { acc })
}

impl Default for ExtNonneg {
    fn default() -> Self {
        ExtNonneg::zero()
    }
}

impl fmt::Display for ExtNonneg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNonneg::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            ExtNonneg::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            ExtNonneg::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ExtNonneg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_digits(s: &str, whole: &str) -> Result<BigInt, ParseValueError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseValueError::Malformed(whole.to_string()));
    }
    BigInt::from_str(s).map_err(|_| ParseValueError::Malformed(whole.to_string()))
}

/// Longest numeral accepted for a single component. Keeps hostile inputs
/// from allocating huge integers.
const MAX_DIGITS: usize = 4096;

impl FromStr for ExtNonneg {
    type Err = ParseValueError;

    /// Accepts `inf`, `infinity`, `∞`, integers, decimals (`0.25`, `.5`,
    /// `3.`) and fractions `p/q`. A leading `+` is allowed.
    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let s = raw.trim();
        if s.is_empty() {
            return Err(ParseValueError::Empty);
        }
        if s.len() > 2 * MAX_DIGITS + 1 {
            return Err(ParseValueError::Malformed(format!("{}...", &s[..16.min(s.len())])));
        }
        let lower = s.to_ascii_lowercase();
        let body = lower.strip_prefix('+').unwrap_or(&lower);
        if matches!(body, "inf" | "infinity" | "∞") {
            return Ok(ExtNonneg::Infinity);
        }
        if let Some(rest) = body.strip_prefix('-') {
            // `-0` is still zero, anything else negative is rejected.
            return match rest.parse::<ExtNonneg>() {
                Ok(v) if v.is_zero() => Ok(v),
                Ok(_) => Err(ParseValueError::Negative(s.to_string())),
                Err(e) => Err(e),
            };
        }
        if let Some((num, den)) = body.split_once('/') {
            let n = parse_digits(num.trim(), s)?;
            let d = parse_digits(den.trim(), s)?;
            if d.is_zero() {
                return Err(ParseValueError::ZeroDenominator(s.to_string()));
            }
            return Ok(ExtNonneg::Finite(BigRational::new(n, d)));
        }
        if let Some((int, frac)) = body.split_once('.') {
            if int.is_empty() && frac.is_empty() {
                return Err(ParseValueError::Malformed(s.to_string()));
            }
            let int_part = if int.is_empty() { BigInt::zero() } else { parse_digits(int, s)? };
            if frac.is_empty() {
                return Ok(ExtNonneg::Finite(BigRational::from_integer(int_part)));
            }
            let frac_part = parse_digits(frac, s)?;
            let scale = num_traits::pow(BigInt::from(10u8), frac.len());
            let num = int_part * &scale + frac_part;
            return Ok(ExtNonneg::Finite(BigRational::new(num, scale)));
        }
        Ok(ExtNonneg::Finite(BigRational::from_integer(parse_digits(body, s)?)))
    }
}

impl Serialize for ExtNonneg {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtNonneg {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
