//! Exact rational timestamps.
//!
//! Every timestamp and every time difference in the crate is a [`Rational`]. Interval membership is
//! decided by exact comparison against integer endpoints, so there is no tolerance anywhere.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("`{0}` is not a decimal or p/q rational")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `3`, `-2`, `0.25` or `7/2`.
pub fn parse_rational(text: &str) -> Result<Rational, RationalError> {
    let malformed = || RationalError::Malformed(text.to_string());
    if let Some((p, q)) = text.split_once('/') {
        let num = BigInt::from_str(p).map_err(|_| malformed())?;
        if q.starts_with(['+', '-']) {
            return Err(malformed());
        }
        let den = BigInt::from_str(q).map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator(text.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (whole, frac) = match body.split_once('.') {
        Some((w, f)) => (w, f),
        None => (body, ""),
    };
    let digits_only = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if (whole.is_empty() && frac.is_empty()) || !digits_only(whole) || !digits_only(frac) {
        return Err(malformed());
    }
    if body.contains('.') && frac.is_empty() {
        return Err(malformed());
    }
    let mut num = BigInt::from_str(&format!("0{whole}{frac}")).map_err(|_| malformed())?;
    if negative {
        num = -num;
    }
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    Ok(Rational::new(num, den))
}

/// Canonical `p/q` rendering; integers print with denominator 1.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

/// Smallest integer strictly greater than `r` (as used for the faithful interval cap).
pub fn next_integer_above(r: &Rational) -> u64 {
    let floor = r.floor().to_integer();
    let next = floor + 1;
    u64::try_from(next).unwrap_or(0)
}
