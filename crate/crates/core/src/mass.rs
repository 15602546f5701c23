//! Exact rational masses.
//!
//! Every weight in this crate is an exact fraction in `[0, 1]`. Decimal input
//! such as `0.99` is read digit by digit and becomes `99/100`, never a float.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A probability mass: an exact rational `p/q` with `0 <= p/q <= 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mass(BigRational);

impl Mass {
    pub fn zero() -> Self {
        Mass(BigRational::zero())
    }

    pub fn one() -> Self {
        Mass(BigRational::one())
    }

    /// `numer/denom`, reduced. Fails when the fraction leaves `[0, 1]`.
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidNumber(format!("{numer}/{denom}")));
        }
        Self::from_ratio(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_ratio(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            Err(Error::NegativeMass(format_ratio(&value)))
        } else if value > BigRational::one() {
            Err(Error::MassAboveOne(format_ratio(&value)))
        } else {
            Ok(Mass(value))
        }
    }

    /// Caller guarantees `0 <= value <= 1`.
    pub(crate) fn from_ratio_unchecked(value: BigRational) -> Self {
        debug_assert!(!value.is_negative() && value <= BigRational::one());
        Mass(value)
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `1 - self`.
    pub fn complement(&self) -> Mass {
        Mass(BigRational::one() - &self.0)
    }

    /// Decimal rendering rounded half-up to `places` digits.
    pub fn to_decimal(&self, places: usize) -> String {
        format_decimal(&self.0, places)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl Mul for &Mass {
    type Output = Mass;

    fn mul(self, rhs: &Mass) -> Mass {
        Mass(&self.0 * &rhs.0)
    }
}

impl Mul for Mass {
    type Output = Mass;

    fn mul(self, rhs: Mass) -> Mass {
        Mass(self.0 * rhs.0)
    }
}

impl fmt::Display for Mass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ratio(&self.0))
    }
}

impl fmt::Debug for Mass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mass({})", format_ratio(&self.0))
    }
}

impl FromStr for Mass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mass::from_ratio(parse_rational(s)?)
    }
}

/// Reduced-fraction text: `3/5`, `1`, `0`.
pub fn format_ratio(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn format_decimal(value: &BigRational, places: usize) -> String {
    let negative = value.is_negative();
    let scale = num_traits::pow(BigInt::from(10), places);
    let numer: BigInt = value.numer().abs() * &scale * 2 + value.denom();
    let scaled: BigInt = numer / (value.denom() * 2);
    let digits = scaled.to_string();
    let (int_part, frac_part) = if places == 0 {
        (digits, String::new())
    } else if digits.len() > places {
        let (i, f) = digits.split_at(digits.len() - places);
        (i.to_string(), f.to_string())
    } else {
        ("0".to_string(), format!("{digits:0>places$}"))
    };
    let sign = if negative && scaled_nonzero(&int_part, &frac_part) { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

fn scaled_nonzero(int_part: &str, frac_part: &str) -> bool {
    int_part.chars().chain(frac_part.chars()).any(|c| c != '0')
}

/// Parses `p/q`, an integer, or a plain decimal literal (`0.95`, `.5`, `-1.25`)
/// into an exact rational. Exponents are not accepted.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let invalid = || Error::InvalidNumber(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_integer(p.trim()).ok_or_else(invalid)?;
        let q = parse_integer(q.trim()).ok_or_else(invalid)?;
        if q.is_zero() {
            return Err(invalid());
        }
        return Ok(BigRational::new(p, q));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_digits, frac_digits) = body.split_once('.').unwrap_or((body, ""));
    let all_digits = |d: &str| d.bytes().all(|b| b.is_ascii_digit());
    if int_digits.is_empty() && frac_digits.is_empty()
        || !all_digits(int_digits)
        || !all_digits(frac_digits)
    {
        return Err(invalid());
    }
    let digits = format!("{int_digits}{frac_digits}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| invalid())? };
    let denom = num_traits::pow(BigInt::from(10), frac_digits.len());
    let value = BigRational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits: &str = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse::<BigInt>().ok()
}
