use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number used for every non-set quantity.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` with an optional leading minus sign.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |why: &str| Error::Parse {
        location: format!("rational {text:?}"),
        message: why.to_string(),
    };
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("invalid numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("invalid denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// A value that is either a rational or the bottom element `-∞`, which is
/// ordered below every rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtValue {
    Bottom,
    Finite(Rational),
}

impl ExtValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtValue::Bottom => None,
            ExtValue::Finite(r) => Some(r),
        }
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, ExtValue::Bottom)
    }
}

impl PartialOrd for ExtValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtValue::Bottom, ExtValue::Bottom) => Ordering::Equal,
            (ExtValue::Bottom, _) => Ordering::Less,
            (_, ExtValue::Bottom) => Ordering::Greater,
            (ExtValue::Finite(a), ExtValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Bottom => f.write_str("-inf"),
            ExtValue::Finite(r) => write!(f, "{r}"),
        }
    }
}
