use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Lebesgue exponent in `[1, inf]`, kept exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedExponent {
    Finite(Rational64),
    Infinite,
}

pub use ExtendedExponent::Infinite as INF;

impl ExtendedExponent {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("zero denominator in exponent".into()));
        }
        Self::from_rational(Rational64::new(num, den))
    }

    pub fn from_rational(r: Rational64) -> Result<Self> {
        if r < Rational64::one() {
            return Err(Error::Domain(format!("exponent {r} is below 1")));
        }
        Ok(ExtendedExponent::Finite(r))
    }

    /// Integer exponent; panics below 1.
    pub fn int(n: i64) -> Self {
        Self::new(n, 1).expect("exponent >= 1")
    }

    /// `num/den`; panics outside `[1, inf)`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("exponent >= 1")
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedExponent::Infinite)
    }

    /// `1/u`, with `1/inf = 0`.
    pub fn recip(self) -> Rational64 {
        match self {
            ExtendedExponent::Finite(r) => r.recip(),
            ExtendedExponent::Infinite => Rational64::zero(),
        }
    }

    /// The dual exponent `u/(u-1)`, with `1' = inf` and `inf' = 1`.
    pub fn conjugate(self) -> Self {
        let r = Rational64::one() - self.recip();
        if r.is_zero() {
            ExtendedExponent::Infinite
        } else {
            ExtendedExponent::Finite(r.recip())
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ExtendedExponent::Finite(r) => *r.numer() as f64 / *r.denom() as f64,
            ExtendedExponent::Infinite => f64::INFINITY,
        }
    }

    /// The exponent as an integer, when it is one.
    pub fn as_integer(self) -> Option<u32> {
        match self {
            ExtendedExponent::Finite(r) if r.is_integer() => u32::try_from(*r.numer()).ok(),
            _ => None,
        }
    }
}

impl PartialOrd for ExtendedExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedExponent {
    /// Ordered by value; equivalently by reversed reciprocal.
    fn cmp(&self, other: &Self) -> Ordering {
        other.recip().cmp(&self.recip())
    }
}

impl fmt::Display for ExtendedExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedExponent::Finite(r) => write!(f, "{r}"),
            ExtendedExponent::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtendedExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "infinity" | "Inf" | "∞") {
            return Ok(ExtendedExponent::Infinite);
        }
        let parse = |x: &str| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::Malformed(format!("bad exponent {s:?}")))
        };
        match s.split_once('/') {
            Some((a, b)) => Self::new(parse(a)?, parse(b)?),
            None => Self::new(parse(s)?, 1),
        }
    }
}

impl Serialize for ExtendedExponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtendedExponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn max3(a: Rational64, b: Rational64, c: Rational64) -> Rational64 {
    a.max(b).max(c)
}

/// The three terms of the exponent of `M_{H_n}` from `l^u` to `l^v`:
/// `(2n-1)/v`, `1 - 1/u` and `1 + (2n-1)/v - 2n/u`.
pub fn exponent_a_terms(n: usize, u: ExtendedExponent, v: ExtendedExponent) -> [Rational64; 3] {
    let k = Rational64::from_integer(2 * n as i64 - 1);
    let two_n = Rational64::from_integer(2 * n as i64);
    let one = Rational64::one();
    [
        k * v.recip(),
        one - u.recip(),
        one + k * v.recip() - two_n * u.recip(),
    ]
}

/// `A_n(u, v)`, the exact growth exponent of `M_{H_n}` from `l^u` to `l^v`.
pub fn exponent_a(n: usize, u: ExtendedExponent, v: ExtendedExponent) -> Rational64 {
    let [a, b, c] = exponent_a_terms(n, u, v);
    max3(a, b, c)
}

/// The four terms of the refined exponent: `1/v`, `1 - 1/u`, `2/v - 1/u`
/// and `1 + 2/v - 3/u`.
pub fn exponent_ard_terms(u: ExtendedExponent, v: ExtendedExponent) -> [Rational64; 4] {
    let one = Rational64::one();
    let two = Rational64::from_integer(2);
    let three = Rational64::from_integer(3);
    [
        v.recip(),
        one - u.recip(),
        two * v.recip() - u.recip(),
        one + two * v.recip() - three * u.recip(),
    ]
}

/// `A^rd(u, v)`, the exact growth exponent of the refined operator.
pub fn exponent_ard(u: ExtendedExponent, v: ExtendedExponent) -> Rational64 {
    let [a, b, c, d] = exponent_ard_terms(u, v);
    max3(a, b, c).max(d)
}

/// Diagonal exponent: `1/u` for `u <= 2` and `1 - 1/u` beyond.
pub fn diagonal_exponent(u: ExtendedExponent) -> Rational64 {
    diagonal_exponent_rank(u, 2)
}

/// Diagonal exponent in dimension `d`: `(d-1)/u` for `u <= d`, else `1 - 1/u`.
pub fn diagonal_exponent_rank(u: ExtendedExponent, d: usize) -> Rational64 {
    let r = u.recip();
    let d = Rational64::from_integer(d as i64);
    if r * d >= Rational64::one() {
        (d - Rational64::one()) * r
    } else {
        Rational64::one() - r
    }
}
