//! Exact non-negative rationals with a distinct `+inf` sentinel.
//!
//! Every toughness value and every threshold is carried as a
//! [`RationalValue`], so all comparisons are exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced fraction `p/q` with `q >= 1`, or `+inf`.
///
/// Internally the sentinel is stored as `0/0`; the constructor never
/// produces that pair for a finite value.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalValue {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl RationalValue {
    pub const INFINITY: RationalValue = RationalValue { num: 0, den: 0 };
    pub const ZERO: RationalValue = RationalValue { num: 0, den: 1 };

    /// Builds `num/den` in lowest terms. Panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "denominator must be positive");
        let g = gcd(num, den);
        RationalValue {
            num: num / g,
            den: den / g,
        }
    }

    pub fn checked_new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("denominator must be positive"));
        }
        Ok(Self::new(num, den))
    }

    pub fn integer(value: u64) -> Self {
        RationalValue { num: value, den: 1 }
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn is_finite(&self) -> bool {
        self.den != 0
    }

    /// Numerator, or `None` for `+inf`.
    pub fn numer(&self) -> Option<u64> {
        self.is_finite().then_some(self.num)
    }

    pub fn denom(&self) -> Option<u64> {
        self.is_finite().then_some(self.den)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            self.num as f64 / self.den as f64
        }
    }
}

impl Ord for RationalValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => {
                let lhs = self.num as u128 * other.den as u128;
                let rhs = other.num as u128 * self.den as u128;
                lhs.cmp(&rhs)
            }
        }
    }
}

impl PartialOrd for RationalValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for RationalValue {
    type Output = RationalValue;

    fn add(self, rhs: Self) -> Self {
        if self.is_infinite() || rhs.is_infinite() {
            return RationalValue::INFINITY;
        }
        let g = gcd(self.den, rhs.den);
        let den = self.den / g * rhs.den;
        let num = self.num * (rhs.den / g) + rhs.num * (self.den / g);
        RationalValue::new(num, den)
    }
}

impl fmt::Display for RationalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RationalValue {
    type Err = Error;

    /// Accepts `inf`, `p/q` and bare integers.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "+inf" {
            return Ok(RationalValue::INFINITY);
        }
        let bad = |what: &str| Error::parse(format!("rational {s:?}"), what.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let p = p.trim().parse::<u64>().map_err(|_| bad("bad numerator"))?;
                let q = q.trim().parse::<u64>().map_err(|_| bad("bad denominator"))?;
                if q == 0 {
                    return Err(bad("zero denominator"));
                }
                Ok(RationalValue::new(p, q))
            }
            None => s
                .parse::<u64>()
                .map(RationalValue::integer)
                .map_err(|_| bad("expected p/q, an integer or inf")),
        }
    }
}

impl Serialize for RationalValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let r = RationalValue::new(6, 4);
        assert_eq!(r.numer(), Some(3));
        assert_eq!(r.denom(), Some(2));
        assert_eq!(RationalValue::new(0, 7), RationalValue::ZERO);
        assert_eq!(RationalValue::ZERO.to_string(), "0/1");
    }

    #[test]
    fn infinity_dominates() {
        let big = RationalValue::new(u64::MAX, 1);
        assert!(RationalValue::INFINITY > big);
        assert_eq!(RationalValue::INFINITY, RationalValue::INFINITY);
        assert_eq!(RationalValue::INFINITY.to_string(), "inf");
        assert!(RationalValue::INFINITY.numer().is_none());
    }

    #[test]
    fn exact_ordering() {
        assert!(RationalValue::new(5, 3) < RationalValue::new(7, 4));
        assert!(RationalValue::new(1, 3) > RationalValue::new(1, 4));
        assert_eq!(RationalValue::new(2, 4), RationalValue::new(1, 2));
    }

    #[test]
    fn addition() {
        let bound = RationalValue::integer(3) + RationalValue::new(2, 3);
        assert_eq!(bound, RationalValue::new(11, 3));
        assert!((RationalValue::INFINITY + RationalValue::ZERO).is_infinite());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("5/3".parse::<RationalValue>().unwrap(), RationalValue::new(5, 3));
        assert_eq!("4".parse::<RationalValue>().unwrap(), RationalValue::integer(4));
        assert!("inf".parse::<RationalValue>().unwrap().is_infinite());
        assert!("1/0".parse::<RationalValue>().is_err());
        assert!("x".parse::<RationalValue>().is_err());
        let json = serde_json::to_string(&RationalValue::new(10, 4)).unwrap();
        assert_eq!(json, "\"5/2\"");
    }
}
