use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::Rational;
use crate::error::Error;

/// An element of the tropical semiring `(Q ∪ {∞}, min, +)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TropValue {
    Finite(Rational),
    Infinity,
}

impl TropValue {
    pub fn zero() -> Self {
        TropValue::Finite(Rational::zero())
    }

    pub fn int(n: i64) -> Self {
        TropValue::Finite(Rational::from_int(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TropValue::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            TropValue::Finite(r) => Some(r),
            TropValue::Infinity => None,
        }
    }

    /// Tropical addition: the minimum.
    pub fn tadd(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical multiplication: ordinary sum, with ∞ absorbing.
    pub fn tmul(&self, other: &Self) -> Self {
        match (self, other) {
            (TropValue::Finite(a), TropValue::Finite(b)) => TropValue::Finite(a + b),
            _ => TropValue::Infinity,
        }
    }

    /// Subtracts a finite constant; ∞ stays ∞.
    pub fn shift(&self, by: &Rational) -> Self {
        match self {
            TropValue::Finite(a) => TropValue::Finite(a - by),
            TropValue::Infinity => TropValue::Infinity,
        }
    }
}

impl Ord for TropValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TropValue::Finite(a), TropValue::Finite(b)) => a.cmp(b),
            (TropValue::Finite(_), TropValue::Infinity) => Ordering::Less,
            (TropValue::Infinity, TropValue::Finite(_)) => Ordering::Greater,
            (TropValue::Infinity, TropValue::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for TropValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rational> for TropValue {
    fn from(r: Rational) -> Self {
        TropValue::Finite(r)
    }
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropValue::Finite(r) => write!(f, "{r}"),
            TropValue::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TropValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(TropValue::Infinity),
            other => Ok(TropValue::Finite(other.parse()?)),
        }
    }
}

impl serde::Serialize for TropValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for TropValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(TropValue::int(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semiring_operations() {
        let a = TropValue::int(2);
        let b = TropValue::int(-1);
        assert_eq!(a.tadd(&b), b);
        assert_eq!(a.tmul(&b), TropValue::int(1));
        assert_eq!(a.tmul(&TropValue::Infinity), TropValue::Infinity);
        assert_eq!(TropValue::Infinity.tadd(&a), a);
        assert!(TropValue::int(1_000_000) < TropValue::Infinity);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("inf".parse::<TropValue>().unwrap(), TropValue::Infinity);
        assert_eq!("-3/6".parse::<TropValue>().unwrap().to_string(), "-1/2");
    }
}
