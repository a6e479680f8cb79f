//! Arbitrary-precision integers carried through JSON as decimal strings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A `BigInt` that serializes as a decimal string and deserializes from
/// either a JSON integer or a decimal string.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dec(pub BigInt);

impl Dec {
    pub fn vec(xs: &[BigInt]) -> Vec<Dec> {
        xs.iter().cloned().map(Dec).collect()
    }

    pub fn unwrap_vec(xs: &[Dec]) -> Vec<BigInt> {
        xs.iter().map(|d| d.0.clone()).collect()
    }
}

impl From<BigInt> for Dec {
    fn from(x: BigInt) -> Self {
        Dec(x)
    }
}

impl From<&BigInt> for Dec {
    fn from(x: &BigInt) -> Self {
        Dec(x.clone())
    }
}

impl From<i64> for Dec {
    fn from(x: i64) -> Self {
        Dec(BigInt::from(x))
    }
}

impl fmt::Display for Dec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Dec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("{s:?} is not a decimal integer"));
        }
        BigInt::from_str(s).map(Dec).map_err(|e| e.to_string())
    }
}

impl Serialize for Dec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

struct DecVisitor;

impl Visitor<'_> for DecVisitor {
    type Value = Dec;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Dec, E> {
        Ok(Dec(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Dec, E> {
        Ok(Dec(v.into()))
    }

    fn visit_i128<E: de::Error>(self, v: i128) -> Result<Dec, E> {
        Ok(Dec(v.into()))
    }

    fn visit_u128<E: de::Error>(self, v: u128) -> Result<Dec, E> {
        Ok(Dec(v.into()))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Dec, E> {
        Err(E::custom(format!(
            "non-integer or oversized number {v}; write large integers as decimal strings"
        )))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Dec, E> {
        v.trim().parse().map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Dec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(DecVisitor)
    }
}
