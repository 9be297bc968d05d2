//! Exponents in `[1, ∞]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Lebesgue exponent `p ∈ [1, ∞]`, with `∞` kept symbolic so that
/// quantities like `(n + α)/p` stay well defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtExponent {
    Finite(f64),
    Infinite,
}

impl ExtExponent {
    pub fn finite(p: f64) -> Result<Self> {
        if p >= 1.0 && p.is_finite() {
            Ok(Self::Finite(p))
        } else {
            Err(Error::Domain(format!("exponent must lie in [1, inf], got {p}")))
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinite)
    }

    /// `1/p`, zero for `p = ∞`.
    pub fn recip(&self) -> f64 {
        match *self {
            Self::Finite(p) => 1.0 / p,
            Self::Infinite => 0.0,
        }
    }

    /// `x / p` with `x/∞ = 0`.
    pub fn div(&self, x: f64) -> f64 {
        match *self {
            Self::Finite(p) => x / p,
            Self::Infinite => 0.0,
        }
    }

    /// Hölder conjugate `p'`.
    pub fn conjugate(&self) -> Self {
        match *self {
            Self::Infinite => Self::Finite(1.0),
            Self::Finite(p) if p == 1.0 => Self::Infinite,
            Self::Finite(p) => Self::Finite(p / (p - 1.0)),
        }
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            Self::Finite(p) => p,
            Self::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for ExtExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(p) => write!(f, "{p}"),
            Self::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Self::Infinite);
        }
        let p: f64 = s
            .parse()
            .map_err(|_| Error::Domain(format!("cannot parse exponent {s:?}")))?;
        Self::finite(p)
    }
}

impl Serialize for ExtExponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Self::Finite(p) => s.serialize_f64(p),
            Self::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtExponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(d)? {
            Raw::Num(p) => Self::finite(p),
            Raw::Text(t) => t.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}
