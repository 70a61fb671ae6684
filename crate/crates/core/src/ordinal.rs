//! Ordinals below `ω²`, written `ω·a + b`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Ordinal {
    /// Coefficient of `ω`. Ordering is lexicographic on `(omegas, finite)`.
    pub omegas: u64,
    pub finite: u64,
}

impl Ordinal {
    pub const ZERO: Ordinal = Ordinal { omegas: 0, finite: 0 };
    pub const OMEGA: Ordinal = Ordinal { omegas: 1, finite: 0 };

    pub fn new(omegas: u64, finite: u64) -> Self {
        Self { omegas, finite }
    }

    pub fn finite(n: u64) -> Self {
        Self { omegas: 0, finite: n }
    }

    pub fn successor(self) -> Self {
        Self { finite: self.finite + 1, ..self }
    }

    /// The next limit ordinal `ω·(a+1)`.
    pub fn next_limit(self) -> Self {
        Self { omegas: self.omegas + 1, finite: 0 }
    }

    pub fn is_limit(self) -> bool {
        self.omegas > 0 && self.finite == 0
    }

    pub fn is_finite(self) -> bool {
        self.omegas == 0
    }
}

/// `b` for finite ordinals, `<a>w+<b>` otherwise.
impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.omegas == 0 {
            write!(f, "{}", self.finite)
        } else {
            write!(f, "{}w+{}", self.omegas, self.finite)
        }
    }
}

/// Accepts `5`, `w`, `w+2`, `2w+5`, `2*w+5` and `0w+3`.
impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let bad = || Error::Argument(format!("malformed ordinal `{text}`"));
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let num = |s: &str| -> Result<u64, Error> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            s.parse().map_err(|_| bad())
        };
        match t.split_once('w') {
            None => Ok(Ordinal::finite(num(&t)?)),
            Some((coef, rest)) => {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let omegas = if coef.is_empty() { 1 } else { num(coef)? };
                let finite = match rest {
                    "" => 0,
                    r => num(r.strip_prefix('+').ok_or_else(bad)?)?,
                };
                Ok(Ordinal { omegas, finite })
            }
        }
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
