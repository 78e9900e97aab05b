use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TokenKind {
    E,
    F,
    HPlus,
    HMinus,
    L,
}

/// Which algebra acts: the left `MS_{n,d}` or the right `MS_{m,d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("unknown side {s:?}"))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// One of `E_i`, `F_i`, `H_a^+`, `H_a^-`, `L`. Indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorToken {
    pub kind: TokenKind,
    pub index: usize,
}

impl GeneratorToken {
    pub const L: GeneratorToken = GeneratorToken {
        kind: TokenKind::L,
        index: 0,
    };

    pub fn e(i: usize) -> Self {
        Self { kind: TokenKind::E, index: i }
    }

    pub fn f(i: usize) -> Self {
        Self { kind: TokenKind::F, index: i }
    }

    pub fn h_plus(a: usize) -> Self {
        Self { kind: TokenKind::HPlus, index: a }
    }

    pub fn h_minus(a: usize) -> Self {
        Self { kind: TokenKind::HMinus, index: a }
    }

    /// Checks the index against an algebra `MS_{size,d}`.
    pub fn validate(&self, size: usize) -> Result<()> {
        let ok = match self.kind {
            TokenKind::E | TokenKind::F => self.index >= 1 && self.index < size,
            TokenKind::HPlus | TokenKind::HMinus => self.index >= 1 && self.index <= size,
            TokenKind::L => self.index == 0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("token {self} is not defined for size {size}")))
        }
    }

    /// Every generator of `MS_{size,d}`, in a fixed order.
    pub fn all(size: usize) -> Vec<GeneratorToken> {
        let mut out = Vec::new();
        for a in 1..=size {
            out.push(Self::h_plus(a));
            out.push(Self::h_minus(a));
        }
        for i in 1..size {
            out.push(Self::e(i));
            out.push(Self::f(i));
        }
        out.push(Self::L);
        out
    }
}

impl fmt::Display for GeneratorToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TokenKind::E => write!(f, "E{}", self.index),
            TokenKind::F => write!(f, "F{}", self.index),
            TokenKind::HPlus => write!(f, "H+{}", self.index),
            TokenKind::HMinus => write!(f, "H-{}", self.index),
            TokenKind::L => write!(f, "L"),
        }
    }
}

impl fmt::Debug for GeneratorToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for GeneratorToken {
    type Err = Error;

    /// `E1`, `F2`, `H+1`, `H-3`, `L`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown generator token {s:?}"));
        let idx = |rest: &str| rest.parse::<usize>().map_err(|_| bad());
        if s == "L" {
            return Ok(Self::L);
        }
        if let Some(rest) = s.strip_prefix("H+") {
            return Ok(Self::h_plus(idx(rest)?));
        }
        if let Some(rest) = s.strip_prefix("H-") {
            return Ok(Self::h_minus(idx(rest)?));
        }
        if let Some(rest) = s.strip_prefix('E') {
            return Ok(Self::e(idx(rest)?));
        }
        if let Some(rest) = s.strip_prefix('F') {
            return Ok(Self::f(idx(rest)?));
        }
        Err(bad())
    }
}

impl Serialize for GeneratorToken {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GeneratorToken {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_validate() {
        for s in ["E1", "F2", "H+1", "H-3", "L"] {
            assert_eq!(s.parse::<GeneratorToken>().unwrap().to_string(), s);
        }
        assert!("G1".parse::<GeneratorToken>().is_err());
        assert!(GeneratorToken::e(2).validate(2).is_err());
        assert!(GeneratorToken::e(1).validate(2).is_ok());
        assert!(GeneratorToken::h_plus(2).validate(2).is_ok());
        assert!(GeneratorToken::h_plus(0).validate(2).is_err());
        assert_eq!(GeneratorToken::all(2).len(), 7);
    }
}
