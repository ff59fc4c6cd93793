use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// How the exponent of a number is laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GridMode {
    /// `s.t × k^{2n·e}`: regions of `k^{2n} − 1` equally spaced points,
    /// leading zeros significant.
    #[serde(rename = "sym")]
    SymmetricRegion,
    /// `s.t × k^{e}` with a nonzero leading digit: ordinary normalized
    /// floating point with `2n` significant figures.
    #[serde(rename = "free")]
    FreeExponent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RoundMode {
    #[serde(rename = "trunc")]
    TruncateTowardZero,
    /// Ties go away from zero.
    #[serde(rename = "half-up")]
    RoundHalfUp,
    #[serde(rename = "up")]
    RoundUpAway,
}

/// Ambient parameters of one arithmetic context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridParams {
    k: u32,
    n: u32,
    grid: GridMode,
    round: RoundMode,
}

impl GridParams {
    pub const MAX_BASE: u32 = 36;

    pub fn new(k: u32, n: u32, grid: GridMode, round: RoundMode) -> Result<Self, Error> {
        if !(2..=Self::MAX_BASE).contains(&k) {
            return Err(Error::InvalidParams(format!("base k={k} must lie in 2..=36")));
        }
        if n == 0 {
            return Err(Error::InvalidParams("half-length n must be at least 1".into()));
        }
        Ok(Self { k, n, grid, round })
    }

    /// Symmetric grid with truncation, the default context.
    pub fn symmetric(k: u32, n: u32) -> Result<Self, Error> {
        Self::new(k, n, GridMode::SymmetricRegion, RoundMode::TruncateTowardZero)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn grid(&self) -> GridMode {
        self.grid
    }

    pub fn round(&self) -> RoundMode {
        self.round
    }

    pub fn with_round(self, round: RoundMode) -> Self {
        Self { round, ..self }
    }

    pub fn with_grid(self, grid: GridMode) -> Self {
        Self { grid, ..self }
    }

    /// Number of mantissa digits, `2n`.
    pub fn digits(&self) -> usize {
        2 * self.n as usize
    }

    /// `k^{2n}`, one past the largest integer mantissa.
    pub fn mantissa_radix(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.k), self.digits())
    }

    pub fn mantissa_min(&self) -> BigUint {
        match self.grid {
            GridMode::SymmetricRegion => BigUint::from(1u32),
            GridMode::FreeExponent => num_traits::pow(BigUint::from(self.k), self.digits() - 1),
        }
    }

    pub fn mantissa_max(&self) -> BigUint {
        self.mantissa_radix() - 1u32
    }

    /// Power of `k` carried by one unit of the integer mantissa in exponent slot `e`.
    pub fn ulp_exponent(&self, e: i64) -> i64 {
        let n = self.n as i64;
        match self.grid {
            GridMode::SymmetricRegion => 2 * n * e - n,
            GridMode::FreeExponent => e - n,
        }
    }

    /// Nonzero points per sign in one exponent slot.
    pub fn points_per_region(&self) -> BigUint {
        self.mantissa_max() - self.mantissa_min() + 1u32
    }

    pub(crate) fn ensure_same(&self, other: &GridParams) -> Result<(), Error> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParamsMismatch)
        }
    }
}

impl fmt::Display for GridMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GridMode::SymmetricRegion => "sym",
            GridMode::FreeExponent => "free",
        })
    }
}

impl FromStr for GridMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "sym" => Ok(GridMode::SymmetricRegion),
            "free" => Ok(GridMode::FreeExponent),
            _ => Err(Error::InvalidParams(format!("unknown grid mode {s:?}"))),
        }
    }
}

impl fmt::Display for RoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RoundMode::TruncateTowardZero => "trunc",
            RoundMode::RoundHalfUp => "half-up",
            RoundMode::RoundUpAway => "up",
        })
    }
}

impl FromStr for RoundMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "trunc" => Ok(RoundMode::TruncateTowardZero),
            "half-up" => Ok(RoundMode::RoundHalfUp),
            "up" => Ok(RoundMode::RoundUpAway),
            _ => Err(Error::InvalidParams(format!("unknown round mode {s:?}"))),
        }
    }
}

/// `k=<int>,n=<int>,grid=<sym|free>,round=<trunc|half-up|up>`
impl fmt::Display for GridParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={},n={},grid={},round={}", self.k, self.n, self.grid, self.round)
    }
}

impl FromStr for GridParams {
    type Err = Error;

    /// `grid` and `round` may be omitted and default to `sym` / `trunc`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut k = None;
        let mut n = None;
        let mut grid = GridMode::SymmetricRegion;
        let mut round = RoundMode::TruncateTowardZero;
        for field in s.split(',').map(str::trim).filter(|f| !f.is_empty()) {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::InvalidParams(format!("expected key=value, got {field:?}")))?;
            let int = |v: &str| {
                v.parse::<u32>()
                    .map_err(|_| Error::InvalidParams(format!("bad integer {v:?}")))
            };
            match key {
                "k" => k = Some(int(value)?),
                "n" => n = Some(int(value)?),
                "grid" => grid = value.parse()?,
                "round" => round = value.parse()?,
                _ => return Err(Error::InvalidParams(format!("unknown key {key:?}"))),
            }
        }
        let k = k.ok_or_else(|| Error::InvalidParams("missing k".into()))?;
        let n = n.ok_or_else(|| Error::InvalidParams("missing n".into()))?;
        GridParams::new(k, n, grid, round)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_base_and_length() {
        assert!(GridParams::symmetric(1, 2).is_err());
        assert!(GridParams::symmetric(37, 2).is_err());
        assert!(GridParams::symmetric(2, 0).is_err());
    }

    #[test]
    fn text_form_round_trips() {
        let p = GridParams::new(10, 2, GridMode::FreeExponent, RoundMode::RoundHalfUp).unwrap();
        assert_eq!(p.to_string(), "k=10,n=2,grid=free,round=half-up");
        assert_eq!(p.to_string().parse::<GridParams>().unwrap(), p);
        let q: GridParams = "k=2,n=2".parse().unwrap();
        assert_eq!(q, GridParams::symmetric(2, 2).unwrap());
        assert!("k=2".parse::<GridParams>().is_err());
        assert!("k=2,n=2,grid=odd".parse::<GridParams>().is_err());
    }

    #[test]
    fn mantissa_ranges() {
        let sym = GridParams::symmetric(2, 2).unwrap();
        assert_eq!(sym.mantissa_min(), BigUint::from(1u32));
        assert_eq!(sym.mantissa_max(), BigUint::from(15u32));
        assert_eq!(sym.points_per_region(), BigUint::from(15u32));
        let free = sym.with_grid(GridMode::FreeExponent);
        assert_eq!(free.mantissa_min(), BigUint::from(8u32));
        assert_eq!(free.points_per_region(), BigUint::from(8u32));
        assert_eq!(sym.ulp_exponent(2), 6);
        assert_eq!(free.ulp_exponent(-2), -4);
    }
}
