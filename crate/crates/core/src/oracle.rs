//! Exhaustive agreement check of the grid operations against a lookup-table
//! rounding. The table lists every positive grid point of a wide exponent
//! band in ascending order; an exact result is placed by binary search and
//! picked per round mode, without going through [`round_to_grid`].
//!
//! [`round_to_grid`]: crate::number::round_to_grid

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arithmetic::{add, div, mul, sub};
use crate::error::Error;
use crate::lattice::{axis_values, SignSelection, Window, DEFAULT_WINDOW_CAP};
use crate::number::{ExactRational, GridMode, GridParams, RnNumber, RoundMode, Sign};
use crate::ordering::enumerate_region;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

impl Op {
    pub fn symbol(self) -> char {
        match self {
            Op::Add => '+',
            Op::Sub => '-',
            Op::Mul => '*',
            Op::Div => '/',
        }
    }

    pub fn exact(self, a: &ExactRational, b: &ExactRational) -> Result<ExactRational, Error> {
        Ok(match self {
            Op::Add => a + b,
            Op::Sub => a - b,
            Op::Mul => a * b,
            Op::Div => a.checked_div(b)?,
        })
    }

    pub fn apply(self, a: &RnNumber, b: &RnNumber) -> Result<RnNumber, Error> {
        match self {
            Op::Add => add(a, b),
            Op::Sub => sub(a, b),
            Op::Mul => mul(a, b),
            Op::Div => div(a, b),
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Add => "add",
            Op::Sub => "sub",
            Op::Mul => "mul",
            Op::Div => "div",
        })
    }
}

impl FromStr for Op {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "add" => Ok(Op::Add),
            "sub" => Ok(Op::Sub),
            "mul" => Ok(Op::Mul),
            "div" => Ok(Op::Div),
            _ => Err(Error::InvalidParams(format!("unknown operation {s:?}"))),
        }
    }
}

/// Sorted positive grid points for exponents `e_lo..=e_hi`.
pub struct TableOracle {
    params: GridParams,
    points: Vec<RnNumber>,
    values: Vec<ExactRational>,
}

impl TableOracle {
    pub fn new(params: GridParams, e_lo: i64, e_hi: i64) -> Result<Self, Error> {
        let per_region: u128 = params.points_per_region().try_into().unwrap_or(u128::MAX);
        let size = per_region.saturating_mul((e_hi - e_lo + 1).max(0) as u128);
        if size > DEFAULT_WINDOW_CAP * 4 {
            return Err(Error::WindowTooLarge {
                size,
                cap: DEFAULT_WINDOW_CAP * 4,
            });
        }
        let points: Vec<RnNumber> = (e_lo..=e_hi)
            .flat_map(|e| enumerate_region(params, e, Sign::Plus))
            .collect();
        let values = points.iter().map(RnNumber::value).collect();
        Ok(Self { params, points, values })
    }

    /// Rounded image of `q`, or `None` when `|q|` falls outside the table.
    pub fn round(&self, q: &ExactRational) -> Option<RnNumber> {
        if q.is_zero() {
            return Some(RnNumber::zero(self.params));
        }
        let mag = q.abs();
        let first = self.values.first()?;
        let last = self.values.last()?;
        if &mag < first || &mag > last {
            return None;
        }
        let pick = match self.values.binary_search(&mag) {
            Ok(i) => i,
            Err(i) => {
                // values[i - 1] < mag < values[i]
                let (below, above) = (i - 1, i);
                match self.params.round() {
                    RoundMode::TruncateTowardZero => below,
                    RoundMode::RoundUpAway => above,
                    RoundMode::RoundHalfUp => {
                        if &mag - &self.values[below] < &self.values[above] - &mag {
                            below
                        } else {
                            above
                        }
                    }
                }
            }
        };
        let x = self.points[pick].clone();
        Some(if q.is_negative() { x.negate() } else { x })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub op: Op,
    pub a: String,
    pub b: String,
    pub got: String,
    /// Empty when the exact result fell off the table.
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub params: String,
    pub operands: usize,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

/// Every ordered operand pair from the window (both signs plus zero) under
/// every requested operation. Division by zero is skipped.
pub fn oracle_check(params: GridParams, e_min: i64, e_max: i64, ops: &[Op]) -> Result<OracleReport, Error> {
    let window = Window::new(e_min, e_max, SignSelection::Both).with_singular(true);
    let operands = axis_values(params, &window);
    let margin = 2 + match params.grid() {
        GridMode::SymmetricRegion => 0,
        GridMode::FreeExponent => 2 * params.n() as i64,
    };
    let span = e_max - e_min;
    let e_lo = (2 * e_min).min(-span) - margin;
    let e_hi = (2 * e_max).max(span) + margin;
    let table = TableOracle::new(params, e_lo, e_hi)?;
    let values: Vec<ExactRational> = operands.iter().map(RnNumber::value).collect();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for &op in ops {
        for (a, va) in operands.iter().zip(&values) {
            for (b, vb) in operands.iter().zip(&values) {
                if op == Op::Div && b.is_zero() {
                    continue;
                }
                checked += 1;
                let got = op.apply(a, b)?;
                let expected = table.round(&op.exact(va, vb)?);
                if expected.as_ref() != Some(&got) {
                    mismatches.push(Mismatch {
                        op,
                        a: a.to_string(),
                        b: b.to_string(),
                        got: got.to_string(),
                        expected: expected.map(|x| x.to_string()).unwrap_or_default(),
                    });
                }
            }
        }
    }
    Ok(OracleReport {
        params: params.to_string(),
        operands: operands.len(),
        checked,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grids_agree() {
        for round in [RoundMode::TruncateTowardZero, RoundMode::RoundHalfUp, RoundMode::RoundUpAway] {
            let p = GridParams::symmetric(2, 1).unwrap().with_round(round);
            let r = oracle_check(p, -1, 1, &[Op::Add, Op::Sub, Op::Mul, Op::Div]).unwrap();
            assert_eq!(r.operands, 2 * 3 * 3 + 1);
            assert!(r.mismatches.is_empty(), "{:?}", r.mismatches.first());
        }
        let free = GridParams::new(3, 1, GridMode::FreeExponent, RoundMode::RoundHalfUp).unwrap();
        let r = oracle_check(free, -1, 1, &[Op::Add, Op::Mul]).unwrap();
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches.first());
    }

    #[test]
    fn table_rounds_by_mode() {
        let p = GridParams::symmetric(2, 1).unwrap();
        let t = TableOracle::new(p, -1, 1).unwrap();
        let q: ExactRational = "5/4".parse().unwrap();
        assert_eq!(t.round(&q).unwrap().value(), "1".parse().unwrap());
        let t = TableOracle::new(p.with_round(RoundMode::RoundHalfUp), -1, 1).unwrap();
        assert_eq!(t.round(&q).unwrap().value(), "3/2".parse().unwrap());
        assert_eq!(t.round(&"-5/4".parse().unwrap()).unwrap().value(), "-3/2".parse().unwrap());
        assert!(t.round(&"1000".parse().unwrap()).is_none());
    }
}
