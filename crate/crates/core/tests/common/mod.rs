//! Reference implementations written without the library's rounding or
//! ordering code: grid points are built by counting mantissas, values come
//! from the digit strings, and rounding is a search over a sorted table.

#![allow(dead_code)]

use rn_arith::{ExactRational, GridMode, GridParams, RnNumber, RoundMode, Sign};

pub fn params(k: u32, n: u32) -> GridParams {
    GridParams::symmetric(k, n).unwrap()
}

pub fn q(s: &str) -> ExactRational {
    s.parse().unwrap()
}

pub fn pow(k: u32, e: i64) -> ExactRational {
    let base = ExactRational::from_integer(k as i64);
    let mut acc = ExactRational::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc * base.clone();
    }
    if e < 0 {
        acc.recip().unwrap()
    } else {
        acc
    }
}

/// Value from the printed digit string and exponent.
pub fn value_of(x: &RnNumber) -> ExactRational {
    let p = x.params();
    let k = p.k() as i64;
    let m = x.digits().iter().fold(ExactRational::zero(), |acc, &d| {
        acc * ExactRational::from_integer(k) + ExactRational::from_integer(d as i64)
    });
    let n = p.n() as i64;
    let scale = match p.grid() {
        GridMode::SymmetricRegion => pow(p.k(), 2 * n * x.exponent() - n),
        GridMode::FreeExponent => pow(p.k(), x.exponent() - n),
    };
    let v = m * scale;
    if x.sign() == Sign::Minus {
        -v
    } else {
        v
    }
}

fn digits_of(mut m: u64, k: u32, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for slot in out.iter_mut().rev() {
        *slot = (m % k as u64) as u8;
        m /= k as u64;
    }
    out
}

/// Positive points of region `e`, ascending, by counting the mantissa.
pub fn region(p: GridParams, e: i64) -> Vec<RnNumber> {
    let k = p.k() as u64;
    let len = 2 * p.n() as usize;
    let top = k.pow(len as u32);
    let start = match p.grid() {
        GridMode::SymmetricRegion => 1,
        GridMode::FreeExponent => top / k,
    };
    (start..top)
        .map(|m| RnNumber::make(p, Sign::Plus, &digits_of(m, p.k(), len), e).unwrap())
        .collect()
}

/// Both signs of regions `e_min..=e_max` plus zero.
pub fn operands(p: GridParams, e_min: i64, e_max: i64) -> Vec<RnNumber> {
    let mut out = vec![RnNumber::zero(p)];
    for e in e_min..=e_max {
        for x in region(p, e) {
            out.push(x.negate());
            out.push(x);
        }
    }
    out
}

pub struct Table {
    pub params: GridParams,
    pub values: Vec<ExactRational>,
    pub points: Vec<RnNumber>,
}

impl Table {
    pub fn new(p: GridParams, e_min: i64, e_max: i64) -> Self {
        let mut pairs: Vec<(ExactRational, RnNumber)> = (e_min..=e_max)
            .flat_map(|e| region(p, e))
            .map(|x| (value_of(&x), x))
            .collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let (values, points) = pairs.into_iter().unzip();
        Self {
            params: p,
            values,
            points,
        }
    }

    /// Reference rounding of `q`; panics when `|q|` leaves the table.
    pub fn round(&self, q: &ExactRational, mode: RoundMode) -> RnNumber {
        if q.is_zero() {
            return RnNumber::zero(self.params.with_round(mode));
        }
        let mag = q.abs();
        assert!(mag >= self.values[0] && &mag <= self.values.last().unwrap(), "{q} off table");
        // first index with value > mag
        let above = self.values.partition_point(|v| v <= &mag);
        let at_or_below = above - 1;
        let pick = if self.values[at_or_below] == mag {
            at_or_below
        } else {
            match mode {
                RoundMode::TruncateTowardZero => at_or_below,
                RoundMode::RoundUpAway => above,
                RoundMode::RoundHalfUp => {
                    let down = &mag - &self.values[at_or_below];
                    let up = &self.values[above] - &mag;
                    if up <= down {
                        above
                    } else {
                        at_or_below
                    }
                }
            }
        };
        let x = RnNumber::from_mantissa(
            self.params.with_round(mode),
            Sign::Plus,
            self.points[pick].mantissa().clone(),
            self.points[pick].exponent(),
        )
        .unwrap();
        if q.is_negative() {
            x.negate()
        } else {
            x
        }
    }
}
