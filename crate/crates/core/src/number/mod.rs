//! Elements of `R_n`: a sign, a `2n`-digit mantissa `s.t` with the k-al point
//! after digit `n`, and an exponent slot `e`.
//!
//! In the symmetric-region grid the value is `±M · k^{2n(e − 1/2)}`, where
//! `M` is the mantissa read as an integer. Each exponent slot (a *region*)
//! therefore holds `k^{2n} − 1` equally spaced points and consecutive regions
//! differ in spacing by `k^{2n}`. The free-exponent grid is plain normalized
//! floating point: `±M · k^{e − n}` with a nonzero leading digit.

mod params;
mod rational;
mod text;

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use params::{GridMode, GridParams, RoundMode};
pub use rational::ExactRational;
pub use text::NumberRecord;
pub(crate) use text::digit_char;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "+")]
    Plus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One canonical element of `R_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "NumberRecord", into = "NumberRecord")]
pub struct RnNumber {
    params: GridParams,
    sign: Sign,
    mantissa: BigUint,
    e: i64,
}

impl RnNumber {
    /// Builds a number from its digit string (most significant first).
    pub fn make(params: GridParams, sign: Sign, digits: &[u8], e: i64) -> Result<Self, Error> {
        if digits.len() != params.digits() {
            return Err(Error::WrongMantissaLength {
                expected: params.digits(),
                got: digits.len(),
            });
        }
        if let Some(&d) = digits.iter().find(|&&d| d as u32 >= params.k()) {
            return Err(Error::DigitOutOfRange {
                digit: d as u32,
                k: params.k(),
            });
        }
        let mantissa = BigUint::from_radix_be(digits, params.k()).unwrap_or_default();
        Self::from_mantissa(params, sign, mantissa, e)
    }

    /// Builds a number from its integer mantissa.
    pub fn from_mantissa(
        params: GridParams,
        sign: Sign,
        mantissa: BigUint,
        e: i64,
    ) -> Result<Self, Error> {
        if mantissa.is_zero() {
            if sign != Sign::Plus || e != 0 {
                return Err(Error::NonCanonicalZero);
            }
        } else {
            if mantissa > params.mantissa_max() {
                return Err(Error::WrongMantissaLength {
                    expected: params.digits(),
                    got: mantissa.to_radix_be(params.k()).len(),
                });
            }
            if mantissa < params.mantissa_min() {
                return Err(Error::NotNormalized);
            }
        }
        Ok(Self {
            params,
            sign,
            mantissa,
            e,
        })
    }

    pub fn zero(params: GridParams) -> Self {
        Self {
            params,
            sign: Sign::Plus,
            mantissa: BigUint::zero(),
            e: 0,
        }
    }

    /// The grid point with value exactly 1.
    pub fn one(params: GridParams) -> Self {
        let n = params.n() as usize;
        match params.grid() {
            // 0…01.0…0 in region 0
            GridMode::SymmetricRegion => Self {
                params,
                sign: Sign::Plus,
                mantissa: num_traits::pow(BigUint::from(params.k()), n),
                e: 0,
            },
            // 10…0.0…0 × k^{1−n}
            GridMode::FreeExponent => Self {
                params,
                sign: Sign::Plus,
                mantissa: params.mantissa_min(),
                e: 1 - params.n() as i64,
            },
        }
    }

    pub fn params(&self) -> GridParams {
        self.params
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.sign == Sign::Plus
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Minus
    }

    /// Mantissa digits, most significant first, always `2n` long.
    pub fn digits(&self) -> Vec<u8> {
        let width = self.params.digits();
        if self.mantissa.is_zero() {
            return vec![0; width];
        }
        let raw = self.mantissa.to_radix_be(self.params.k());
        let mut out = vec![0; width - raw.len()];
        out.extend(raw);
        out
    }

    /// Exact value of this grid point.
    pub fn value(&self) -> ExactRational {
        if self.is_zero() {
            return ExactRational::zero();
        }
        let m = ExactRational::from_integer(BigInt::from(self.mantissa.clone()));
        let v = m * ExactRational::pow_int(self.params.k(), self.params.ulp_exponent(self.e));
        match self.sign {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }

    /// Distance between adjacent points in this number's exponent slot.
    pub fn unit(&self) -> ExactRational {
        ExactRational::pow_int(self.params.k(), self.params.ulp_exponent(self.e))
    }

    pub fn negate(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self {
            sign: self.sign.flip(),
            ..self.clone()
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            sign: Sign::Plus,
            ..self.clone()
        }
    }

    /// Same digits and sign, exponent slot translated by `j`.
    pub(crate) fn with_exponent(&self, e: i64) -> Self {
        Self { e, ..self.clone() }
    }

    /// Order by value, computed structurally from (sign, e, mantissa).
    pub fn compare(&self, other: &Self) -> Result<Ordering, Error> {
        self.params.ensure_same(&other.params)?;
        let rank = |x: &Self| -> i8 {
            if x.is_zero() {
                0
            } else if x.sign == Sign::Plus {
                1
            } else {
                -1
            }
        };
        let (ra, rb) = (rank(self), rank(other));
        if ra != rb || ra == 0 {
            return Ok(ra.cmp(&rb));
        }
        let magnitude = self
            .e
            .cmp(&other.e)
            .then_with(|| self.mantissa.cmp(&other.mantissa));
        Ok(if ra > 0 { magnitude } else { magnitude.reverse() })
    }

    /// Identity of canonical forms (`=_{2n}`).
    pub fn eq_2n(&self, other: &Self) -> Result<bool, Error> {
        self.params.ensure_same(&other.params)?;
        Ok(self == other)
    }
}

/// Projects an exact rational onto the grid, once, under the context's
/// round mode. Never overflows: the exponent slot is unbounded.
pub fn round_to_grid(q: &ExactRational, params: GridParams) -> RnNumber {
    if q.is_zero() {
        return RnNumber::zero(params);
    }
    let sign = if q.is_negative() { Sign::Minus } else { Sign::Plus };
    let mag = q.abs();
    let k = params.k();
    let n = params.n() as i64;
    let log = mag.floor_log(k);
    let mut e = match params.grid() {
        // k^{2ne − n} <= |q| < k^{2ne + n}
        GridMode::SymmetricRegion => Integer::div_floor(&(log + n), &(2 * n)),
        // k^{2n−1} <= |q| · k^{n−e} < k^{2n}
        GridMode::FreeExponent => log - n + 1,
    };
    let scaled = mag * ExactRational::pow_int(k, -params.ulp_exponent(e));
    let rounded = match params.round() {
        RoundMode::TruncateTowardZero => scaled.floor(),
        RoundMode::RoundHalfUp => (scaled + ExactRational::new(1, 2).unwrap()).floor(),
        RoundMode::RoundUpAway => scaled.ceil(),
    };
    let mut mantissa = rounded.to_biguint().expect("rounded magnitude is positive");
    if mantissa == params.mantissa_radix() {
        mantissa = params.mantissa_min();
        e += 1;
    }
    RnNumber {
        params,
        sign,
        mantissa,
        e,
    }
}

/// Reads a grid literal, or failing that an exact value (`p/q`, integer or
/// decimal) rounded onto the grid.
pub fn parse_or_round(text: &str, params: GridParams) -> Result<RnNumber, Error> {
    match RnNumber::parse(text, params) {
        Ok(x) => Ok(x),
        Err(literal_err) => match text.parse::<ExactRational>() {
            Ok(q) => Ok(round_to_grid(&q, params)),
            Err(_) => Err(literal_err),
        },
    }
}

/// True when `q` is itself a grid point.
pub fn is_grid_exact(q: &ExactRational, params: GridParams) -> bool {
    let trunc = params.with_round(RoundMode::TruncateTowardZero);
    &round_to_grid(q, trunc).value() == q
}

/// Lossy convenience import of an `f64` (through its exact binary value).
pub fn from_f64(x: f64, params: GridParams) -> Option<RnNumber> {
    let r = num_rational::BigRational::from_float(x)?;
    Some(round_to_grid(&ExactRational::from(r), params))
}

impl RnNumber {
    /// Mantissa as a `u128` when it fits; handy for small-grid tests.
    pub fn mantissa_u128(&self) -> Option<u128> {
        self.mantissa.to_u128()
    }
}
