//! Literal text form `{+|-}{s}.{t}e{e}` and the structured record form.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GridMode, GridParams, RnNumber, RoundMode, Sign};
use crate::error::Error;

pub(crate) fn digit_char(d: u8) -> char {
    char::from_digit(d as u32, 36).expect("digit below 36")
}

impl fmt::Display for RnNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.digits();
        let n = self.params.n() as usize;
        let s: String = digits[..n].iter().map(|&d| digit_char(d)).collect();
        let t: String = digits[n..].iter().map(|&d| digit_char(d)).collect();
        write!(f, "{}{s}.{t}e{}", self.sign.as_char(), self.e)
    }
}

impl RnNumber {
    /// Parses a literal against known parameters. The sign is optional on
    /// input, and the bare literal `0` denotes canonical zero.
    pub fn parse(text: &str, params: GridParams) -> Result<Self, Error> {
        let bad = |reason: &str| Error::MalformedString {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        if t == "0" {
            return Ok(RnNumber::zero(params));
        }
        let (sign, body) = match t.chars().next() {
            Some('+') => (Sign::Plus, &t[1..]),
            Some('-') => (Sign::Minus, &t[1..]),
            _ => (Sign::Plus, t),
        };
        let n = params.n() as usize;
        let chars: Vec<char> = body.chars().collect();
        // digits may include 'e' for k > 14, so the layout is read positionally
        if chars.len() < 2 * n + 2 {
            return Err(bad("too short for the mantissa layout"));
        }
        if chars[n] != '.' {
            return Err(bad("k-al point must follow the first n digits"));
        }
        if chars[2 * n + 1] != 'e' && chars[2 * n + 1] != 'E' {
            return Err(bad("missing exponent marker after the mantissa"));
        }
        let mut digits = Vec::with_capacity(2 * n);
        for &c in chars[..n].iter().chain(chars[n + 1..2 * n + 1].iter()) {
            let d = c.to_digit(36).ok_or_else(|| bad("invalid digit"))?;
            if d >= params.k() {
                return Err(Error::DigitOutOfRange { digit: d, k: params.k() });
            }
            digits.push(d as u8);
        }
        let exp: String = chars[2 * n + 2..].iter().collect();
        let e: i64 = exp.parse().map_err(|_| bad("bad exponent"))?;
        let x = RnNumber::make(params, Sign::Plus, &digits, e)?;
        Ok(if sign == Sign::Minus {
            if x.is_zero() {
                return Err(Error::NonCanonicalZero);
            }
            x.negate()
        } else {
            x
        })
    }
}

/// Structured form `{k, n, grid, round, sign, mantissa, e}` of a number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberRecord {
    pub k: u32,
    pub n: u32,
    #[serde(default = "default_grid")]
    pub grid: GridMode,
    #[serde(default = "default_round")]
    pub round: RoundMode,
    pub sign: Sign,
    pub mantissa: String,
    pub e: i64,
}

fn default_grid() -> GridMode {
    GridMode::SymmetricRegion
}

fn default_round() -> RoundMode {
    RoundMode::TruncateTowardZero
}

impl From<RnNumber> for NumberRecord {
    fn from(x: RnNumber) -> Self {
        NumberRecord {
            k: x.params.k(),
            n: x.params.n(),
            grid: x.params.grid(),
            round: x.params.round(),
            sign: x.sign,
            mantissa: x.digits().into_iter().map(digit_char).collect(),
            e: x.e,
        }
    }
}

impl TryFrom<NumberRecord> for RnNumber {
    type Error = Error;

    fn try_from(r: NumberRecord) -> Result<Self, Error> {
        let params = GridParams::new(r.k, r.n, r.grid, r.round)?;
        let digits = r
            .mantissa
            .chars()
            .map(|c| {
                c.to_digit(36).map(|d| d as u8).ok_or_else(|| Error::MalformedString {
                    input: r.mantissa.clone(),
                    reason: "invalid digit".into(),
                })
            })
            .collect::<Result<Vec<u8>, Error>>()?;
        RnNumber::make(params, r.sign, &digits, r.e)
    }
}
