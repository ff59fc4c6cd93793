//! Finite-figure outcomes of measurements and computations: coarse-grain
//! bins, rounding of exact values to outcomes, embedding outcomes into an
//! `R_n` grid, and the two-way infinite ladder of finite-range apparatuses.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::number::{round_to_grid, ExactRational, GridParams, RnNumber, RoundMode, Sign};

/// A k-ary fixed-point digit string, optionally scaled by a power of `k`.
///
/// Every digit counts as a significant figure, leading zeros included.
/// Text form is `[+|-]{int}.{frac}[e{exp}]`; the exponent suffix is only
/// recognised for `k <= 14`, where `e` cannot be a digit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Outcome {
    k: u32,
    sign: Sign,
    digits: Vec<u8>,
    /// Digits left of the k-al point.
    point: usize,
    exp: i64,
}

impl Outcome {
    pub fn new(k: u32, sign: Sign, digits: Vec<u8>, point: usize, exp: i64) -> Result<Self, Error> {
        if !(2..=GridParams::MAX_BASE).contains(&k) {
            return Err(Error::InvalidParams(format!("base k={k} must lie in 2..=36")));
        }
        if digits.is_empty() || point > digits.len() {
            return Err(Error::MalformedString {
                input: format!("{digits:?}"),
                reason: "empty outcome or point past the last digit".into(),
            });
        }
        if let Some(&d) = digits.iter().find(|&&d| d as u32 >= k) {
            return Err(Error::DigitOutOfRange { digit: d as u32, k });
        }
        let sign = if digits.iter().all(|&d| d == 0) { Sign::Plus } else { sign };
        Ok(Self {
            k,
            sign,
            digits,
            point,
            exp,
        })
    }

    pub fn parse(text: &str, k: u32) -> Result<Self, Error> {
        let bad = |reason: &str| Error::MalformedString {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        let (sign, body) = match t.as_bytes().first() {
            Some(b'-') => (Sign::Minus, &t[1..]),
            Some(b'+') => (Sign::Plus, &t[1..]),
            _ => (Sign::Plus, t),
        };
        let (mantissa, exp) = match body.find(['e', 'E']) {
            Some(i) if k <= 14 => {
                let exp: i64 = body[i + 1..].parse().map_err(|_| bad("bad exponent"))?;
                (&body[..i], exp)
            }
            _ => (body, 0),
        };
        let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        let mut digits = Vec::with_capacity(int.len() + frac.len());
        for c in int.chars().chain(frac.chars()) {
            let d = c.to_digit(36).ok_or_else(|| bad("invalid digit"))?;
            if d >= k {
                return Err(Error::DigitOutOfRange { digit: d, k });
            }
            digits.push(d as u8);
        }
        if digits.is_empty() {
            return Err(bad("no digits"));
        }
        Self::new(k, sign, digits, int.chars().count(), exp)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of significant figures.
    pub fn figures(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Value of one unit in the last digit.
    pub fn step(&self) -> ExactRational {
        ExactRational::pow_int(self.k, self.last_digit_exponent())
    }

    fn last_digit_exponent(&self) -> i64 {
        self.exp - (self.digits.len() - self.point) as i64
    }

    pub fn value(&self) -> ExactRational {
        let int = BigUint::from_radix_be(&self.digits, self.k).unwrap_or_default();
        let v = ExactRational::from_integer(BigInt::from(int)) * self.step();
        match self.sign {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }

    /// Neighbouring outcome one step above, same figure count and layout.
    /// `None` when the digits would overflow.
    pub fn next_up(&self) -> Option<Outcome> {
        if self.sign == Sign::Minus {
            return None;
        }
        let int = BigUint::from_radix_be(&self.digits, self.k).unwrap_or_default() + 1u32;
        let raw = int.to_radix_be(self.k);
        if raw.len() > self.digits.len() {
            return None;
        }
        let mut digits = vec![0; self.digits.len() - raw.len()];
        digits.extend(raw);
        Some(Outcome { digits, ..self.clone() })
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Minus {
            f.write_str("-")?;
        }
        for &d in &self.digits[..self.point] {
            write!(f, "{}", crate::number::digit_char(d))?;
        }
        f.write_str(".")?;
        for &d in &self.digits[self.point..] {
            write!(f, "{}", crate::number::digit_char(d))?;
        }
        if self.exp != 0 {
            write!(f, "e{}", self.exp)?;
        }
        Ok(())
    }
}

/// Closed interval of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    #[serde(serialize_with = "ser_rational")]
    pub lo: ExactRational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: ExactRational,
}

pub(crate) fn ser_rational<S: serde::Serializer>(q: &ExactRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl Interval {
    pub fn contains(&self, q: &ExactRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }
}

/// Assignment of a real interval `[o − Δ_l, o + Δ_u]` to each outcome `o`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarseGrainRule {
    delta_l: ExactRational,
    delta_u: ExactRational,
    /// Outcome-specific widths keyed by outcome text; falls back to the constants.
    per_outcome: BTreeMap<String, (ExactRational, ExactRational)>,
}

impl CoarseGrainRule {
    pub fn constant(delta_l: ExactRational, delta_u: ExactRational) -> Result<Self, Error> {
        check_width(&delta_l)?;
        check_width(&delta_u)?;
        Ok(Self {
            delta_l,
            delta_u,
            per_outcome: BTreeMap::new(),
        })
    }

    pub fn symmetric(delta: ExactRational) -> Result<Self, Error> {
        Self::constant(delta.clone(), delta)
    }

    /// Widths under which every nonnegative value lands in the bin of the
    /// outcome it rounds to (half-up covers both signs).
    pub fn covering(step: &ExactRational, round: RoundMode) -> Self {
        let half = step * &ExactRational::new(1, 2).unwrap();
        let (l, u) = match round {
            RoundMode::TruncateTowardZero => (ExactRational::zero(), step.clone()),
            RoundMode::RoundHalfUp => (half.clone(), half),
            RoundMode::RoundUpAway => (step.clone(), ExactRational::zero()),
        };
        Self {
            delta_l: l,
            delta_u: u,
            per_outcome: BTreeMap::new(),
        }
    }

    pub fn with_outcome(
        mut self,
        outcome: &Outcome,
        delta_l: ExactRational,
        delta_u: ExactRational,
    ) -> Result<Self, Error> {
        check_width(&delta_l)?;
        check_width(&delta_u)?;
        self.per_outcome.insert(outcome.to_string(), (delta_l, delta_u));
        Ok(self)
    }

    pub fn is_constant(&self) -> bool {
        self.per_outcome.is_empty()
    }

    fn widths(&self, outcome: &Outcome) -> (&ExactRational, &ExactRational) {
        match self.per_outcome.get(&outcome.to_string()) {
            Some((l, u)) => (l, u),
            None => (&self.delta_l, &self.delta_u),
        }
    }
}

fn check_width(d: &ExactRational) -> Result<(), Error> {
    if d.is_negative() {
        return Err(Error::InvalidParams(format!("bin width {d} is negative")));
    }
    Ok(())
}

pub fn bin_of(outcome: &Outcome, rule: &CoarseGrainRule) -> Interval {
    let v = outcome.value();
    let (l, u) = rule.widths(outcome);
    Interval {
        lo: &v - l,
        hi: &v + u,
    }
}

/// Rounds `q` to an outcome with `figures` significant figures. Values whose
/// k-al point falls inside the digit block are written in plain fixed point;
/// others carry an exponent suffix.
pub fn coarse_grain(q: &ExactRational, figures: usize, k: u32, round: RoundMode) -> Result<Outcome, Error> {
    if figures == 0 {
        return Err(Error::InvalidParams("an outcome needs at least one figure".into()));
    }
    if q.is_zero() {
        return Outcome::new(k, Sign::Plus, vec![0; figures], figures, 0);
    }
    // a free-exponent grid with `figures` digits does the rounding
    let m = figures as i64;
    let mut unit = q.abs().floor_log(k) - m + 1;
    let scaled = q.abs() * ExactRational::pow_int(k, -unit);
    let mut int = match round {
        RoundMode::TruncateTowardZero => scaled.floor(),
        RoundMode::RoundHalfUp => (scaled + ExactRational::new(1, 2).unwrap()).floor(),
        RoundMode::RoundUpAway => scaled.ceil(),
    }
    .to_biguint()
    .expect("positive magnitude");
    if int.to_radix_be(k).len() > figures {
        int /= k;
        unit += 1;
    }
    let digits = int.to_radix_be(k);
    let sign = if q.is_negative() { Sign::Minus } else { Sign::Plus };
    if (-m..=0).contains(&unit) {
        Outcome::new(k, sign, digits, (unit + m) as usize, 0)
    } else {
        Outcome::new(k, sign, digits, figures, unit)
    }
}

/// Places an outcome with at most `n` figures into the `R_n` grid without
/// changing its value.
pub fn embed(outcome: &Outcome, params: GridParams) -> Result<RnNumber, Error> {
    if outcome.k() != params.k() {
        return Err(Error::ParamsMismatch);
    }
    let max = params.n() as usize;
    if outcome.figures() > max {
        return Err(Error::PrecisionExceedsTarget {
            figures: outcome.figures(),
            max,
        });
    }
    let v = outcome.value();
    let x = round_to_grid(&v, params);
    if x.value() != v {
        return Err(Error::NotOnGrid(outcome.to_string()));
    }
    Ok(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reading {
    NonDetect,
    Value { digits: String },
    OffScale,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApparatusReading {
    pub apparatus: i64,
    #[serde(flatten)]
    pub reading: Reading,
}

/// A ladder of `n_digits`-register instruments. Apparatus `j` reads in units
/// of `k^{n_digits·(j−1) + offset}`, so the full-scale value of one rung is
/// the threshold of the next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApparatusLadder {
    pub k: u32,
    pub n_digits: u32,
    pub offset: i64,
}

impl ApparatusLadder {
    pub fn new(k: u32, n_digits: u32) -> Result<Self, Error> {
        if !(2..=GridParams::MAX_BASE).contains(&k) || n_digits == 0 {
            return Err(Error::InvalidParams(format!(
                "ladder needs 2 <= k <= 36 and n_digits >= 1, got k={k}, n_digits={n_digits}"
            )));
        }
        Ok(Self {
            k,
            n_digits,
            offset: 0,
        })
    }

    pub fn with_offset(self, offset: i64) -> Self {
        Self { offset, ..self }
    }

    fn unit_exponent(&self, j: i64) -> i64 {
        self.n_digits as i64 * (j - 1) + self.offset
    }

    pub fn unit(&self, j: i64) -> ExactRational {
        ExactRational::pow_int(self.k, self.unit_exponent(j))
    }

    pub fn reading(&self, q: &ExactRational, j: i64) -> Result<ApparatusReading, Error> {
        if q.is_negative() {
            return Err(Error::NegativeQuantity(q.to_string()));
        }
        let unit = self.unit(j);
        let full = self.unit(j + 1);
        let reading = if q < &unit {
            Reading::NonDetect
        } else if q >= &full {
            Reading::OffScale
        } else {
            let count = (q * &ExactRational::pow_int(self.k, -self.unit_exponent(j))).floor();
            let raw = count.magnitude().to_radix_be(self.k);
            let mut digits = "0".repeat(self.n_digits as usize - raw.len());
            digits.extend(raw.into_iter().map(crate::number::digit_char));
            Reading::Value { digits }
        };
        Ok(ApparatusReading {
            apparatus: j,
            reading,
        })
    }

    /// The apparatus that shows a value for `q > 0`.
    pub fn locate(&self, q: &ExactRational) -> Option<i64> {
        if !q.is_positive() {
            return None;
        }
        let log = q.floor_log(self.k) - self.offset;
        Some(num_integer::Integer::div_floor(&log, &(self.n_digits as i64)) + 1)
    }

    /// Readings for apparatus `j_max` down to `j_min`, matching the usual
    /// high-to-low layout of the hierarchy.
    pub fn scan(&self, q: &ExactRational, j_min: i64, j_max: i64) -> Result<Vec<ApparatusReading>, Error> {
        (j_min..=j_max).rev().map(|j| self.reading(q, j)).collect()
    }
}

pub fn apparatus_reading(q: &ExactRational, j: i64, n_digits: u32, k: u32) -> Result<ApparatusReading, Error> {
    ApparatusLadder::new(k, n_digits)?.reading(q, j)
}

pub fn hierarchy_scan(
    q: &ExactRational,
    j_min: i64,
    j_max: i64,
    n_digits: u32,
    k: u32,
) -> Result<Vec<ApparatusReading>, Error> {
    ApparatusLadder::new(k, n_digits)?.scan(q, j_min, j_max)
}

/// Positional base-`k` text of `q` (`11.0101`, `-0.1`, `101.`), or `None`
/// when the expansion does not terminate.
pub fn to_kary(q: &ExactRational, k: u32) -> Option<String> {
    let denom = q.denom().magnitude().clone();
    let base = BigUint::from(k);
    let mut scale = BigUint::from(1u32);
    let mut places = 0usize;
    while &scale % &denom != BigUint::from(0u32) {
        if places as u64 > denom.bits() {
            return None;
        }
        scale *= &base;
        places += 1;
    }
    let scaled = q.numer().magnitude() * (&scale / &denom);
    let mut digits: Vec<char> = scaled.to_radix_be(k).into_iter().map(crate::number::digit_char).collect();
    while digits.len() <= places {
        digits.insert(0, '0');
    }
    let split = digits.len() - places;
    let (int, frac): (String, String) = (digits[..split].iter().collect(), digits[split..].iter().collect());
    let sign = if q.is_negative() { "-" } else { "" };
    Some(format!("{sign}{int}.{frac}"))
}

/// Serializable view of an outcome and its bin.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrainRecord {
    pub input: String,
    pub outcome: String,
    pub figures: usize,
    pub value: String,
    pub lo: String,
    pub hi: String,
    /// Bin endpoints written in base `k`, when their expansions terminate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo_kary: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi_kary: Option<String>,
}

impl GrainRecord {
    pub fn new(input: &str, outcome: &Outcome, bin: &Interval) -> Self {
        Self {
            input: input.to_string(),
            outcome: outcome.to_string(),
            figures: outcome.figures(),
            value: outcome.value().to_string(),
            lo: bin.lo.to_string(),
            hi: bin.hi.to_string(),
            lo_kary: to_kary(&bin.lo, outcome.k()),
            hi_kary: to_kary(&bin.hi, outcome.k()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    #[test]
    fn binary_bin_endpoints() {
        let o = Outcome::parse("11.011", 2).unwrap();
        assert_eq!(o.figures(), 5);
        let rule = CoarseGrainRule::symmetric(q("1/16")).unwrap();
        let bin = bin_of(&o, &rule);
        assert_eq!(bin.lo, Outcome::parse("11.0101", 2).unwrap().value());
        assert_eq!(bin.hi, Outcome::parse("11.0111", 2).unwrap().value());
    }

    #[test]
    fn zero_width_bin_is_a_point() {
        let o = Outcome::parse("-10.1", 2).unwrap();
        let bin = bin_of(&o, &CoarseGrainRule::symmetric(q("0")).unwrap());
        assert_eq!(bin.lo, bin.hi);
        assert!(bin.contains(&o.value()));
    }

    #[test]
    fn per_outcome_widths_override() {
        let a = Outcome::parse("1.0", 2).unwrap();
        let b = Outcome::parse("1.1", 2).unwrap();
        let rule = CoarseGrainRule::symmetric(q("1/4"))
            .unwrap()
            .with_outcome(&b, q("0"), q("1"))
            .unwrap();
        assert!(!rule.is_constant());
        assert_eq!(bin_of(&a, &rule).lo, q("3/4"));
        assert_eq!(bin_of(&b, &rule).lo, q("3/2"));
        assert_eq!(bin_of(&b, &rule).hi, q("5/2"));
        assert!(CoarseGrainRule::symmetric(q("-1")).is_err());
    }

    #[test]
    fn outcome_text() {
        let o = Outcome::parse("0010.", 2).unwrap();
        assert_eq!(o.figures(), 4);
        assert_eq!(o.value(), q("2"));
        assert_eq!(o.to_string(), "0010.");
        let s = Outcome::parse("-57.74e-2", 10).unwrap();
        assert_eq!(s.value(), q("-0.5774"));
        assert_eq!(s.to_string(), "-57.74e-2");
        assert!(Outcome::parse("12", 2).is_err());
        assert!(Outcome::parse("", 2).is_err());
        assert!(Outcome::parse(".", 2).is_err());
        // for k = 16 `e` is a digit
        assert_eq!(Outcome::parse("e.e", 16).unwrap().value(), q("14") + q("14/16"));
    }

    #[test]
    fn coarse_grain_examples() {
        let o = coarse_grain(&q("27/8"), 5, 2, RoundMode::TruncateTowardZero).unwrap();
        assert_eq!(o.to_string(), "11.011");
        // grid points map to themselves
        assert_eq!(coarse_grain(&o.value(), 5, 2, RoundMode::RoundHalfUp).unwrap(), o);
        let big = coarse_grain(&q("1550"), 2, 10, RoundMode::RoundHalfUp).unwrap();
        assert_eq!(big.to_string(), "16.e2");
        let small = coarse_grain(&q("0.00375"), 2, 10, RoundMode::TruncateTowardZero).unwrap();
        assert_eq!(small.to_string(), "37.e-4");
        let carry = coarse_grain(&q("9.96"), 2, 10, RoundMode::RoundHalfUp).unwrap();
        assert_eq!(carry.to_string(), "10.");
        assert_eq!(coarse_grain(&q("0"), 3, 2, RoundMode::RoundHalfUp).unwrap().to_string(), "000.");
    }

    #[test]
    fn coarse_grain_ties_follow_round_mode() {
        // 2.5 sits midway between the one-figure outcomes 2 and 3
        let tie = q("5/2");
        assert_eq!(coarse_grain(&tie, 1, 10, RoundMode::RoundHalfUp).unwrap().to_string(), "3.");
        assert_eq!(coarse_grain(&tie, 1, 10, RoundMode::TruncateTowardZero).unwrap().to_string(), "2.");
        assert_eq!(coarse_grain(&-tie.clone(), 1, 10, RoundMode::RoundHalfUp).unwrap().to_string(), "-3.");
        assert_eq!(coarse_grain(&q("21/10"), 1, 10, RoundMode::RoundUpAway).unwrap().to_string(), "3.");
    }

    #[test]
    fn embed_preserves_value() {
        let p = GridParams::symmetric(2, 4).unwrap();
        let o = Outcome::parse("1.1", 2).unwrap();
        let x = embed(&o, p).unwrap();
        assert_eq!(x.value(), o.value());
        assert_eq!(x.to_string(), "+0001.1000e0");
        let wide = Outcome::parse("10.011", 2).unwrap();
        assert_eq!(
            embed(&wide, GridParams::symmetric(2, 2).unwrap()),
            Err(Error::PrecisionExceedsTarget { figures: 5, max: 2 })
        );
        // 6 = 11 × 2 falls between the spacing-4 points of region 1
        let off = Outcome::parse("11.e1", 2).unwrap();
        assert!(matches!(
            embed(&off, GridParams::symmetric(2, 2).unwrap()),
            Err(Error::NotOnGrid(_))
        ));
    }

    #[test]
    fn apparatus_thresholds() {
        let ladder = ApparatusLadder::new(2, 3).unwrap();
        // apparatus 1 reads integers 1..=7
        let r = ladder.reading(&q("1"), 1).unwrap();
        assert_eq!(r.reading, Reading::Value { digits: "001".into() });
        assert_eq!(ladder.reading(&q("1/2"), 1).unwrap().reading, Reading::NonDetect);
        assert_eq!(ladder.reading(&q("7"), 1).unwrap().reading, Reading::Value { digits: "111".into() });
        assert_eq!(ladder.reading(&q("8"), 1).unwrap().reading, Reading::OffScale);
        assert_eq!(ladder.reading(&q("8"), 2).unwrap().reading, Reading::Value { digits: "001".into() });
        assert_eq!(
            ladder.reading(&q("-1"), 1),
            Err(Error::NegativeQuantity("-1/1".into()))
        );
        assert_eq!(ladder.locate(&q("8")), Some(2));
        assert_eq!(ladder.locate(&q("7")), Some(1));
        assert_eq!(ladder.locate(&q("1/8")), Some(0));
        assert_eq!(ladder.locate(&q("0")), None);
    }

    #[test]
    fn scan_of_zero_is_all_nondetect() {
        let scan = hierarchy_scan(&q("0"), -3, 3, 4, 2).unwrap();
        assert_eq!(scan.len(), 7);
        assert!(scan.iter().all(|r| r.reading == Reading::NonDetect));
        assert_eq!(scan[0].apparatus, 3);
    }

    #[test]
    fn reading_serializes_flat() {
        let r = apparatus_reading(&q("5"), 1, 3, 2).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"apparatus":1,"kind":"value","digits":"101"}"#
        );
    }

    #[test]
    fn kary_text() {
        assert_eq!(to_kary(&q("16"), 2), Some("10000.".into()));
        assert_eq!(to_kary(&q("53/16"), 2), Some("11.0101".into()));
        assert_eq!(to_kary(&q("-1/2"), 2), Some("-0.1".into()));
        assert_eq!(to_kary(&q("1/3"), 2), None);
        assert_eq!(to_kary(&q("1/3"), 3), Some("0.1".into()));
        assert_eq!(to_kary(&q("0"), 10), Some("0.".into()));
    }
}
