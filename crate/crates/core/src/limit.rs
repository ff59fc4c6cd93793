//! Finite-n diagnostics for growing precision.
//!
//! In the symmetric form region `e` covers `[k^{2n(e−1/2)}, (k^n − k^{−n})k^{2ne}]`
//! with uniform step `k^{2n(e−1/2)}`; the spacing only changes at the first
//! point of a region. The asymmetric form `(s_1…s_n., ne)` with value
//! `S·k^{ne}` changes spacing at every power `k^{ne}`, including 1 itself.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::Error;
use crate::lattice::DEFAULT_WINDOW_CAP;
use crate::measurement::ser_rational;
use crate::number::{ExactRational, GridMode, GridParams};

/// `(low, high, step)` of region `e` on a symmetric grid.
pub fn region_bounds(params: GridParams, e: i64) -> Result<(ExactRational, ExactRational, ExactRational), Error> {
    if params.grid() != GridMode::SymmetricRegion {
        return Err(Error::InvalidParams("region bounds need the symmetric grid".into()));
    }
    let (k, n) = (params.k(), i64::from(params.n()));
    let step = ExactRational::pow_int(k, 2 * n * e - n);
    let high = (ExactRational::pow_int(k, n) - ExactRational::pow_int(k, -n)) * ExactRational::pow_int(k, 2 * n * e);
    Ok((step.clone(), high, step))
}

fn region_of(q: &ExactRational, k: u32, n: i64) -> i64 {
    Integer::div_floor(&(q.floor_log(k) + n), &(2 * n))
}

/// Values where the symmetric grid changes spacing, restricted to `(a, b)`.
/// These are exactly the region lower bounds `k^{n(2e−1)}`.
pub fn symmetric_jumps_between(
    params: GridParams,
    a: &ExactRational,
    b: &ExactRational,
) -> Result<Vec<ExactRational>, Error> {
    if !a.is_positive() || a >= b {
        return Err(Error::InvalidParams(format!("probe ({a}, {b}) must satisfy 0 < a < b")));
    }
    let n = i64::from(params.n());
    let mut out = Vec::new();
    for e in region_of(a, params.k(), n)..=region_of(b, params.k(), n) {
        let (low, _, _) = region_bounds(params, e)?;
        if &low > a && &low < b {
            out.push(low);
        }
    }
    Ok(out)
}

/// Largest gap between consecutive symmetric grid points that both lie in
/// `[a, b]`, or `None` when fewer than two points fall inside.
pub fn max_gap(params: GridParams, a: &ExactRational, b: &ExactRational) -> Result<Option<ExactRational>, Error> {
    if !a.is_positive() || a > b {
        return Err(Error::InvalidParams(format!("probe [{a}, {b}] must satisfy 0 < a <= b")));
    }
    let n = i64::from(params.n());
    let m_min = BigInt::from(params.mantissa_min());
    let m_max = BigInt::from(params.mantissa_max());
    let mut best: Option<ExactRational> = None;
    let e_hi = region_of(b, params.k(), n);
    for e in region_of(a, params.k(), n)..=e_hi {
        let (_, _, step) = region_bounds(params, e)?;
        let lo = a.checked_div(&step)?.ceil().max(m_min.clone());
        let hi = b.checked_div(&step)?.floor().min(m_max.clone());
        if lo > hi {
            continue;
        }
        let inner_pair = hi > lo;
        let crosses = hi == m_max && e < e_hi && region_bounds(params, e + 1)?.0 <= *b;
        if (inner_pair || crosses) && best.as_ref().is_none_or(|g| &step > g) {
            best = Some(step);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitReportRow {
    pub n: u32,
    #[serde(serialize_with = "ser_rational")]
    pub low: ExactRational,
    #[serde(serialize_with = "ser_rational")]
    pub high: ExactRational,
    #[serde(serialize_with = "ser_rational")]
    pub step: ExactRational,
    #[serde(serialize_with = "ser_rational")]
    pub nearest_jump_below_1: ExactRational,
    #[serde(serialize_with = "ser_rational")]
    pub nearest_jump_above_1: ExactRational,
    /// Empty when the probe holds fewer than two grid points.
    #[serde(serialize_with = "ser_opt_rational")]
    pub max_gap: Option<ExactRational>,
}

fn ser_opt_rational<S: serde::Serializer>(q: &Option<ExactRational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_str(""),
    }
}

/// One row per `n`: the `e = 0` region, the jumps bracketing 1 and the
/// largest gap inside `[a, b]`.
pub fn convergence_table(
    k: u32,
    ns: impl IntoIterator<Item = u32>,
    a: &ExactRational,
    b: &ExactRational,
) -> Result<Vec<LimitReportRow>, Error> {
    ns.into_iter()
        .map(|n| {
            let params = GridParams::symmetric(k, n)?;
            let (low, high, step) = region_bounds(params, 0)?;
            let (above, _, _) = region_bounds(params, 1)?;
            Ok(LimitReportRow {
                n,
                nearest_jump_below_1: low.clone(),
                nearest_jump_above_1: above,
                max_gap: max_gap(params, a, b)?,
                low,
                high,
                step,
            })
        })
        .collect()
}

/// The asymmetric form: `n` digits, point at the end, value `S·k^{ne}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AsymmetricGrid {
    k: u32,
    n: u32,
}

impl AsymmetricGrid {
    pub fn new(k: u32, n: u32) -> Result<Self, Error> {
        GridParams::symmetric(k, n)?;
        Ok(Self { k, n })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Positive points in `[a, b]`, ascending. The mantissa runs over
    /// `1..k^n`, so regions never overlap.
    pub fn points_between(&self, a: &ExactRational, b: &ExactRational) -> Result<Vec<ExactRational>, Error> {
        if !a.is_positive() || a > b {
            return Err(Error::InvalidParams(format!("probe [{a}, {b}] must satisfy 0 < a <= b")));
        }
        let n = i64::from(self.n);
        let s_max = num_traits::Pow::pow(BigInt::from(self.k), self.n) - BigInt::from(1);
        let e_lo = Integer::div_floor(&a.floor_log(self.k), &n);
        let e_hi = Integer::div_floor(&b.floor_log(self.k), &n);
        let mut out = Vec::new();
        for e in e_lo..=e_hi {
            let unit = ExactRational::pow_int(self.k, n * e);
            let lo = a.checked_div(&unit)?.ceil().max(BigInt::from(1));
            let hi = b.checked_div(&unit)?.floor().min(s_max.clone());
            let mut s = lo;
            while s <= hi {
                out.push(ExactRational::from_integer(s.clone()) * unit.clone());
                if out.len() as u128 > DEFAULT_WINDOW_CAP {
                    return Err(Error::WindowTooLarge {
                        size: out.len() as u128,
                        cap: DEFAULT_WINDOW_CAP,
                    });
                }
                s += 1;
            }
        }
        Ok(out)
    }
}

/// A point where the spacing to the right differs from the spacing to the left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpacingChange {
    pub location: ExactRational,
    /// right gap / left gap
    pub ratio: ExactRational,
}

/// All spacing changes along an ascending list of points.
pub fn spacing_changes(points: &[ExactRational]) -> Vec<SpacingChange> {
    points
        .windows(3)
        .filter_map(|w| {
            let left = &w[1] - &w[0];
            let right = &w[2] - &w[1];
            (left != right).then(|| SpacingChange {
                location: w[1].clone(),
                ratio: right.checked_div(&left).expect("ascending points"),
            })
        })
        .collect()
}

/// Enumerates the asymmetric grid on `[1/k, k]` and reports the spacing change
/// found there: at 1, with ratio `k^n`.
pub fn asymmetric_jump_demo(k: u32, n: u32) -> Result<SpacingChange, Error> {
    let grid = AsymmetricGrid::new(k, n)?;
    let a = ExactRational::pow_int(k, -1);
    let b = ExactRational::from_integer(k);
    let points = grid.points_between(&a, &b)?;
    spacing_changes(&points)
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvalidParams("no spacing change on the probe".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    #[test]
    fn bounds_for_k2_n2() {
        let p = GridParams::symmetric(2, 2).unwrap();
        assert_eq!(region_bounds(p, 0).unwrap(), (q("1/4"), q("15/4"), q("1/4")));
        let (l0, _, _) = region_bounds(p, 0).unwrap();
        let (l1, _, _) = region_bounds(p, 1).unwrap();
        assert_eq!(l1.checked_div(&l0).unwrap(), q("16"));
        let free = p.with_grid(GridMode::FreeExponent);
        assert!(region_bounds(free, 0).is_err());
    }

    #[test]
    fn gap_of_half_to_two() {
        for n in 2..=6 {
            let p = GridParams::symmetric(2, n).unwrap();
            assert_eq!(max_gap(p, &q("1/2"), &q("2")).unwrap(), Some(ExactRational::pow_int(2, -(n as i64))));
        }
        // n = 1: [1/2, 2] straddles the jump at 2
        let p = GridParams::symmetric(2, 1).unwrap();
        assert_eq!(max_gap(p, &q("1/2"), &q("2")).unwrap(), Some(q("1/2")));
        assert_eq!(max_gap(p, &q("7/2"), &q("7/2")).unwrap(), None);
    }

    #[test]
    fn asymmetric_jump_sits_at_one() {
        for n in 2..=8 {
            let j = asymmetric_jump_demo(2, n).unwrap();
            assert_eq!(j.location, ExactRational::one());
            assert_eq!(j.ratio, ExactRational::pow_int(2, n as i64));
        }
    }

    #[test]
    fn symmetric_jumps_are_region_starts() {
        let p = GridParams::symmetric(2, 3).unwrap();
        let jumps = symmetric_jumps_between(p, &q("1/1000"), &q("1000")).unwrap();
        assert_eq!(jumps, vec![q("1/512"), q("1/8"), q("8"), q("512")]);
    }
}
