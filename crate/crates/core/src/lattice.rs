//! `R_n` space and time: points with `d` grid coordinates, singular-point
//! classification, nearest neighbors, scale transformations and finite
//! window enumeration.
//!
//! A coordinate equal to zero is an accumulation point along its axis and has
//! no nearest neighbor there. Scale transformations translate the exponent
//! slot of every nonzero coordinate and leave zeros fixed.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::ToPrimitive;

use serde::Serialize;

use crate::error::Error;
use crate::number::{GridParams, RnNumber, Sign};
use crate::ordering::{enumerate_region, pred, succ};

/// Default bound on the number of points a window may produce.
pub const DEFAULT_WINDOW_CAP: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    params: GridParams,
    coords: Vec<RnNumber>,
}

impl LatticePoint {
    pub fn new(coords: Vec<RnNumber>) -> Result<Self, Error> {
        let first = coords.first().ok_or(Error::ArityMismatch {
            expected: 1,
            got: 0,
        })?;
        let params = first.params();
        for c in &coords {
            params.ensure_same(&c.params())?;
        }
        Ok(Self { params, coords })
    }

    pub fn origin(params: GridParams, d: usize) -> Self {
        Self {
            params,
            coords: vec![RnNumber::zero(params); d.max(1)],
        }
    }

    pub fn params(&self) -> GridParams {
        self.params
    }

    pub fn dims(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[RnNumber] {
        &self.coords
    }

    pub fn coord(&self, dim: usize) -> Option<&RnNumber> {
        self.coords.get(dim)
    }

    fn with_coord(&self, dim: usize, c: RnNumber) -> Self {
        let mut coords = self.coords.clone();
        coords[dim] = c;
        Self {
            params: self.params,
            coords,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.coords.iter().any(RnNumber::is_zero)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A space (or space-time) context: fixed dimension, optional time axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceContext {
    pub params: GridParams,
    pub dims: usize,
    /// Index of the time coordinate, when one of the axes is time.
    pub time_axis: Option<usize>,
    /// Reject points with `t = 0`, as a relativistic treatment would.
    pub exclude_time_origin: bool,
}

impl SpaceContext {
    pub fn space(params: GridParams, dims: usize) -> Self {
        Self {
            params,
            dims,
            time_axis: None,
            exclude_time_origin: false,
        }
    }

    /// `dims` space axes followed by one time axis.
    pub fn space_time(params: GridParams, dims: usize, exclude_time_origin: bool) -> Self {
        Self {
            params,
            dims: dims + 1,
            time_axis: Some(dims),
            exclude_time_origin,
        }
    }

    pub fn point(&self, coords: Vec<RnNumber>) -> Result<LatticePoint, Error> {
        if coords.len() != self.dims {
            return Err(Error::ArityMismatch {
                expected: self.dims,
                got: coords.len(),
            });
        }
        let p = LatticePoint::new(coords)?;
        self.params.ensure_same(&p.params)?;
        if let (Some(t), true) = (self.time_axis, self.exclude_time_origin) {
            if p.coords[t].is_zero() {
                return Err(Error::ExcludedTimeOrigin);
            }
        }
        Ok(p)
    }
}

/// Which axes a point has no nearest neighbor along.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SingularityClass {
    pub zero_dims: BTreeSet<usize>,
    pub degree: usize,
}

impl SingularityClass {
    pub fn is_regular(&self) -> bool {
        self.degree == 0
    }
}

pub fn classify(p: &LatticePoint) -> SingularityClass {
    let zero_dims: BTreeSet<usize> = p
        .coords
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_zero())
        .map(|(i, _)| i)
        .collect();
    SingularityClass {
        degree: zero_dims.len(),
        zero_dims,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Neighbors {
    Pair {
        lower: LatticePoint,
        upper: LatticePoint,
    },
    NoNearestNeighbor,
}

/// Value-order neighbors along one axis. A zero coordinate is an
/// accumulation point and yields [`Neighbors::NoNearestNeighbor`].
pub fn neighbors(p: &LatticePoint, dim: usize) -> Result<Neighbors, Error> {
    let c = p.coord(dim).ok_or(Error::ArityMismatch {
        expected: p.dims(),
        got: dim + 1,
    })?;
    if c.is_zero() {
        return Ok(Neighbors::NoNearestNeighbor);
    }
    let lower = pred(c)?.next;
    let upper = succ(c)?.next;
    Ok(Neighbors::Pair {
        lower: p.with_coord(dim, lower),
        upper: p.with_coord(dim, upper),
    })
}

fn shift(c: &RnNumber, j: i64) -> Result<RnNumber, Error> {
    if c.is_zero() {
        return Ok(c.clone());
    }
    let e = c.exponent().checked_add(j).ok_or(Error::ExponentOverflow)?;
    Ok(c.with_exponent(e))
}

/// Isotropic scale change: every nonzero coordinate is multiplied by
/// `k^{2nj}` (symmetric grid) by translating its exponent slot.
pub fn scale(p: &LatticePoint, j: i64) -> Result<LatticePoint, Error> {
    scale_aniso(p, &vec![j; p.dims()])
}

/// Per-axis scale change; changes shapes when the entries differ.
pub fn scale_aniso(p: &LatticePoint, j: &[i64]) -> Result<LatticePoint, Error> {
    if j.len() != p.dims() {
        return Err(Error::ArityMismatch {
            expected: p.dims(),
            got: j.len(),
        });
    }
    let coords = p
        .coords
        .iter()
        .zip(j)
        .map(|(c, &jj)| shift(c, jj))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LatticePoint {
        params: p.params,
        coords,
    })
}

/// Signs drawn from in [`window_enum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignSelection {
    Positive,
    Negative,
    Both,
}

impl SignSelection {
    fn signs(self) -> &'static [Sign] {
        match self {
            SignSelection::Positive => &[Sign::Plus],
            SignSelection::Negative => &[Sign::Minus],
            SignSelection::Both => &[Sign::Minus, Sign::Plus],
        }
    }
}

impl std::str::FromStr for SignSelection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "pos" | "positive" | "+" => Ok(SignSelection::Positive),
            "neg" | "negative" | "-" => Ok(SignSelection::Negative),
            "both" | "+-" => Ok(SignSelection::Both),
            _ => Err(Error::MalformedString {
                input: s.into(),
                reason: "expected pos, neg or both".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub e_min: i64,
    pub e_max: i64,
    pub signs: SignSelection,
    pub include_singular: bool,
    pub cap: u128,
}

impl Window {
    pub fn new(e_min: i64, e_max: i64, signs: SignSelection) -> Self {
        Self {
            e_min,
            e_max,
            signs,
            include_singular: false,
            cap: DEFAULT_WINDOW_CAP,
        }
    }

    pub fn with_singular(self, include: bool) -> Self {
        Self {
            include_singular: include,
            ..self
        }
    }

    pub fn with_cap(self, cap: u128) -> Self {
        Self { cap, ..self }
    }
}

/// Ascending values available on one axis of the window, zero included when
/// singular points are requested.
pub fn axis_values(params: GridParams, window: &Window) -> Vec<RnNumber> {
    let mut neg = Vec::new();
    let mut pos = Vec::new();
    for &sign in window.signs.signs() {
        for e in window.e_min..=window.e_max {
            let region = enumerate_region(params, e, sign);
            match sign {
                Sign::Plus => pos.extend(region),
                Sign::Minus => neg.push(region),
            }
        }
    }
    // negative regions ascend by decreasing e
    let mut out: Vec<RnNumber> = neg.into_iter().rev().flatten().collect();
    if window.include_singular {
        out.push(RnNumber::zero(params));
    }
    out.extend(pos);
    out
}

/// Number of points per axis the window would produce, without building them.
pub fn axis_count(params: GridParams, window: &Window) -> u128 {
    if window.e_max < window.e_min {
        return u128::from(window.include_singular);
    }
    let per_region = params.points_per_region().to_u128().unwrap_or(u128::MAX);
    let regions = (window.e_max - window.e_min) as u128 + 1;
    let signs = window.signs.signs().len() as u128;
    per_region
        .saturating_mul(regions)
        .saturating_mul(signs)
        .saturating_add(u128::from(window.include_singular))
}

/// All points of the `d`-dimensional window in lexicographic order of
/// ascending coordinate values.
pub fn window_enum(params: GridParams, d: usize, window: &Window) -> Result<Vec<LatticePoint>, Error> {
    if d == 0 {
        return Err(Error::ArityMismatch { expected: 1, got: 0 });
    }
    let per_axis = axis_count(params, window);
    let size = (0..d).try_fold(1u128, |acc, _| acc.checked_mul(per_axis)).unwrap_or(u128::MAX);
    if size > window.cap {
        return Err(Error::WindowTooLarge {
            size,
            cap: window.cap,
        });
    }
    let axis = axis_values(params, window);
    let mut out = Vec::with_capacity(size as usize);
    let mut idx = vec![0usize; d];
    if axis.is_empty() {
        return Ok(out);
    }
    loop {
        out.push(LatticePoint {
            params,
            coords: idx.iter().map(|&i| axis[i].clone()).collect(),
        });
        // odometer, last axis fastest
        let mut pos = d;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < axis.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
