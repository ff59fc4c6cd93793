//! `+_{2n}`, `×_{2n}` and `=_{2n}` on `R_n`, their lift to `C_n`, and the
//! region/jump and associativity diagnostics.
//!
//! Every operation computes the exact rational result and projects it onto
//! the grid exactly once. Addition is commutative but not associative.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::number::{round_to_grid, ExactRational, GridParams, RnNumber};

pub fn add(a: &RnNumber, b: &RnNumber) -> Result<RnNumber, Error> {
    a.params().ensure_same(&b.params())?;
    Ok(round_to_grid(&(a.value() + b.value()), a.params()))
}

pub fn sub(a: &RnNumber, b: &RnNumber) -> Result<RnNumber, Error> {
    add(a, &b.negate())
}

pub fn mul(a: &RnNumber, b: &RnNumber) -> Result<RnNumber, Error> {
    a.params().ensure_same(&b.params())?;
    Ok(round_to_grid(&(a.value() * b.value()), a.params()))
}

pub fn div(a: &RnNumber, b: &RnNumber) -> Result<RnNumber, Error> {
    a.params().ensure_same(&b.params())?;
    let q = a.value().checked_div(&b.value())?;
    Ok(round_to_grid(&q, a.params()))
}

pub fn negate(a: &RnNumber) -> RnNumber {
    a.negate()
}

pub fn eq_2n(a: &RnNumber, b: &RnNumber) -> Result<bool, Error> {
    a.eq_2n(b)
}

/// Element of `C_n`: a pair of `R_n` numbers on the same grid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnNumber {
    re: RnNumber,
    im: RnNumber,
}

impl CnNumber {
    pub fn new(re: RnNumber, im: RnNumber) -> Result<Self, Error> {
        re.params().ensure_same(&im.params())?;
        Ok(Self { re, im })
    }

    pub fn real(re: RnNumber) -> Self {
        let im = RnNumber::zero(re.params());
        Self { re, im }
    }

    pub fn zero(params: GridParams) -> Self {
        Self::real(RnNumber::zero(params))
    }

    pub fn one(params: GridParams) -> Self {
        Self::real(RnNumber::one(params))
    }

    pub fn i(params: GridParams) -> Self {
        Self {
            re: RnNumber::zero(params),
            im: RnNumber::one(params),
        }
    }

    /// Rounds an exact complex value componentwise.
    pub fn round_exact(re: &ExactRational, im: &ExactRational, params: GridParams) -> Self {
        Self {
            re: round_to_grid(re, params),
            im: round_to_grid(im, params),
        }
    }

    pub fn re(&self) -> &RnNumber {
        &self.re
    }

    pub fn im(&self) -> &RnNumber {
        &self.im
    }

    pub fn params(&self) -> GridParams {
        self.re.params()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.negate(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Exact `(re, im)` values.
    pub fn value(&self) -> (ExactRational, ExactRational) {
        (self.re.value(), self.im.value())
    }

    /// Exact `|z|²` of the stored components.
    pub fn norm_sqr_exact(&self) -> ExactRational {
        let (r, i) = self.value();
        &r * &r + &i * &i
    }
}

impl fmt::Display for CnNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

pub fn cadd(a: &CnNumber, b: &CnNumber) -> Result<CnNumber, Error> {
    Ok(CnNumber {
        re: add(&a.re, &b.re)?,
        im: add(&a.im, &b.im)?,
    })
}

/// Exact complex product, then one rounding per component.
pub fn cmul(a: &CnNumber, b: &CnNumber) -> Result<CnNumber, Error> {
    a.params().ensure_same(&b.params())?;
    let (ar, ai) = a.value();
    let (br, bi) = b.value();
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    Ok(CnNumber::round_exact(&re, &im, a.params()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OpKind {
    Region,
    Jump,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpClassification {
    pub kind: OpKind,
    pub regions_in: (i64, i64),
    pub region_out: i64,
}

/// Region arithmetic keeps all three numbers in one exponent slot; anything
/// else is jump arithmetic. Zero sits in slot 0.
pub fn classify_op(a: &RnNumber, b: &RnNumber, result: &RnNumber) -> OpClassification {
    let (ea, eb, er) = (a.exponent(), b.exponent(), result.exponent());
    let kind = if ea == eb && eb == er {
        OpKind::Region
    } else {
        OpKind::Jump
    };
    OpClassification {
        kind,
        regions_in: (ea, eb),
        region_out: er,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Associativity {
    Holds,
    Witness { lhs: RnNumber, rhs: RnNumber },
}

/// Compares `(a + b) + c` with `a + (b + c)`.
pub fn check_associative(
    a: &RnNumber,
    b: &RnNumber,
    c: &RnNumber,
) -> Result<Associativity, Error> {
    let lhs = add(&add(a, b)?, c)?;
    let rhs = add(a, &add(b, c)?)?;
    Ok(if lhs == rhs {
        Associativity::Holds
    } else {
        Associativity::Witness { lhs, rhs }
    })
}

/// Every partial sum of both groupings is a grid point, so neither grouping rounds.
pub fn sums_grid_exact(a: &RnNumber, b: &RnNumber, c: &RnNumber) -> bool {
    use crate::number::is_grid_exact;
    let p = a.params();
    let (va, vb, vc) = (a.value(), b.value(), c.value());
    let total = &(&va + &vb) + &vc;
    is_grid_exact(&(&va + &vb), p) && is_grid_exact(&(&vb + &vc), p) && is_grid_exact(&total, p)
}
