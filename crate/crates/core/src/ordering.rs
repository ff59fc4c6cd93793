//! Ordering step functions `f_<` (successor) and `f_>` (predecessor).
//!
//! On positive numbers the successor adds one unit in the last place until
//! the mantissa saturates at `1…1.1…1`, then jumps to `0…0.0…01` in the next
//! region. On negative numbers stepping forward means stepping the magnitude
//! backward. Both are undefined at zero, and zero is never produced: the
//! exponent slot is unbounded below, so a chain toward the origin only ever
//! gets closer to it.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::Error;
use crate::number::{ExactRational, GridParams, RnNumber, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepResult {
    pub next: RnNumber,
    /// The exponent slot changed.
    pub jumped: bool,
}

fn step_magnitude_up(x: &RnNumber) -> Result<RnNumber, Error> {
    let p = x.params();
    if x.mantissa() < &p.mantissa_max() {
        RnNumber::from_mantissa(p, x.sign(), x.mantissa() + 1u32, x.exponent())
    } else {
        let e = x.exponent().checked_add(1).ok_or(Error::ExponentOverflow)?;
        RnNumber::from_mantissa(p, x.sign(), p.mantissa_min(), e)
    }
}

fn step_magnitude_down(x: &RnNumber) -> Result<RnNumber, Error> {
    let p = x.params();
    if x.mantissa() > &p.mantissa_min() {
        RnNumber::from_mantissa(p, x.sign(), x.mantissa() - BigUint::one(), x.exponent())
    } else {
        let e = x.exponent().checked_sub(1).ok_or(Error::ExponentOverflow)?;
        RnNumber::from_mantissa(p, x.sign(), p.mantissa_max(), e)
    }
}

fn step(x: &RnNumber, next: RnNumber) -> StepResult {
    StepResult {
        jumped: next.exponent() != x.exponent(),
        next,
    }
}

/// Immediate successor in value order.
pub fn succ(x: &RnNumber) -> Result<StepResult, Error> {
    if x.is_zero() {
        return Err(Error::UndefinedAtOrigin);
    }
    let next = match x.sign() {
        Sign::Plus => step_magnitude_up(x)?,
        Sign::Minus => step_magnitude_down(x)?,
    };
    Ok(step(x, next))
}

/// Immediate predecessor in value order; inverse of [`succ`].
pub fn pred(x: &RnNumber) -> Result<StepResult, Error> {
    if x.is_zero() {
        return Err(Error::UndefinedAtOrigin);
    }
    let next = match x.sign() {
        Sign::Plus => step_magnitude_down(x)?,
        Sign::Minus => step_magnitude_up(x)?,
    };
    Ok(step(x, next))
}

/// Gap from `x` up to its successor.
pub fn spacing(x: &RnNumber) -> Result<ExactRational, Error> {
    let next = succ(x)?.next;
    Ok(next.value() - x.value())
}

/// The `k^{2n} − 1` points of one region and sign, in ascending value order.
pub fn enumerate_region(params: GridParams, e: i64, sign: Sign) -> Vec<RnNumber> {
    let min = params.mantissa_min();
    let max = params.mantissa_max();
    let mut out = Vec::new();
    let mut m = min.clone();
    while m <= max {
        out.push(
            RnNumber::from_mantissa(params, sign, m.clone(), e).expect("mantissa within range"),
        );
        m += 1u32;
    }
    if sign == Sign::Minus {
        out.reverse();
    }
    out
}

/// Applies `succ` (`steps > 0`) or `pred` (`steps < 0`) `|steps|` times.
pub fn iterate(x: &RnNumber, steps: i64) -> Result<RnNumber, Error> {
    if x.is_zero() {
        return Err(Error::UndefinedAtOrigin);
    }
    let mut cur = x.clone();
    for _ in 0..steps.unsigned_abs() {
        cur = if steps > 0 { succ(&cur)?.next } else { pred(&cur)?.next };
    }
    Ok(cur)
}
