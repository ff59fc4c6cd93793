//! Exhaustive comparison of add and mul with lookup-table rounding.

use rn_arith::oracle::{oracle_check, Op};
use rn_arith::{GridParams, RoundMode};

fn main() -> Result<(), rn_arith::Error> {
    for round in [RoundMode::TruncateTowardZero, RoundMode::RoundHalfUp, RoundMode::RoundUpAway] {
        for n in [1, 2] {
            let p = GridParams::symmetric(2, n)?.with_round(round);
            let r = oracle_check(p, -2, 2, &[Op::Add, Op::Mul])?;
            println!("{p}: {} results, {} mismatches", r.checked, r.mismatches.len());
        }
    }
    Ok(())
}
