//! Outcome bins, rounding to a fixed number of figures, and embedding.

use rn_arith::measurement::{bin_of, coarse_grain, embed, to_kary, CoarseGrainRule, Outcome};
use rn_arith::{ExactRational, GridParams, RoundMode};

fn main() -> Result<(), rn_arith::Error> {
    let o = Outcome::parse("11.011", 2)?;
    let bin = bin_of(&o, &CoarseGrainRule::symmetric("1/16".parse()?)?);
    println!(
        "{o} covers [{}, {}] = [{}, {}]",
        to_kary(&bin.lo, 2).unwrap_or_default(),
        to_kary(&bin.hi, 2).unwrap_or_default(),
        bin.lo,
        bin.hi
    );

    for (q, m) in [("3.14159", 3), ("1550", 2), ("0.00375", 2), ("9.96", 2)] {
        let value: ExactRational = q.parse()?;
        let out = coarse_grain(&value, m, 10, RoundMode::RoundHalfUp)?;
        println!("{q} to {m} figures: {out}");
    }

    let p = GridParams::symmetric(2, 5)?;
    println!("11.011 on the k=2, n=5 grid: {}", embed(&o, p)?);
    Ok(())
}
