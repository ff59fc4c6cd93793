//! Successor steps across a region boundary, with the spacing at each point.

use rn_arith::ordering::{enumerate_region, spacing, succ};
use rn_arith::{GridParams, RnNumber, Sign};

fn main() -> Result<(), rn_arith::Error> {
    let p = GridParams::symmetric(2, 2)?;
    let mut x = RnNumber::parse("11.01e0", p)?;
    for _ in 0..6 {
        let step = succ(&x)?;
        println!(
            "{x:>10}  value {:>6}  spacing {:>4}{}",
            x.value().to_string(),
            spacing(&x)?.to_string(),
            if step.jumped { "  -> jump" } else { "" }
        );
        x = step.next;
    }

    let region = enumerate_region(p, 0, Sign::Plus);
    println!(
        "region e=0 holds {} points from {} to {}",
        region.len(),
        region[0],
        region[region.len() - 1]
    );
    Ok(())
}
