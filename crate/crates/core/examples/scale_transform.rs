//! Scale changes translate the region exponent and fix the origin.

use rn_arith::lattice::{scale, scale_aniso, LatticePoint};
use rn_arith::{GridParams, RnNumber};

fn main() -> Result<(), rn_arith::Error> {
    let p = GridParams::symmetric(2, 2)?;
    let lit = |s: &str| RnNumber::parse(s, p);
    let pt = LatticePoint::new(vec![lit("01.10e0")?, lit("-00.01e-1")?, RnNumber::zero(p)])?;

    for j in [1, -1, 3] {
        let q = scale(&pt, j)?;
        let shown: Vec<String> = q.coords().iter().map(|c| format!("{c} ({})", c.value())).collect();
        println!("j={j:>2}: {}", shown.join(", "));
    }
    let squashed = scale_aniso(&pt, &[1, 0, 5])?;
    let shown: Vec<String> = squashed.coords().iter().map(|c| c.to_string()).collect();
    println!("per-axis (1, 0, 5): {}", shown.join(", "));
    Ok(())
}
