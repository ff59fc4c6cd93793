//! Three equal four-figure amplitudes do not square-sum to one.

use rn_arith::arithmetic::CnNumber;
use rn_arith::qm::{inner, norm_check, Label, QState};
use rn_arith::{GridMode, GridParams, RnNumber, RoundMode};

fn main() -> Result<(), rn_arith::Error> {
    let p = GridParams::new(10, 2, GridMode::FreeExponent, RoundMode::RoundHalfUp)?;
    let a = CnNumber::real(RnNumber::parse("57.74e-2", p)?);
    let labels = ["alpha", "beta", "gamma"].map(|s| Label::Name(s.into()));
    let psi = QState::new(p, labels.to_vec(), vec![a.clone(), a.clone(), a])?;

    let r = norm_check(&psi)?;
    println!("sum of rounded squares  {} (residual {})", r.rounded_square_sum, r.residual);
    println!("sum of exact squares    {} (residual {})", r.exact_norm2, r.exact_residual);
    println!("(psi, psi) on the grid  {}", inner(&psi, &psi)?);
    Ok(())
}
