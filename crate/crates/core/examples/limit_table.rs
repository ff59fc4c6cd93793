//! Region bounds and gaps as n grows, against the asymmetric form.

use rn_arith::limit::{asymmetric_jump_demo, convergence_table};
use rn_arith::ExactRational;

fn main() -> Result<(), rn_arith::Error> {
    let (a, b): (ExactRational, ExactRational) = ("1/2".parse()?, "2".parse()?);
    println!("{:>3} {:>10} {:>14} {:>10} {:>10}", "n", "low", "high", "step", "max gap");
    for row in convergence_table(2, 2..=10, &a, &b)? {
        println!(
            "{:>3} {:>10} {:>14} {:>10} {:>10}",
            row.n,
            row.low.to_string(),
            row.high.to_string(),
            row.step.to_string(),
            row.max_gap.map(|g| g.to_string()).unwrap_or_default()
        );
    }
    for n in [2, 4, 8] {
        let j = asymmetric_jump_demo(2, n)?;
        println!("asymmetric n={n}: spacing jumps by {} at {}", j.ratio, j.location);
    }
    Ok(())
}
