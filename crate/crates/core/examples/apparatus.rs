//! A ladder of three-digit instruments reading one quantity.

use rn_arith::measurement::{ApparatusLadder, Reading};
use rn_arith::ExactRational;

fn main() -> Result<(), rn_arith::Error> {
    let ladder = ApparatusLadder::new(10, 3)?;
    for q in ["7", "999", "1000", "1550", "123456"] {
        let value: ExactRational = q.parse()?;
        let shown: Vec<String> = ladder
            .scan(&value, 1, 3)?
            .into_iter()
            .map(|r| match r.reading {
                Reading::NonDetect => format!("j{}:below", r.apparatus),
                Reading::Value { digits } => format!("j{}:{digits}", r.apparatus),
                Reading::OffScale => format!("j{}:over", r.apparatus),
            })
            .collect();
        println!("{q:>7}  {}  (read by j={:?})", shown.join("  "), ladder.locate(&value));
    }
    Ok(())
}
