pub mod arithmetic;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod limit;
pub mod measurement;
pub mod ordering;
pub mod qm;
pub mod number;
pub mod oracle;

pub use error::{Error, Result};
pub use number::{parse_or_round, round_to_grid, ExactRational, GridMode, GridParams, RnNumber, RoundMode, Sign};
