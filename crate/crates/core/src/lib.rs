pub mod arith;
pub mod certify;
pub mod cli;
pub mod classical;
pub mod error;
pub mod freealg;
pub mod lattice;
pub mod lifts;
pub mod linalg;
pub mod qseries;
pub mod weil;

pub use error::{Error, Result};
