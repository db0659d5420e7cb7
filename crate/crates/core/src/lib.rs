pub mod bitset;
pub mod cli;
pub mod combinatorics;
pub mod completion;
pub mod dsc;
pub mod error;
pub mod logic;
pub mod nucleus;
pub mod order;
pub mod rdp;
pub mod representation;
pub mod solver;
pub mod versioning;

pub use error::{Error, Result};
