pub mod builders;
pub mod chain;
pub mod cli;
pub mod covers;
pub mod error;
pub mod group_ring;
pub mod io;
pub mod linalg;
pub mod sutured;

pub use error::{Error, Result};
