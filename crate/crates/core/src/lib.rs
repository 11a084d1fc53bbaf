pub mod error;
pub mod cli;
pub mod cohomology;
pub mod criteria;
pub mod crossed;
pub mod exec;
pub mod grades;
pub mod kummer;
pub mod scalars;

#[cfg(test)]
pub(crate) mod fixtures;

pub use error::{Error, Result};
pub use exec::Exec;
