pub mod cli;
pub mod cuts;
pub mod dsl;
pub mod error;
pub mod hahnomega;
pub mod lexgroups;
pub mod oracle;
pub mod ordsets;
pub mod scalars;

pub use error::{Error, Result};
