//! Command-line frontend for `hlbound`: the polynomial file format, bound
//! tables, and the `verify` reproduction suite.

pub mod app;
pub mod error;
pub mod oracle;
pub mod polyfile;
pub mod table;
pub mod tolerances;
pub mod verify;

pub use error::{CliError, Result};
