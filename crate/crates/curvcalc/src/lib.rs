//! File formats and the `curvcalc` command line on top of `curvcalc-core`.

pub mod cli;
pub mod document;
pub mod error;
pub mod function;
pub mod mapfile;
pub mod render;

pub use cli::run;
pub use error::{CliError, Result};
