//! Command-line front end for `heis-core`: orbit classification, tuple
//! reduction and the randomized verification suites.

pub mod commands;
pub mod error;
pub mod json;
pub mod verify;

pub use error::CliError;
