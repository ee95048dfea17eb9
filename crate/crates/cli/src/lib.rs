//! File formats, CSV output and command implementations behind the `voi` tool.

pub mod app;
pub mod error;
pub mod files;
pub mod output;

pub use error::CliError;
