//! Library behind the `qlin` binary: the object file format and the
//! subcommand reports.

pub mod commands;
pub mod error;
pub mod spec;

pub use commands::{Form, Report};
pub use error::CliError;
pub use spec::ObjectSpecFile;
