//! File formats, the verification suite and the command-line front end of `polyadjoint`.

pub mod commands;
pub mod error;
pub mod format;
pub mod suite;

pub use error::{exit, CliError, Result};
pub use suite::{run_suite, Field, Report, Section, Status, SuiteConfig};
