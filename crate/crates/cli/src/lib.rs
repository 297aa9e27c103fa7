//! Command-line front end for `kss-core`: reads a JSON family description,
//! runs the invariant, domain and certification computations and prints
//! exact reports or 2-D plots.
//!
//! Exit codes: 0 on success (a gap verdict is a success), 2 on malformed
//! input, 3 when the input is well formed but violates a precondition.

pub mod commands;
pub mod error;
pub mod plot;
pub mod report;
pub mod spec;

pub use commands::{run, Cli, Command};
pub use error::CliError;
pub use report::DomainReport;
pub use spec::FamilySpec;
