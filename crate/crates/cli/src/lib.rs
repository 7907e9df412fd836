//! Scenario runner, JSON reports and SVG plots behind the `dealab` binary.

pub mod error;
pub mod format;
pub mod plot;
pub mod report;
pub mod scenario;

pub use error::{CliError, CliResult};
pub use report::{AssertionOutcome, Report};
pub use scenario::{builtin, builtin_names, Scenario};
