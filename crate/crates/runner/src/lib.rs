//! Configuration parsing, suite orchestration and report rendering for the
//! `premon` command.

pub mod config;
pub mod oracle;
pub mod report;
pub mod run;

pub use config::{load_config, parse_config, CheckKind, ConfigError, RunConfig};
pub use report::{emit_report, Format};
pub use run::{run, validate, RunError, RunOptions, RunReport};
