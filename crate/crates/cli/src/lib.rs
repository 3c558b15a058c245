//! Command-line front end for the `longwave` solver.
//!
//! This crate wraps the library in a small set of subcommands:
//!
//! * `run` — integrate one scenario (built-in preset or TOML file) and
//!   report its regime, optionally writing the trajectory as CSV and
//!   oscillogram / phase-portrait SVGs;
//! * `analyze` — classify a previously exported trajectory CSV;
//! * `sweep` — run a grid of scenarios in parallel and tabulate the regimes;
//! * `presets` — list the built-in scenarios.
//!
//! Everything is reachable programmatically too: [`cli_main_with`] takes the
//! argument vector plus output sinks and returns the process exit code, which
//! keeps the whole surface testable without spawning processes.

pub mod cli;
pub mod config;
pub mod csv;
pub mod plot;
pub mod sweep;

pub use cli::{cli_main, cli_main_with};

use std::fmt;

/// Errors surfaced by the command-line layer.
///
/// The split mirrors the exit-code contract: problems with what the user
/// handed us (flags, config files, input CSVs) exit with code 1, while
/// failures after a well-formed setup (I/O errors, diverging trajectories)
/// exit with code 2.
#[derive(Debug)]
pub enum CliError {
    /// The command line itself was malformed.
    Usage(String),
    /// An input — config file, CSV, flag value — was invalid.
    Config(String),
    /// The run failed after setup was accepted.
    Runtime(String),
}

impl CliError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Config(msg) | CliError::Runtime(msg) => {
                f.write_str(msg)
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<longwave::Error> for CliError {
    fn from(e: longwave::Error) -> Self {
        match e {
            longwave::Error::BlowUp { .. } => CliError::Runtime(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_split_input_from_runtime() {
        assert_eq!(CliError::Usage("u".into()).exit_code(), 1);
        assert_eq!(CliError::Config("c".into()).exit_code(), 1);
        assert_eq!(CliError::Runtime("r".into()).exit_code(), 2);
    }

    #[test]
    fn library_errors_map_by_kind() {
        let blow = longwave::Error::BlowUp {
            step: 3,
            time: 0.15,
            last_x: 1.0,
            last_y: 2.0,
        };
        assert_eq!(CliError::from(blow).exit_code(), 2);
        let dom = longwave::Error::Domain("negative".into());
        assert_eq!(CliError::from(dom).exit_code(), 1);
        let cfg = longwave::Error::Config("bad".into());
        assert_eq!(CliError::from(cfg).exit_code(), 1);
    }

    #[test]
    fn display_is_the_bare_message() {
        assert_eq!(CliError::Runtime("disk full".into()).to_string(), "disk full");
    }
}
