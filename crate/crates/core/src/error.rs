//! Error type shared across the crate.

use std::fmt;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation
    /// (e.g. a non-positive gamma argument, a fractional order outside (0, 1]).
    Domain(String),
    /// A run was set up inconsistently (bad grid, forcing table too short,
    /// contradictory options).
    Config(String),
    /// The state left the finite range during time stepping. Carries the last
    /// finite state so the caller can report where the trajectory was heading.
    BlowUp {
        /// Index of the step that produced the non-finite / out-of-range value.
        step: usize,
        /// Time of that step.
        time: f64,
        /// Last finite x value.
        last_x: f64,
        /// Last finite y value.
        last_y: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::BlowUp {
                step,
                time,
                last_x,
                last_y,
            } => write!(
                f,
                "solution blew up at step {step} (t = {time}); \
                 last finite state was x = {last_x}, y = {last_y}"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
