//! Simulation and analysis of a two-variable model of Kondratiev long waves
//! with power-law memory.
//!
//! The model couples the efficiency of new technologies `x(t)` with the
//! efficiency of capital productivity `y(t)`:
//!
//! ```text
//! D^alpha x = -lambda n x (x - 1)(y - y_star)
//! D^beta  y =  n (1 - n) y^2 (x - x_star) + f(t)
//! x(0) = a,  y(0) = b
//! ```
//!
//! where `D^m` is a Gerasimov-Caputo fractional derivative of order
//! m ∈ (0, 1]. At alpha = beta = 1 this is the classical long-wave system,
//! whose unforced orbits are closed curves around the equilibrium
//! `(x_star, y_star)` — economic cycles of constant amplitude. Fractional
//! orders give the system power-law memory (heredity): the same orbits spiral
//! into the equilibrium instead, and an external periodic impulse `f(t)` can
//! then lock the damped economy onto a limit cycle. This crate exists to
//! compute those trajectories and to tell the regimes apart automatically.
//!
//! Modules:
//!
//! * [`scheme`] — primitives of the nonlocal explicit finite-difference
//!   scheme: gamma function, scheme coefficient, memory weights.
//! * [`model`] — parameters, right-hand sides, and forcing kinds.
//! * [`sim`] — the time stepper and the [`sim::Trajectory`] it produces.
//! * [`analysis`] — peak detection, period estimation, and regime
//!   classification.
//! * [`oracle`] — independent reference computations (RK4 integer-order
//!   limit, direct fractional-derivative application, empirical convergence
//!   order) used to validate the solver.
//!
//! The library is dependency-free; all numerics are f64.

pub mod analysis;
pub mod error;
pub mod model;
pub mod oracle;
pub mod scheme;
pub mod sim;

pub use error::{Error, Result};
