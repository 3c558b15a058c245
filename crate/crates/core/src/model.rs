//! The two-variable long-wave model: parameters, right-hand sides, forcing.
//!
//! The model couples the efficiency of new technologies `x` with the
//! efficiency of capital productivity `y` (both measured relative to their
//! equilibrium levels):
//!
//! ```text
//! D^alpha x = -lambda * n * x * (x - 1) * (y - y_star)
//! D^beta  y =  n * (1 - n) * y^2 * (x - x_star) + f(t)
//! ```
//!
//! where `D^m` is a Gerasimov-Caputo derivative of order m ∈ (0, 1] (see
//! [`crate::scheme`]), `n` is the savings rate, `lambda` scales the reaction
//! of technology efficiency, `(x_star, y_star)` is the nontrivial equilibrium,
//! and `f(t)` is an optional external investment impulse. At
//! alpha = beta = 1 the system is the classical predator-prey-like long-wave
//! model; fractional orders introduce heredity (power-law memory), which damps
//! the closed orbits into a stable focus, while periodic forcing can lock the
//! damped system onto a limit cycle.

use crate::error::{Error, Result};

/// Parameters of the long-wave system.
///
/// Construction validates every field, so a value of this type is always
/// usable: `n` lies strictly inside (0, 1), `lambda` is positive, and the
/// equilibrium coordinates are finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DubovskyParams {
    n: f64,
    lambda: f64,
    x_star: f64,
    y_star: f64,
}

impl DubovskyParams {
    pub fn new(n: f64, lambda: f64, x_star: f64, y_star: f64) -> Result<Self> {
        if !n.is_finite() || n <= 0.0 || n >= 1.0 {
            return Err(Error::Config(format!("n must lie in (0,1), got {n}")));
        }
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::Config(format!(
                "lambda must be positive and finite, got {lambda}"
            )));
        }
        if !x_star.is_finite() {
            return Err(Error::Config(format!("x_star must be finite, got {x_star}")));
        }
        if !y_star.is_finite() {
            return Err(Error::Config(format!("y_star must be finite, got {y_star}")));
        }
        Ok(Self {
            n,
            lambda,
            x_star,
            y_star,
        })
    }

    /// Savings rate, in (0, 1).
    pub fn n(&self) -> f64 {
        self.n
    }

    /// Reaction amplitude of the technology-efficiency equation.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Equilibrium level of `x`.
    pub fn x_star(&self) -> f64 {
        self.x_star
    }

    /// Equilibrium level of `y`.
    pub fn y_star(&self) -> f64 {
        self.y_star
    }
}

impl Default for DubovskyParams {
    /// Reference parameter set used by all bundled scenarios:
    /// n = 0.2, lambda = 2.25, equilibrium at (1.3, 0.5).
    fn default() -> Self {
        Self {
            n: 0.2,
            lambda: 2.25,
            x_star: 1.3,
            y_star: 0.5,
        }
    }
}

/// Right-hand side of the `x` equation: `-lambda n x (x - 1)(y - y_star)`.
pub fn rhs_x(x: f64, y: f64, p: &DubovskyParams) -> Result<f64> {
    if !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain(format!(
            "state must be finite, got x = {x}, y = {y}"
        )));
    }
    Ok(rhs_x_raw(x, y, p))
}

/// Right-hand side of the `y` equation:
/// `n (1 - n) y^2 (x - x_star) + f_value`.
pub fn rhs_y(x: f64, y: f64, p: &DubovskyParams, f_value: f64) -> Result<f64> {
    if !x.is_finite() || !y.is_finite() || !f_value.is_finite() {
        return Err(Error::Domain(format!(
            "state and forcing must be finite, got x = {x}, y = {y}, f = {f_value}"
        )));
    }
    Ok(rhs_y_raw(x, y, p, f_value))
}

/// Unchecked x right-hand side for integrator internals that validate the
/// state themselves after each step.
#[inline]
pub(crate) fn rhs_x_raw(x: f64, y: f64, p: &DubovskyParams) -> f64 {
    -p.lambda * p.n * x * (x - 1.0) * (y - p.y_star)
}

/// Unchecked y right-hand side, see [`rhs_x_raw`].
#[inline]
pub(crate) fn rhs_y_raw(x: f64, y: f64, p: &DubovskyParams, f_value: f64) -> f64 {
    p.n * (1.0 - p.n) * y * y * (x - p.x_star) + f_value
}

/// External investment impulse `f(t)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Forcing {
    /// No forcing: f ≡ 0.
    Zero,
    /// Harmonic impulse `delta * cos(omega * t)`.
    Cosine { delta: f64, omega: f64 },
    /// Arbitrary samples, one per grid node; sample `j` is f(t_j). The table
    /// must cover every node the evaluation will touch.
    Tabulated { samples: Vec<f64> },
}

impl Forcing {
    /// Harmonic forcing with amplitude `delta >= 0` and frequency `omega > 0`.
    pub fn cosine(delta: f64, omega: f64) -> Result<Self> {
        if !delta.is_finite() || delta < 0.0 {
            return Err(Error::Config(format!(
                "delta must be nonnegative and finite, got {delta}"
            )));
        }
        if !omega.is_finite() || omega <= 0.0 {
            return Err(Error::Config(format!(
                "omega must be positive and finite, got {omega}"
            )));
        }
        Ok(Forcing::Cosine { delta, omega })
    }

    /// Tabulated forcing; every sample must be finite.
    pub fn tabulated(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Config(
                "tabulated forcing needs at least one sample".into(),
            ));
        }
        if let Some(bad) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::Config(format!(
                "tabulated forcing sample {bad} is not finite"
            )));
        }
        Ok(Forcing::Tabulated { samples })
    }

    /// Whether the forcing can ever be nonzero. A cosine with zero amplitude
    /// and an all-zero table count as inactive.
    pub fn is_active(&self) -> bool {
        match self {
            Forcing::Zero => false,
            Forcing::Cosine { delta, .. } => *delta != 0.0,
            Forcing::Tabulated { samples } => samples.iter().any(|&v| v != 0.0),
        }
    }

    /// Evaluates the forcing at time `t` = t_j for grid node `grid_index` = j.
    ///
    /// Analytic kinds use `t`; the tabulated kind uses `grid_index` and
    /// reports a configuration error when the table does not cover the node.
    pub fn eval(&self, t: f64, grid_index: usize) -> Result<f64> {
        match self {
            Forcing::Zero => Ok(0.0),
            Forcing::Cosine { delta, omega } => Ok(delta * (omega * t).cos()),
            Forcing::Tabulated { samples } => {
                samples.get(grid_index).copied().ok_or_else(|| {
                    Error::Config(format!(
                        "tabulated forcing has {} samples but node {} was requested",
                        samples.len(),
                        grid_index
                    ))
                })
            }
        }
    }
}

/// Starting state (x(0), y(0)) = (a, b). Always finite by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialConditions {
    a: f64,
    b: f64,
}

impl InitialConditions {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Config(format!(
                "initial conditions must be finite, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}
