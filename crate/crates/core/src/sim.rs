//! Explicit nonlocal time stepper producing full trajectories.
//!
//! On the uniform grid t_j = j·tau, j = 0..=N, the update for the system in
//! [`crate::model`] reads
//!
//! ```text
//! x_{j+1} = x_j (1 - (lambda n / A)(x_j - 1)(y_j - y_star))
//!           - Σ_{k=1..U} p_k (x_{j-k+1} - x_{j-k})
//! y_{j+1} = y_j (1 + (n (1 - n) / B) y_j (x_j - x_star))
//!           - Σ_{k=1..U} q_k (y_{j-k+1} - y_{j-k}) + s·f(t_j)
//! ```
//!
//! with `A`, `B` the scheme coefficients for the two orders, `p_k`, `q_k` the
//! memory weights (see [`crate::scheme`]), `U` the memory upper limit, and `s`
//! the forcing scale. The very first step is the same formula with an empty
//! memory sum. Two historical conventions are selectable via
//! [`SchemeOptions`]:
//!
//! * [`SumBound::Truncated`] (default) stops the memory sum at `U = j - 1`,
//!   dropping the single oldest increment; [`SumBound::FullHistory`] keeps
//!   `U = j`, the complete L1 memory.
//! * [`ForcingScale::Direct`] (default) adds the raw sample `f(t_j)` to the
//!   update; [`ForcingScale::Consistent`] adds `f(t_j) / B`, which is what a
//!   term-by-term discretization of the continuous system yields. With
//!   `Direct` the effective impulse per unit time grows as the grid is
//!   refined, so forced runs should compare grids with care.
//!
//! At order 1 the memory weights vanish and the update degenerates to the
//! explicit Euler step for the classical system — exactly, not just
//! asymptotically. If the state ever leaves the finite range (or exceeds
//! 1e12 in magnitude) stepping aborts with [`Error::BlowUp`].

use crate::error::{Error, Result};
use crate::model::{DubovskyParams, Forcing, InitialConditions};
use crate::scheme::{memory_weights, scheme_coefficient, FractionalOrder};

/// Pair of derivative orders (alpha for x, beta for y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrders {
    pub alpha: FractionalOrder,
    pub beta: FractionalOrder,
}

impl FractionalOrders {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        Ok(Self {
            alpha: FractionalOrder::new(alpha)
                .map_err(|e| prefix_error(e, "alpha"))?,
            beta: FractionalOrder::new(beta)
                .map_err(|e| prefix_error(e, "beta"))?,
        })
    }

    /// Both orders 1: the classical system.
    pub fn classical() -> Self {
        Self {
            alpha: FractionalOrder::classical(),
            beta: FractionalOrder::classical(),
        }
    }
}

fn prefix_error(e: Error, field: &str) -> Error {
    match e {
        Error::Domain(msg) => Error::Domain(format!("{field}: {msg}")),
        Error::Config(msg) => Error::Config(format!("{field}: {msg}")),
        other => other,
    }
}

/// Upper limit of the memory sum at step j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SumBound {
    /// Sum to k = j - 1: drops the single oldest increment. The default.
    #[default]
    Truncated,
    /// Sum to k = j: the complete L1 memory.
    FullHistory,
}

/// How the forcing sample enters the y update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ForcingScale {
    /// Add f(t_j) verbatim. The default.
    #[default]
    Direct,
    /// Add f(t_j) / B, the scale a term-by-term discretization yields.
    Consistent,
}

/// Scheme variant switches. The default reproduces the reference scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SchemeOptions {
    pub sum_bound: SumBound,
    pub forcing_scale: ForcingScale,
}

/// Uniform time grid: N steps of size T/N covering [0, T].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    total_time: f64,
    steps: usize,
}

impl GridSpec {
    pub fn new(total_time: f64, steps: usize) -> Result<Self> {
        if !total_time.is_finite() || total_time <= 0.0 {
            return Err(Error::Config(format!(
                "total time must be positive and finite, got {total_time}"
            )));
        }
        if steps < 2 {
            return Err(Error::Config(format!(
                "grid must have at least 2 steps, got {steps}"
            )));
        }
        Ok(Self { total_time, steps })
    }

    /// Builds the grid from a target step size; N = round(T / tau).
    pub fn from_step(total_time: f64, tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau <= 0.0 {
            return Err(Error::Config(format!(
                "step size must be positive and finite, got {tau}"
            )));
        }
        if !total_time.is_finite() || total_time <= 0.0 {
            return Err(Error::Config(format!(
                "total time must be positive and finite, got {total_time}"
            )));
        }
        let steps = (total_time / tau).round();
        if !(2.0..=1e9).contains(&steps) {
            return Err(Error::Config(format!(
                "step size {tau} over horizon {total_time} gives {steps} steps; \
                 need between 2 and 1e9"
            )));
        }
        Self::new(total_time, steps as usize)
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Step size T / N.
    pub fn tau(&self) -> f64 {
        self.total_time / self.steps as f64
    }

    /// Number of grid nodes, N + 1.
    pub fn node_count(&self) -> usize {
        self.steps + 1
    }
}

/// Everything that defines a run; stored alongside the trajectory so the
/// analysis stage can see how the data was produced.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSetup {
    pub params: DubovskyParams,
    pub orders: FractionalOrders,
    pub forcing: Forcing,
    pub initial: InitialConditions,
    pub grid: GridSpec,
    pub options: SchemeOptions,
}

/// A computed solution: node times and both state series, plus the setup
/// that produced them. All three vectors have the same length, times are
/// strictly increasing starting at 0, and every value is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    xs: Vec<f64>,
    ys: Vec<f64>,
    setup: SimulationSetup,
}

impl Trajectory {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn setup(&self) -> &SimulationSetup {
        &self.setup
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Rebuilds a trajectory from externally stored series (e.g. a CSV file).
    ///
    /// Requires at least 3 nodes, equal lengths, finite values, and a uniform
    /// grid starting at t = 0. The attached setup records only what can be
    /// recovered from the data (grid and initial state); the forcing is
    /// recorded as [`Forcing::Zero`] — callers that know better can steer the
    /// analysis via its options.
    pub fn from_series(times: Vec<f64>, xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if times.len() != xs.len() || times.len() != ys.len() {
            return Err(Error::Config(format!(
                "series lengths differ: {} times, {} x values, {} y values",
                times.len(),
                xs.len(),
                ys.len()
            )));
        }
        if times.len() < 3 {
            return Err(Error::Config(format!(
                "need at least 3 nodes to form a trajectory, got {}",
                times.len()
            )));
        }
        let total = *times.last().unwrap();
        if !total.is_finite() || total <= 0.0 {
            return Err(Error::Config(format!(
                "final time must be positive and finite, got {total}"
            )));
        }
        let steps = times.len() - 1;
        let tau = total / steps as f64;
        let tol = 1e-9 * total.max(1.0);
        for (j, &t) in times.iter().enumerate() {
            if !t.is_finite() || (t - j as f64 * tau).abs() > tol {
                return Err(Error::Config(format!(
                    "times are not a uniform grid starting at 0: node {j} has t = {t}, \
                     expected {}",
                    j as f64 * tau
                )));
            }
        }
        if let Some(bad) = xs.iter().chain(ys.iter()).position(|v| !v.is_finite()) {
            return Err(Error::Config(format!(
                "series contain a non-finite value (flat index {bad})"
            )));
        }
        let setup = SimulationSetup {
            params: DubovskyParams::default(),
            orders: FractionalOrders::classical(),
            forcing: Forcing::Zero,
            initial: InitialConditions::new(xs[0], ys[0])?,
            grid: GridSpec::new(total, steps)?,
            options: SchemeOptions::default(),
        };
        Ok(Self {
            times,
            xs,
            ys,
            setup,
        })
    }

    pub(crate) fn from_parts(
        times: Vec<f64>,
        xs: Vec<f64>,
        ys: Vec<f64>,
        setup: SimulationSetup,
    ) -> Self {
        Self {
            times,
            xs,
            ys,
            setup,
        }
    }
}

/// Magnitude beyond which the state counts as blown up even while finite.
pub const BLOW_UP_LIMIT: f64 = 1e12;

#[inline]
fn state_ok(v: f64) -> bool {
    v.is_finite() && v.abs() <= BLOW_UP_LIMIT
}

/// Runs the nonlocal explicit scheme over the whole grid.
///
/// Returns the full trajectory, or [`Error::BlowUp`] at the first step whose
/// result is non-finite or larger than [`BLOW_UP_LIMIT`] in magnitude. A
/// tabulated forcing must supply at least one sample per node that the run
/// evaluates (nodes 0..N-1).
pub fn simulate(
    params: DubovskyParams,
    orders: FractionalOrders,
    forcing: Forcing,
    initial: InitialConditions,
    grid: GridSpec,
    options: SchemeOptions,
) -> Result<Trajectory> {
    if let Forcing::Tabulated { samples } = &forcing {
        // The update for node j+1 reads f at node j, so N samples suffice,
        // but a full table of N+1 is the natural shape; accept either.
        if samples.len() < grid.steps() {
            return Err(Error::Config(format!(
                "tabulated forcing has {} samples but the grid has {} nodes",
                samples.len(),
                grid.node_count()
            )));
        }
    }

    let tau = grid.tau();
    let n_steps = grid.steps();
    let a_coeff = scheme_coefficient(orders.alpha, tau)?;
    let b_coeff = scheme_coefficient(orders.beta, tau)?;
    // Largest memory index ever used is U <= N - 1 in both conventions.
    let p_weights = memory_weights(orders.alpha, n_steps - 1);
    let q_weights = memory_weights(orders.beta, n_steps - 1);
    let p = p_weights.values();
    let q = q_weights.values();
    let x_has_memory = !orders.alpha.is_classical();
    let y_has_memory = !orders.beta.is_classical();

    let cx = params.lambda() * params.n() / a_coeff;
    let cy = params.n() * (1.0 - params.n()) / b_coeff;
    let f_scale = match options.forcing_scale {
        ForcingScale::Direct => 1.0,
        ForcingScale::Consistent => 1.0 / b_coeff,
    };

    let mut xs = Vec::with_capacity(n_steps + 1);
    let mut ys = Vec::with_capacity(n_steps + 1);
    xs.push(initial.a());
    ys.push(initial.b());

    for j in 0..n_steps {
        let upper = match options.sum_bound {
            SumBound::Truncated => j.saturating_sub(1),
            SumBound::FullHistory => j,
        };
        let mut mem_x = 0.0;
        if x_has_memory {
            for k in 1..=upper {
                mem_x += p[k - 1] * (xs[j - k + 1] - xs[j - k]);
            }
        }
        let mut mem_y = 0.0;
        if y_has_memory {
            for k in 1..=upper {
                mem_y += q[k - 1] * (ys[j - k + 1] - ys[j - k]);
            }
        }

        let f_j = forcing.eval(j as f64 * tau, j)?;
        let xj = xs[j];
        let yj = ys[j];
        let x_next = xj * (1.0 - cx * (xj - 1.0) * (yj - params.y_star())) - mem_x;
        let y_next =
            yj * (1.0 + cy * yj * (xj - params.x_star())) - mem_y + f_scale * f_j;

        if !state_ok(x_next) || !state_ok(y_next) {
            return Err(Error::BlowUp {
                step: j + 1,
                time: (j + 1) as f64 * tau,
                last_x: xj,
                last_y: yj,
            });
        }
        xs.push(x_next);
        ys.push(y_next);
    }

    let times = (0..=n_steps).map(|j| j as f64 * tau).collect();
    let setup = SimulationSetup {
        params,
        orders,
        forcing,
        initial,
        grid,
        options,
    };
    Ok(Trajectory::from_parts(times, xs, ys, setup))
}
