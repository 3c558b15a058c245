//! Independent reference computations used to validate the main solver.
//!
//! Nothing here shares code with the production stepper in [`crate::sim`]:
//!
//! * [`rk4_integer_limit`] integrates the classical (order-1) system with a
//!   fourth-order Runge-Kutta method, giving a near-exact reference that the
//!   first-order scheme must converge to as the step shrinks.
//! * [`caputo_l1_apply`] applies the discrete fractional-derivative operator
//!   to an arbitrary sampled function, so the operator itself can be checked
//!   against closed forms (it is exact on linear functions, and degenerates
//!   to plain backward differences at order 1).
//! * [`convergence_order`] measures the empirical order of accuracy of the
//!   solver against a reference trajectory over a sequence of halved steps.

use crate::error::{Error, Result};
use crate::model::{DubovskyParams, Forcing, InitialConditions};
use crate::scheme::{memory_weights, scheme_coefficient, FractionalOrder};
use crate::sim::{
    simulate, FractionalOrders, GridSpec, SchemeOptions, SimulationSetup, Trajectory,
    BLOW_UP_LIMIT,
};

#[inline]
fn state_ok(v: f64) -> bool {
    v.is_finite() && v.abs() <= BLOW_UP_LIMIT
}

/// Classical RK4 over the system x' = fx(t, x, y), y' = fy(t, x, y).
fn rk4_core(
    fx: impl Fn(f64, f64, f64) -> f64,
    fy: impl Fn(f64, f64, f64) -> f64,
    x0: f64,
    y0: f64,
    grid: GridSpec,
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let tau = grid.tau();
    let n = grid.steps();
    let mut xs = Vec::with_capacity(n + 1);
    let mut ys = Vec::with_capacity(n + 1);
    xs.push(x0);
    ys.push(y0);
    for j in 0..n {
        let t = j as f64 * tau;
        let x = xs[j];
        let y = ys[j];
        let k1x = fx(t, x, y);
        let k1y = fy(t, x, y);
        let th = t + tau / 2.0;
        let k2x = fx(th, x + tau / 2.0 * k1x, y + tau / 2.0 * k1y);
        let k2y = fy(th, x + tau / 2.0 * k1x, y + tau / 2.0 * k1y);
        let k3x = fx(th, x + tau / 2.0 * k2x, y + tau / 2.0 * k2y);
        let k3y = fy(th, x + tau / 2.0 * k2x, y + tau / 2.0 * k2y);
        let tf = t + tau;
        let k4x = fx(tf, x + tau * k3x, y + tau * k3y);
        let k4y = fy(tf, x + tau * k3x, y + tau * k3y);
        let x_next = x + tau / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        let y_next = y + tau / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        if !state_ok(x_next) || !state_ok(y_next) {
            return Err(Error::BlowUp {
                step: j + 1,
                time: tf,
                last_x: x,
                last_y: y,
            });
        }
        xs.push(x_next);
        ys.push(y_next);
    }
    let times = (0..=n).map(|j| j as f64 * tau).collect();
    Ok((times, xs, ys))
}

/// Forcing value at an arbitrary (stage) time. Analytic kinds evaluate
/// directly; a tabulated kind is interpolated linearly between grid nodes.
fn forcing_at(forcing: &Forcing, t: f64, tau: f64) -> f64 {
    match forcing {
        Forcing::Zero => 0.0,
        Forcing::Cosine { delta, omega } => delta * (omega * t).cos(),
        Forcing::Tabulated { samples } => {
            let u = (t / tau).max(0.0);
            let mut i0 = u.floor() as usize;
            if i0 >= samples.len() - 1 {
                i0 = samples.len() - 2;
            }
            let frac = (u - i0 as f64).clamp(0.0, 1.0);
            samples[i0] + frac * (samples[i0 + 1] - samples[i0])
        }
    }
}

/// Integrates the classical (both orders = 1) system with RK4.
///
/// This is the integer-order limit the fractional solver must approach: at
/// alpha = beta = 1 the memory vanishes and the model is an ordinary ODE
/// system, which RK4 solves to fourth-order accuracy — effectively exactly,
/// next to the first-order main scheme. A tabulated forcing must cover every
/// grid node; stage values between nodes are interpolated linearly.
pub fn rk4_integer_limit(
    params: DubovskyParams,
    forcing: &Forcing,
    initial: InitialConditions,
    grid: GridSpec,
) -> Result<Trajectory> {
    if let Forcing::Tabulated { samples } = forcing {
        if samples.len() < grid.node_count() {
            return Err(Error::Config(format!(
                "tabulated forcing has {} samples but the grid has {} nodes",
                samples.len(),
                grid.node_count()
            )));
        }
    }
    let tau = grid.tau();
    let (times, xs, ys) = rk4_core(
        |_, x, y| crate::model::rhs_x_raw(x, y, &params),
        |t, x, y| crate::model::rhs_y_raw(x, y, &params, forcing_at(forcing, t, tau)),
        initial.a(),
        initial.b(),
        grid,
    )?;
    let setup = SimulationSetup {
        params,
        orders: FractionalOrders::classical(),
        forcing: forcing.clone(),
        initial,
        grid,
        options: SchemeOptions::default(),
    };
    Ok(Trajectory::from_parts(times, xs, ys, setup))
}

/// Applies the discrete fractional-derivative operator (full history) to a
/// sampled function.
///
/// Node 0 gets 0 (the underlying integral over an empty interval). At
/// order 1 the result is the plain backward difference — computed literally
/// as `(u_j - u_{j-1}) / tau`, so the classical limit is exact to the bit.
pub fn caputo_l1_apply(samples: &[f64], order: FractionalOrder, tau: f64) -> Result<Vec<f64>> {
    if samples.len() < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 samples to apply the operator, got {}",
            samples.len()
        )));
    }
    if !tau.is_finite() || tau <= 0.0 {
        return Err(Error::Domain(format!(
            "step size must be positive and finite, got {tau}"
        )));
    }
    if let Some(bad) = samples.iter().position(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("sample {bad} is not finite")));
    }

    let m = samples.len() - 1;
    let mut out = Vec::with_capacity(samples.len());
    out.push(0.0);

    if order.is_classical() {
        for j in 1..=m {
            out.push((samples[j] - samples[j - 1]) / tau);
        }
        return Ok(out);
    }

    let a = scheme_coefficient(order, tau)?;
    let weights = memory_weights(order, m.saturating_sub(1));
    let w = weights.values();
    for j in 1..=m {
        let mut acc = samples[j] - samples[j - 1];
        for k in 1..j {
            acc += w[k - 1] * (samples[j - k] - samples[j - k - 1]);
        }
        out.push(a * acc);
    }
    Ok(out)
}

/// Largest pointwise distance between two trajectories on their shared nodes.
///
/// The grids must be nested: one step count a multiple of the other, same
/// horizon. The distance at a node is max(|dx|, |dy|).
pub fn grid_sup_distance(a: &Trajectory, b: &Trajectory) -> Result<f64> {
    let (coarse, fine) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let nc = coarse.len() - 1;
    let nf = fine.len() - 1;
    if nc == 0 || nf % nc != 0 {
        return Err(Error::Config(format!(
            "grids are not nested: {nc} vs {nf} steps"
        )));
    }
    let t_c = *coarse.times().last().unwrap();
    let t_f = *fine.times().last().unwrap();
    let tol = 1e-9 * t_c.abs().max(1.0);
    if (t_c - t_f).abs() > tol {
        return Err(Error::Config(format!(
            "horizons differ: {t_c} vs {t_f}"
        )));
    }
    let m = nf / nc;
    let mut sup = 0.0f64;
    for i in 0..=nc {
        if (coarse.times()[i] - fine.times()[i * m]).abs() > tol {
            return Err(Error::Config(format!(
                "grid nodes do not line up at index {i}"
            )));
        }
        let dx = (coarse.xs()[i] - fine.xs()[i * m]).abs();
        let dy = (coarse.ys()[i] - fine.ys()[i * m]).abs();
        sup = sup.max(dx.max(dy));
    }
    Ok(sup)
}

/// Empirical order of accuracy of the main solver against a reference.
///
/// Reruns `base` (same model, orders, forcing, options, horizon) on each
/// step size in `taus` — at least 3 values, each half the previous — and
/// fits the slope of log error vs log step against the reference trajectory.
/// Errors at the rounding floor (≤ 1e-13) leave the order undefined, as does
/// a blow-up at any step size (the blow-up is reported as-is).
pub fn convergence_order(
    base: &SimulationSetup,
    taus: &[f64],
    reference: &Trajectory,
) -> Result<f64> {
    if taus.len() < 3 {
        return Err(Error::Domain(format!(
            "need at least 3 step sizes, got {}",
            taus.len()
        )));
    }
    for pair in taus.windows(2) {
        if !(pair[1] > 0.0 && pair[0].is_finite()) {
            return Err(Error::Domain(format!(
                "step sizes must be positive and finite, got {} and {}",
                pair[0], pair[1]
            )));
        }
        if (pair[1] - pair[0] / 2.0).abs() > 1e-9 * pair[0] {
            return Err(Error::Domain(format!(
                "step sizes must halve: {} does not follow {}",
                pair[1], pair[0]
            )));
        }
    }
    let total = base.grid.total_time();
    let mut points = Vec::with_capacity(taus.len());
    for &tau in taus {
        let grid = GridSpec::from_step(total, tau)?;
        let traj = simulate(
            base.params,
            base.orders,
            base.forcing.clone(),
            base.initial,
            grid,
            base.options,
        )?;
        let err = grid_sup_distance(&traj, reference)?;
        if err <= 1e-13 {
            return Err(Error::Domain(format!(
                "error {err:e} at step {tau} is at the rounding floor; order undefined"
            )));
        }
        points.push((tau.ln(), err.ln()));
    }
    Ok(ls_slope(&points))
}

/// Least-squares slope of y against x.
fn ls_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for &(x, y) in points {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Forcing;
    use crate::sim::SchemeOptions;

    #[test]
    fn rk4_linear_decay_has_fourth_order_accuracy() {
        // x' = -x, x(0) = 1: x(1) = 1/e. RK4's true defect at tau = 0.05 is
        // about 2e-8 (h^5/120 per step across 20 steps); at tau = 0.025 it
        // drops 16-fold and passes 1e-8 with room.
        let exact = (-1.0f64).exp();
        for (steps, bound) in [(20usize, 5e-8), (40, 1e-8)] {
            let grid = GridSpec::new(1.0, steps).unwrap();
            let (_, xs, _) =
                rk4_core(|_, x, _| -x, |_, _, y| -y, 1.0, 1.0, grid).unwrap();
            let err = (xs[steps] - exact).abs();
            assert!(err <= bound, "{steps} steps: error {err:e} > {bound:e}");
        }
    }

    #[test]
    fn rk4_equilibrium_is_fixed() {
        let p = DubovskyParams::default();
        let traj = rk4_integer_limit(
            p,
            &Forcing::Zero,
            InitialConditions::new(p.x_star(), p.y_star()).unwrap(),
            GridSpec::new(20.0, 400).unwrap(),
        )
        .unwrap();
        assert!(traj.xs().iter().all(|&v| v == p.x_star()));
        assert!(traj.ys().iter().all(|&v| v == p.y_star()));
    }

    #[test]
    fn rk4_tabulated_ramp_matches_analytic_ramp() {
        // Linear interpolation is exact on a linear table, so a tabulated
        // ramp forcing must reproduce the closed-form ramp exactly (up to
        // accumulation roundoff).
        let p = DubovskyParams::default();
        let grid = GridSpec::new(5.0, 100).unwrap();
        let tau = grid.tau();
        let samples: Vec<f64> = (0..=grid.steps()).map(|j| 0.3 * (j as f64 * tau)).collect();
        let tab = rk4_integer_limit(
            p,
            &Forcing::tabulated(samples).unwrap(),
            InitialConditions::new(1.35, 0.5).unwrap(),
            grid,
        )
        .unwrap();
        let (_, xs, ys) = rk4_core(
            |_, x, y| crate::model::rhs_x_raw(x, y, &p),
            |t, x, y| crate::model::rhs_y_raw(x, y, &p, 0.3 * t),
            1.35,
            0.5,
            grid,
        )
        .unwrap();
        for j in 0..=grid.steps() {
            assert!((tab.xs()[j] - xs[j]).abs() <= 1e-12);
            assert!((tab.ys()[j] - ys[j]).abs() <= 1e-12);
        }
    }

    #[test]
    fn caputo_classical_order_is_backward_difference_exactly() {
        let tau = 0.1;
        let samples: Vec<f64> = (0..=50).map(|j| (0.3 * j as f64 * tau).sin()).collect();
        let out = caputo_l1_apply(&samples, FractionalOrder::classical(), tau).unwrap();
        assert_eq!(out[0], 0.0);
        for j in 1..samples.len() {
            let expected = (samples[j] - samples[j - 1]) / tau;
            assert_eq!(out[j], expected, "node {j}");
        }
    }

    #[test]
    fn caputo_is_exact_on_linear_functions() {
        // For u(t) = c t the operator gives exactly c t_j^{1-m} / Γ(2-m):
        // every increment is c tau and the weighted sum telescopes.
        let tau = 0.05;
        let order = FractionalOrder::new(0.6).unwrap();
        let c = 1.7;
        let samples: Vec<f64> = (0..=100).map(|j| c * j as f64 * tau).collect();
        let out = caputo_l1_apply(&samples, order, tau).unwrap();
        let g = crate::scheme::gamma_eval(2.0 - 0.6).unwrap();
        for j in 1..samples.len() {
            let t = j as f64 * tau;
            let expected = c * t.powf(1.0 - 0.6) / g;
            let rel = ((out[j] - expected) / expected).abs();
            assert!(rel <= 1e-12, "node {j}: rel {rel:e}");
        }
    }

    #[test]
    fn caputo_is_linear() {
        let tau = 0.1;
        let order = FractionalOrder::new(0.8).unwrap();
        let u: Vec<f64> = (0..=60).map(|j| (0.4 * j as f64).sin()).collect();
        let v: Vec<f64> = (0..=60).map(|j| (0.15 * j as f64).cos() + 0.2).collect();
        let combo: Vec<f64> = u
            .iter()
            .zip(&v)
            .map(|(a, b)| 2.5 * a - 1.25 * b)
            .collect();
        let lu = caputo_l1_apply(&u, order, tau).unwrap();
        let lv = caputo_l1_apply(&v, order, tau).unwrap();
        let lc = caputo_l1_apply(&combo, order, tau).unwrap();
        for j in 0..lc.len() {
            let expected = 2.5 * lu[j] - 1.25 * lv[j];
            assert!((lc[j] - expected).abs() <= 1e-12, "node {j}");
        }
    }

    #[test]
    fn caputo_validates_input() {
        let order = FractionalOrder::new(0.5).unwrap();
        assert!(caputo_l1_apply(&[1.0], order, 0.1).is_err());
        assert!(caputo_l1_apply(&[1.0, 2.0], order, 0.0).is_err());
        assert!(caputo_l1_apply(&[1.0, f64::NAN, 2.0], order, 0.1).is_err());
    }

    #[test]
    fn convergence_order_near_one_for_classical_scheme() {
        let p = DubovskyParams::default();
        let ic = InitialConditions::new(1.35, 0.5).unwrap();
        let base = SimulationSetup {
            params: p,
            orders: FractionalOrders::classical(),
            forcing: Forcing::Zero,
            initial: ic,
            grid: GridSpec::new(10.0, 100).unwrap(),
            options: SchemeOptions::default(),
        };
        let reference =
            rk4_integer_limit(p, &Forcing::Zero, ic, GridSpec::new(10.0, 3200).unwrap()).unwrap();
        let order = convergence_order(&base, &[0.1, 0.05, 0.025], &reference).unwrap();
        assert!((0.8..=1.2).contains(&order), "order {order}");
    }

    #[test]
    fn convergence_order_validates_step_sequence() {
        let p = DubovskyParams::default();
        let ic = InitialConditions::new(1.35, 0.5).unwrap();
        let base = SimulationSetup {
            params: p,
            orders: FractionalOrders::classical(),
            forcing: Forcing::Zero,
            initial: ic,
            grid: GridSpec::new(10.0, 100).unwrap(),
            options: SchemeOptions::default(),
        };
        let reference =
            rk4_integer_limit(p, &Forcing::Zero, ic, GridSpec::new(10.0, 800).unwrap()).unwrap();
        // Too few steps.
        assert!(convergence_order(&base, &[0.1, 0.05], &reference).is_err());
        // Not halving.
        assert!(convergence_order(&base, &[0.1, 0.05, 0.03], &reference).is_err());
    }

    #[test]
    fn convergence_order_undefined_at_rounding_floor() {
        // Starting at the equilibrium both solver and reference are exactly
        // constant, so every error is zero and no order can be measured.
        let p = DubovskyParams::default();
        let ic = InitialConditions::new(p.x_star(), p.y_star()).unwrap();
        let base = SimulationSetup {
            params: p,
            orders: FractionalOrders::classical(),
            forcing: Forcing::Zero,
            initial: ic,
            grid: GridSpec::new(10.0, 100).unwrap(),
            options: SchemeOptions::default(),
        };
        let reference =
            rk4_integer_limit(p, &Forcing::Zero, ic, GridSpec::new(10.0, 800).unwrap()).unwrap();
        let err = convergence_order(&base, &[0.1, 0.05, 0.025], &reference).unwrap_err();
        assert!(err.to_string().contains("order undefined"), "{err}");
    }

    #[test]
    fn sup_distance_requires_nested_grids() {
        let p = DubovskyParams::default();
        let ic = InitialConditions::new(1.35, 0.5).unwrap();
        let a = rk4_integer_limit(p, &Forcing::Zero, ic, GridSpec::new(10.0, 100).unwrap())
            .unwrap();
        let b = rk4_integer_limit(p, &Forcing::Zero, ic, GridSpec::new(10.0, 150).unwrap())
            .unwrap();
        assert!(grid_sup_distance(&a, &b).is_err());
        let c = rk4_integer_limit(p, &Forcing::Zero, ic, GridSpec::new(10.0, 200).unwrap())
            .unwrap();
        let d = grid_sup_distance(&a, &c).unwrap();
        assert!(d >= 0.0 && d < 1.0, "distance {d}");
    }
}
