//! Parameter sweeps: run a grid of scenarios and tabulate the regimes.
//!
//! A sweep takes the base scenario from a [`ScenarioConfig`] and replaces the
//! fractional orders and/or the cosine forcing parameters with every
//! combination of the values listed in its `[sweep]` section. Points run in
//! parallel; the output rows keep the deterministic nested order
//! alpha → beta → delta → omega regardless of scheduling. A point whose
//! trajectory blows up is reported as `divergent` with empty metric columns
//! rather than failing the whole sweep.

use crate::config::{ForcingConfig, ScenarioConfig};
use crate::CliError;
use longwave::analysis::{classify_regime_with, RegimeReport};
use longwave::model::Forcing;
use longwave::sim::{simulate, FractionalOrders};
use longwave::Error;
use rayon::prelude::*;
use std::fmt::Write as _;

/// Header of the sweep result table.
pub const SWEEP_HEADER: &str =
    "alpha,beta,delta,omega,regime,dominant_period,secondary_period,amplitude_trend,closure_metric";

/// One grid point: the orders and cosine forcing used for a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    pub omega: f64,
}

/// Expands the sweep section of `cfg` into grid points in row order.
///
/// Axes that are not listed stay at the base scenario's value. Fails if the
/// config has no `[sweep]` section, or if it sweeps forcing amplitude or
/// frequency while the base scenario uses tabulated forcing (those axes only
/// make sense for cosine forcing).
pub fn sweep_points(cfg: &ScenarioConfig) -> Result<Vec<SweepPoint>, CliError> {
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Config("config has no [sweep] section".into()))?;

    let (base_delta, base_omega, tabulated) = match &cfg.forcing {
        ForcingConfig::Zero => (0.0, 1.0, false),
        ForcingConfig::Cosine { delta, omega } => (*delta, *omega, false),
        ForcingConfig::Tabulated { .. } => (0.0, 1.0, true),
    };
    if tabulated && (sweep.delta.is_some() || sweep.omega.is_some()) {
        return Err(CliError::Config(
            "cannot sweep delta or omega while the base forcing is tabulated; \
             use kind = \"cosine\" or \"zero\""
                .into(),
        ));
    }

    let one = |v: f64| vec![v];
    let alphas = sweep.alpha.clone().unwrap_or_else(|| one(cfg.alpha));
    let betas = sweep.beta.clone().unwrap_or_else(|| one(cfg.beta));
    let deltas = sweep.delta.clone().unwrap_or_else(|| one(base_delta));
    let omegas = sweep.omega.clone().unwrap_or_else(|| one(base_omega));

    let mut points = Vec::with_capacity(alphas.len() * betas.len() * deltas.len() * omegas.len());
    for &alpha in &alphas {
        for &beta in &betas {
            for &delta in &deltas {
                for &omega in &omegas {
                    points.push(SweepPoint {
                        alpha,
                        beta,
                        delta,
                        omega,
                    });
                }
            }
        }
    }
    Ok(points)
}

fn run_point(cfg: &ScenarioConfig, point: &SweepPoint) -> Result<Option<RegimeReport>, CliError> {
    let orders = FractionalOrders::new(point.alpha, point.beta)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let forcing = match &cfg.forcing {
        ForcingConfig::Tabulated { samples } => Forcing::tabulated(samples.clone()),
        _ if point.delta == 0.0 => Ok(Forcing::Zero),
        _ => Forcing::cosine(point.delta, point.omega),
    }
    .map_err(|e| CliError::Config(e.to_string()))?;

    let traj = match simulate(
        cfg.params()?,
        orders,
        forcing,
        cfg.initial()?,
        cfg.grid()?,
        cfg.scheme_options(),
    ) {
        Ok(t) => t,
        Err(Error::BlowUp { .. }) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let report = classify_regime_with(&traj, &cfg.analysis_options())
        .map_err(|e| CliError::Config(e.to_string()))?;
    Ok(Some(report))
}

fn push_field(row: &mut String, value: Option<f64>) {
    row.push(',');
    if let Some(v) = value {
        let _ = write!(row, "{v:?}");
    }
}

/// Runs every sweep point and renders the result table as CSV text.
pub fn run_sweep(cfg: &ScenarioConfig) -> Result<String, CliError> {
    let points = sweep_points(cfg)?;
    let reports: Vec<Option<RegimeReport>> = points
        .par_iter()
        .map(|p| run_point(cfg, p))
        .collect::<Result<_, _>>()?;

    let mut out = String::with_capacity(64 * points.len());
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for (point, report) in points.iter().zip(&reports) {
        let mut row = format!(
            "{:?},{:?},{:?},{:?}",
            point.alpha, point.beta, point.delta, point.omega
        );
        match report {
            Some(r) => {
                let _ = write!(row, ",{}", r.regime);
                push_field(&mut row, r.dominant_period);
                push_field(&mut row, r.secondary_period);
                push_field(&mut row, r.amplitude_trend);
                push_field(&mut row, r.closure_metric);
            }
            None => row.push_str(",divergent,,,,"),
        }
        out.push_str(&row);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{parse_config, preset, SweepConfig};

    fn short_base() -> ScenarioConfig {
        let mut cfg = preset("fig4").unwrap();
        cfg.total_time = 40.0;
        cfg.steps = 800;
        cfg
    }

    #[test]
    fn needs_a_sweep_section() {
        let cfg = preset("fig1").unwrap();
        let err = run_sweep(&cfg).unwrap_err();
        assert!(err.to_string().contains("no [sweep] section"), "{err}");
    }

    #[test]
    fn points_enumerate_in_nested_order() {
        let mut cfg = short_base();
        cfg.sweep = Some(SweepConfig {
            alpha: Some(vec![0.8, 1.0]),
            beta: None,
            delta: Some(vec![0.0, 0.5]),
            omega: None,
        });
        let points = sweep_points(&cfg).unwrap();
        assert_eq!(points.len(), 4);
        assert_eq!((points[0].alpha, points[0].delta), (0.8, 0.0));
        assert_eq!((points[1].alpha, points[1].delta), (0.8, 0.5));
        assert_eq!((points[2].alpha, points[2].delta), (1.0, 0.0));
        assert_eq!((points[3].alpha, points[3].delta), (1.0, 0.5));
        // Unswept axes inherit the base scenario (fig4 forcing is cosine
        // with omega = 2).
        assert_eq!(points[0].beta, cfg.beta);
        assert_eq!(points[0].omega, 2.0);
    }

    #[test]
    fn tabulated_base_rejects_forcing_axes() {
        let text = r#"
            T = 10.0
            N = 100
            [forcing]
            kind = "tabulated"
            samples = [0.0, 0.1, 0.2]
            [sweep]
            delta = [0.1, 0.2]
        "#;
        // Samples shorter than the grid would fail later at simulate time;
        // the sweep-axis check fires first at expansion time.
        let cfg = parse_config(text).unwrap();
        let err = sweep_points(&cfg).unwrap_err();
        assert!(err.to_string().contains("tabulated"), "{err}");
    }

    #[test]
    fn table_has_header_and_one_row_per_point() {
        let mut cfg = short_base();
        cfg.sweep = Some(SweepConfig {
            alpha: Some(vec![0.8, 0.9, 1.0]),
            beta: None,
            delta: None,
            omega: None,
        });
        let table = run_sweep(&cfg).unwrap();
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines[0], SWEEP_HEADER);
        assert_eq!(lines.len(), 4);
        for line in &lines[1..] {
            assert_eq!(line.matches(',').count(), 8, "9 columns in {line:?}");
            // Orders echo back in column 1 and the regime column is filled.
            let regime = line.split(',').nth(4).unwrap();
            assert!(!regime.is_empty());
        }
        assert!(lines[1].starts_with("0.8,"));
        assert!(lines[3].starts_with("1.0,"));
    }

    #[test]
    fn rows_are_deterministic_across_runs() {
        let mut cfg = short_base();
        cfg.sweep = Some(SweepConfig {
            alpha: Some(vec![0.7, 1.0]),
            beta: Some(vec![0.6, 1.0]),
            delta: None,
            omega: None,
        });
        assert_eq!(run_sweep(&cfg).unwrap(), run_sweep(&cfg).unwrap());
    }

    #[test]
    fn blow_up_points_become_divergent_rows() {
        // An enormous forcing amplitude drives the state past the overflow
        // guard almost immediately.
        let mut cfg = short_base();
        cfg.sweep = Some(SweepConfig {
            alpha: None,
            beta: None,
            delta: Some(vec![0.5, 1e9]),
            omega: None,
        });
        let table = run_sweep(&cfg).unwrap();
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 3);
        let last = lines[2];
        assert!(last.contains(",divergent,"), "{last}");
        assert!(last.ends_with(",,,,"), "empty metrics in {last:?}");
    }
}
