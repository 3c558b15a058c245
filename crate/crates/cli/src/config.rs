//! Scenario configuration: TOML parsing, bundled presets, serialization.
//!
//! A scenario file is flat TOML with optional `[forcing]`, `[analysis]`, and
//! `[sweep]` tables. Every key is optional; omitted keys take the defaults
//! below (or the preset's values when `preset = "<name>"` is given). Unknown
//! keys are rejected, as are contradictory ones (`N` together with `tau`).
//!
//! ```text
//! preset = "fig5"        # start from a bundled scenario, then override
//! name = "my-run"        # label used for output file names
//! n = 0.2                # savings rate, in (0,1)
//! lambda = 2.25          # reaction amplitude, > 0
//! x_star = 1.3           # equilibrium of x
//! y_star = 0.5           # equilibrium of y
//! alpha = 0.8            # derivative order of x, in (0,1]
//! beta = 0.6             # derivative order of y, in (0,1]
//! a = 1.35               # x(0)
//! b = 0.5                # y(0)
//! T = 250.0              # time horizon, > 0
//! N = 5000               # number of steps (or tau = 0.05, not both)
//! sum_bound = "truncated"       # or "full_history"
//! forcing_scale = "direct"      # or "consistent"
//! out_dir = "out"
//!
//! [forcing]
//! kind = "cosine"        # "zero" | "cosine" | "tabulated"
//! delta = 0.5            # cosine amplitude, >= 0
//! omega = 2.0            # cosine frequency, > 0
//! # samples = [0.0, ...] # for kind = "tabulated": one value per grid node
//!
//! [analysis]             # classifier thresholds, see AnalysisOptions
//! settle_fraction = 0.5
//!
//! [sweep]                # value lists for the sweep subcommand
//! alpha = [0.7, 0.8, 1.0]
//! ```

use longwave::analysis::AnalysisOptions;
use longwave::error::{Error, Result};
use longwave::model::{DubovskyParams, Forcing, InitialConditions};
use longwave::sim::{ForcingScale, FractionalOrders, GridSpec, SchemeOptions, SumBound};
use serde::Deserialize;
use std::fmt::Write as _;

/// A fully resolved, validated scenario. Field semantics match the config
/// keys documented at module level.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub name: Option<String>,
    pub n: f64,
    pub lambda: f64,
    pub x_star: f64,
    pub y_star: f64,
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
    pub total_time: f64,
    pub steps: usize,
    pub sum_bound: SumBound,
    pub forcing_scale: ForcingScale,
    pub forcing: ForcingConfig,
    pub analysis: AnalysisConfig,
    pub out_dir: Option<String>,
    pub sweep: Option<SweepConfig>,
}

/// Serializable mirror of [`Forcing`].
#[derive(Debug, Clone, PartialEq)]
pub enum ForcingConfig {
    Zero,
    Cosine { delta: f64, omega: f64 },
    Tabulated { samples: Vec<f64> },
}

impl ForcingConfig {
    pub fn kind_token(&self) -> &'static str {
        match self {
            ForcingConfig::Zero => "zero",
            ForcingConfig::Cosine { .. } => "cosine",
            ForcingConfig::Tabulated { .. } => "tabulated",
        }
    }

    pub fn to_forcing(&self) -> Result<Forcing> {
        match self {
            ForcingConfig::Zero => Ok(Forcing::Zero),
            ForcingConfig::Cosine { delta, omega } => Forcing::cosine(*delta, *omega),
            ForcingConfig::Tabulated { samples } => Forcing::tabulated(samples.clone()),
        }
    }

    /// Compact human-readable description, e.g. `0.5*cos(2t)`.
    pub fn describe(&self) -> String {
        match self {
            ForcingConfig::Zero => "none".into(),
            ForcingConfig::Cosine { delta, omega } if *delta == 0.0 => "none".into(),
            ForcingConfig::Cosine { delta, omega } => format!("{delta:?}*cos({omega:?}t)"),
            ForcingConfig::Tabulated { samples } => format!("table[{}]", samples.len()),
        }
    }
}

/// Classifier thresholds as stored in a config file (flattened bands).
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub settle_fraction: f64,
    pub center_low: f64,
    pub center_high: f64,
    pub focus_trend_max: f64,
    pub divergent_trend: f64,
    pub limit_cycle_low: f64,
    pub limit_cycle_high: f64,
    pub closure_fraction: f64,
    pub two_tone_gap_ratio: f64,
    pub envelope_min_modulation: f64,
    pub peak_min_separation: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        let o = AnalysisOptions::default();
        Self {
            settle_fraction: o.settle_fraction,
            center_low: o.center_band.0,
            center_high: o.center_band.1,
            focus_trend_max: o.focus_trend_max,
            divergent_trend: o.divergent_trend,
            limit_cycle_low: o.limit_cycle_band.0,
            limit_cycle_high: o.limit_cycle_band.1,
            closure_fraction: o.closure_fraction,
            two_tone_gap_ratio: o.two_tone_gap_ratio,
            envelope_min_modulation: o.envelope_min_modulation,
            peak_min_separation: o.peak_min_separation,
        }
    }
}

impl AnalysisConfig {
    pub fn to_options(&self) -> AnalysisOptions {
        AnalysisOptions {
            settle_fraction: self.settle_fraction,
            center_band: (self.center_low, self.center_high),
            focus_trend_max: self.focus_trend_max,
            divergent_trend: self.divergent_trend,
            limit_cycle_band: (self.limit_cycle_low, self.limit_cycle_high),
            closure_fraction: self.closure_fraction,
            two_tone_gap_ratio: self.two_tone_gap_ratio,
            envelope_min_modulation: self.envelope_min_modulation,
            peak_min_separation: self.peak_min_separation,
            assume_forced: None,
        }
    }
}

/// Value lists for the sweep subcommand; absent axes reuse the base value.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepConfig {
    pub alpha: Option<Vec<f64>>,
    pub beta: Option<Vec<f64>>,
    pub delta: Option<Vec<f64>>,
    pub omega: Option<Vec<f64>>,
}

impl SweepConfig {
    /// Number of rows the sweep will produce (Cartesian product).
    pub fn row_count(&self) -> usize {
        let len = |v: &Option<Vec<f64>>| v.as_ref().map_or(1, Vec::len);
        len(&self.alpha) * len(&self.beta) * len(&self.delta) * len(&self.omega)
    }
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            name: None,
            n: 0.2,
            lambda: 2.25,
            x_star: 1.3,
            y_star: 0.5,
            alpha: 1.0,
            beta: 1.0,
            a: 1.35,
            b: 0.5,
            total_time: 250.0,
            steps: 5000,
            sum_bound: SumBound::default(),
            forcing_scale: ForcingScale::default(),
            forcing: ForcingConfig::Zero,
            analysis: AnalysisConfig::default(),
            out_dir: None,
            sweep: None,
        }
    }
}

/// Names of the bundled scenarios, in presentation order.
pub const PRESET_NAMES: [&str; 6] = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6"];

/// Returns a bundled scenario by name.
///
/// All six share the reference parameters (n = 0.2, lambda = 2.25,
/// equilibrium (1.3, 0.5), start (1.35, 0.5), T = 250, N = 5000) and differ
/// in derivative orders and forcing.
pub fn preset(name: &str) -> Result<ScenarioConfig> {
    let base = ScenarioConfig {
        name: Some(name.to_string()),
        ..Default::default()
    };
    let cfg = match name {
        "fig1" => base,
        "fig2" => ScenarioConfig {
            forcing: ForcingConfig::Cosine {
                delta: 0.01,
                omega: 1.0,
            },
            ..base
        },
        "fig3" => ScenarioConfig {
            alpha: 0.8,
            beta: 1.0,
            ..base
        },
        "fig4" => ScenarioConfig {
            alpha: 0.8,
            beta: 0.6,
            forcing: ForcingConfig::Cosine {
                delta: 0.5,
                omega: 2.0,
            },
            ..base
        },
        "fig5" => ScenarioConfig {
            alpha: 0.8,
            beta: 0.8,
            forcing: ForcingConfig::Cosine {
                delta: 0.5,
                omega: 2.0,
            },
            ..base
        },
        "fig6" => ScenarioConfig {
            alpha: 0.1,
            beta: 0.1,
            forcing: ForcingConfig::Cosine {
                delta: 0.5,
                omega: 2.0,
            },
            ..base
        },
        other => {
            return Err(Error::Config(format!(
                "unknown preset \"{other}\"; valid presets are {}",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    Ok(cfg)
}

/// One-line description of what each bundled scenario shows.
pub fn preset_description(name: &str) -> &'static str {
    match name {
        "fig1" => "classical orders, unforced: closed orbits (center)",
        "fig2" => "classical orders, weak forcing: two-scale cycles",
        "fig3" => "memory in x, unforced: damped spiral (stable focus)",
        "fig4" => "strong memory, forced: growth onto a limit cycle",
        "fig5" => "memory in both variables, forced: limit cycle",
        "fig6" => "near-total memory, forced: limit cycle",
        _ => "",
    }
}

// ---------------------------------------------------------------------------
// Raw deserialization layer
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    preset: Option<String>,
    name: Option<String>,
    n: Option<f64>,
    lambda: Option<f64>,
    x_star: Option<f64>,
    y_star: Option<f64>,
    alpha: Option<f64>,
    beta: Option<f64>,
    a: Option<f64>,
    b: Option<f64>,
    #[serde(rename = "T")]
    total_time: Option<f64>,
    #[serde(rename = "N")]
    steps: Option<u64>,
    tau: Option<f64>,
    sum_bound: Option<String>,
    forcing_scale: Option<String>,
    out_dir: Option<String>,
    forcing: Option<RawForcing>,
    analysis: Option<RawAnalysis>,
    sweep: Option<RawSweep>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForcing {
    kind: Option<String>,
    delta: Option<f64>,
    omega: Option<f64>,
    samples: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAnalysis {
    settle_fraction: Option<f64>,
    center_low: Option<f64>,
    center_high: Option<f64>,
    focus_trend_max: Option<f64>,
    divergent_trend: Option<f64>,
    limit_cycle_low: Option<f64>,
    limit_cycle_high: Option<f64>,
    closure_fraction: Option<f64>,
    two_tone_gap_ratio: Option<f64>,
    envelope_min_modulation: Option<f64>,
    peak_min_separation: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    alpha: Option<Vec<f64>>,
    beta: Option<Vec<f64>>,
    delta: Option<Vec<f64>>,
    omega: Option<Vec<f64>>,
}

fn parse_sum_bound(s: &str) -> Result<SumBound> {
    match s {
        "truncated" => Ok(SumBound::Truncated),
        "full_history" => Ok(SumBound::FullHistory),
        other => Err(Error::Config(format!(
            "sum_bound must be \"truncated\" or \"full_history\", got \"{other}\""
        ))),
    }
}

fn sum_bound_token(v: SumBound) -> &'static str {
    match v {
        SumBound::Truncated => "truncated",
        SumBound::FullHistory => "full_history",
    }
}

fn parse_forcing_scale(s: &str) -> Result<ForcingScale> {
    match s {
        "direct" => Ok(ForcingScale::Direct),
        "consistent" => Ok(ForcingScale::Consistent),
        other => Err(Error::Config(format!(
            "forcing_scale must be \"direct\" or \"consistent\", got \"{other}\""
        ))),
    }
}

fn forcing_scale_token(v: ForcingScale) -> &'static str {
    match v {
        ForcingScale::Direct => "direct",
        ForcingScale::Consistent => "consistent",
    }
}

/// Parses and validates a scenario config from TOML text.
///
/// Syntax errors carry the line/column from the TOML parser; constraint
/// violations name the offending field and its bound.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let raw: RawConfig = toml::from_str(text)
        .map_err(|e| Error::Config(format!("config parse error: {e}")))?;

    let mut cfg = match &raw.preset {
        Some(name) => preset(name)?,
        None => ScenarioConfig::default(),
    };

    if raw.name.is_some() {
        cfg.name = raw.name.clone();
    }
    if let Some(v) = raw.n {
        cfg.n = v;
    }
    if let Some(v) = raw.lambda {
        cfg.lambda = v;
    }
    if let Some(v) = raw.x_star {
        cfg.x_star = v;
    }
    if let Some(v) = raw.y_star {
        cfg.y_star = v;
    }
    if let Some(v) = raw.alpha {
        cfg.alpha = v;
    }
    if let Some(v) = raw.beta {
        cfg.beta = v;
    }
    if let Some(v) = raw.a {
        cfg.a = v;
    }
    if let Some(v) = raw.b {
        cfg.b = v;
    }
    if let Some(v) = raw.total_time {
        cfg.total_time = v;
    }

    match (raw.steps, raw.tau) {
        (Some(_), Some(_)) => {
            return Err(Error::Config(
                "specify N or tau, not both".into(),
            ))
        }
        (Some(n), None) => {
            cfg.steps = usize::try_from(n)
                .map_err(|_| Error::Config(format!("N is too large: {n}")))?;
        }
        (None, Some(tau)) => {
            let grid = GridSpec::from_step(cfg.total_time, tau)?;
            cfg.steps = grid.steps();
        }
        (None, None) => {}
    }

    if let Some(s) = &raw.sum_bound {
        cfg.sum_bound = parse_sum_bound(s)?;
    }
    if let Some(s) = &raw.forcing_scale {
        cfg.forcing_scale = parse_forcing_scale(s)?;
    }
    if raw.out_dir.is_some() {
        cfg.out_dir = raw.out_dir.clone();
    }

    if let Some(rf) = &raw.forcing {
        cfg.forcing = merge_forcing(&cfg.forcing, rf)?;
    }

    if let Some(ra) = &raw.analysis {
        merge_analysis(&mut cfg.analysis, ra)?;
    }

    if let Some(rs) = &raw.sweep {
        cfg.sweep = Some(build_sweep(rs)?);
    }

    cfg.validate()?;
    Ok(cfg)
}

fn merge_forcing(current: &ForcingConfig, rf: &RawForcing) -> Result<ForcingConfig> {
    let kind = rf.kind.as_deref().unwrap_or_else(|| current.kind_token());
    match kind {
        "zero" => {
            for (present, key) in [
                (rf.delta.is_some(), "delta"),
                (rf.omega.is_some(), "omega"),
                (rf.samples.is_some(), "samples"),
            ] {
                if present {
                    return Err(Error::Config(format!(
                        "forcing.{key} is not valid for kind = \"zero\""
                    )));
                }
            }
            Ok(ForcingConfig::Zero)
        }
        "cosine" => {
            if rf.samples.is_some() {
                return Err(Error::Config(
                    "forcing.samples is only valid for kind = \"tabulated\"".into(),
                ));
            }
            let (cur_delta, cur_omega) = match current {
                ForcingConfig::Cosine { delta, omega } => (*delta, *omega),
                _ => (0.0, 1.0),
            };
            Ok(ForcingConfig::Cosine {
                delta: rf.delta.unwrap_or(cur_delta),
                omega: rf.omega.unwrap_or(cur_omega),
            })
        }
        "tabulated" => {
            if rf.delta.is_some() || rf.omega.is_some() {
                return Err(Error::Config(
                    "forcing.delta and forcing.omega are only valid for kind = \"cosine\""
                        .into(),
                ));
            }
            let samples = match (&rf.samples, current) {
                (Some(s), _) => s.clone(),
                (None, ForcingConfig::Tabulated { samples }) => samples.clone(),
                (None, _) => {
                    return Err(Error::Config(
                        "forcing.samples is required for kind = \"tabulated\"".into(),
                    ))
                }
            };
            Ok(ForcingConfig::Tabulated { samples })
        }
        other => Err(Error::Config(format!(
            "forcing.kind must be \"zero\", \"cosine\", or \"tabulated\", got \"{other}\""
        ))),
    }
}

fn merge_analysis(cfg: &mut AnalysisConfig, ra: &RawAnalysis) -> Result<()> {
    if let Some(v) = ra.settle_fraction {
        cfg.settle_fraction = v;
    }
    if let Some(v) = ra.center_low {
        cfg.center_low = v;
    }
    if let Some(v) = ra.center_high {
        cfg.center_high = v;
    }
    if let Some(v) = ra.focus_trend_max {
        cfg.focus_trend_max = v;
    }
    if let Some(v) = ra.divergent_trend {
        cfg.divergent_trend = v;
    }
    if let Some(v) = ra.limit_cycle_low {
        cfg.limit_cycle_low = v;
    }
    if let Some(v) = ra.limit_cycle_high {
        cfg.limit_cycle_high = v;
    }
    if let Some(v) = ra.closure_fraction {
        cfg.closure_fraction = v;
    }
    if let Some(v) = ra.two_tone_gap_ratio {
        cfg.two_tone_gap_ratio = v;
    }
    if let Some(v) = ra.envelope_min_modulation {
        cfg.envelope_min_modulation = v;
    }
    if let Some(v) = ra.peak_min_separation {
        cfg.peak_min_separation = usize::try_from(v)
            .map_err(|_| Error::Config(format!("analysis.peak_min_separation is too large: {v}")))?;
    }
    Ok(())
}

fn build_sweep(rs: &RawSweep) -> Result<SweepConfig> {
    let check_axis = |name: &str, values: &Option<Vec<f64>>| -> Result<()> {
        if let Some(v) = values {
            if v.is_empty() {
                return Err(Error::Config(format!(
                    "sweep.{name} must list at least one value"
                )));
            }
        }
        Ok(())
    };
    check_axis("alpha", &rs.alpha)?;
    check_axis("beta", &rs.beta)?;
    check_axis("delta", &rs.delta)?;
    check_axis("omega", &rs.omega)?;
    for axis in [&rs.alpha, &rs.beta] {
        if let Some(values) = axis {
            for &v in values {
                longwave::scheme::FractionalOrder::new(v)
                    .map_err(|e| Error::Config(format!("sweep order list: {e}")))?;
            }
        }
    }
    if let Some(values) = &rs.delta {
        for &v in values {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Config(format!(
                    "sweep.delta values must be nonnegative and finite, got {v}"
                )));
            }
        }
    }
    if let Some(values) = &rs.omega {
        for &v in values {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Config(format!(
                    "sweep.omega values must be positive and finite, got {v}"
                )));
            }
        }
    }
    Ok(SweepConfig {
        alpha: rs.alpha.clone(),
        beta: rs.beta.clone(),
        delta: rs.delta.clone(),
        omega: rs.omega.clone(),
    })
}

// ---------------------------------------------------------------------------
// Building core types and validation
// ---------------------------------------------------------------------------

impl ScenarioConfig {
    pub fn params(&self) -> Result<DubovskyParams> {
        DubovskyParams::new(self.n, self.lambda, self.x_star, self.y_star)
    }

    pub fn orders(&self) -> Result<FractionalOrders> {
        FractionalOrders::new(self.alpha, self.beta)
    }

    pub fn initial(&self) -> Result<InitialConditions> {
        InitialConditions::new(self.a, self.b)
    }

    pub fn grid(&self) -> Result<GridSpec> {
        GridSpec::new(self.total_time, self.steps)
    }

    pub fn scheme_options(&self) -> SchemeOptions {
        SchemeOptions {
            sum_bound: self.sum_bound,
            forcing_scale: self.forcing_scale,
        }
    }

    pub fn forcing(&self) -> Result<Forcing> {
        self.forcing.to_forcing()
    }

    pub fn analysis_options(&self) -> AnalysisOptions {
        self.analysis.to_options()
    }

    /// Checks every field by constructing the corresponding core types.
    pub fn validate(&self) -> Result<()> {
        self.params()?;
        self.orders()?;
        self.initial()?;
        self.grid()?;
        self.forcing()?;
        self.analysis_options()
            .validate()
            .map_err(|e| Error::Config(format!("analysis: {e}")))?;
        Ok(())
    }

    /// Label for outputs: the explicit name, or "run" if none was given.
    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("run")
    }

    /// Serializes the scenario back to TOML. Parsing the result yields a
    /// config equal to `self` (full round trip); every scalar is written
    /// explicitly, so the output does not depend on the defaults.
    pub fn to_toml(&self) -> String {
        fn f(v: f64) -> String {
            format!("{v:?}")
        }
        fn quote(s: &str) -> String {
            format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
        }
        fn float_list(values: &[f64]) -> String {
            let items: Vec<String> = values.iter().map(|&v| f(v)).collect();
            format!("[{}]", items.join(", "))
        }

        let mut s = String::new();
        if let Some(name) = &self.name {
            let _ = writeln!(s, "name = {}", quote(name));
        }
        let _ = writeln!(s, "n = {}", f(self.n));
        let _ = writeln!(s, "lambda = {}", f(self.lambda));
        let _ = writeln!(s, "x_star = {}", f(self.x_star));
        let _ = writeln!(s, "y_star = {}", f(self.y_star));
        let _ = writeln!(s, "alpha = {}", f(self.alpha));
        let _ = writeln!(s, "beta = {}", f(self.beta));
        let _ = writeln!(s, "a = {}", f(self.a));
        let _ = writeln!(s, "b = {}", f(self.b));
        let _ = writeln!(s, "T = {}", f(self.total_time));
        let _ = writeln!(s, "N = {}", self.steps);
        let _ = writeln!(s, "sum_bound = {}", quote(sum_bound_token(self.sum_bound)));
        let _ = writeln!(
            s,
            "forcing_scale = {}",
            quote(forcing_scale_token(self.forcing_scale))
        );
        if let Some(dir) = &self.out_dir {
            let _ = writeln!(s, "out_dir = {}", quote(dir));
        }

        let _ = writeln!(s, "\n[forcing]");
        let _ = writeln!(s, "kind = {}", quote(self.forcing.kind_token()));
        match &self.forcing {
            ForcingConfig::Zero => {}
            ForcingConfig::Cosine { delta, omega } => {
                let _ = writeln!(s, "delta = {}", f(*delta));
                let _ = writeln!(s, "omega = {}", f(*omega));
            }
            ForcingConfig::Tabulated { samples } => {
                let _ = writeln!(s, "samples = {}", float_list(samples));
            }
        }

        let a = &self.analysis;
        let _ = writeln!(s, "\n[analysis]");
        let _ = writeln!(s, "settle_fraction = {}", f(a.settle_fraction));
        let _ = writeln!(s, "center_low = {}", f(a.center_low));
        let _ = writeln!(s, "center_high = {}", f(a.center_high));
        let _ = writeln!(s, "focus_trend_max = {}", f(a.focus_trend_max));
        let _ = writeln!(s, "divergent_trend = {}", f(a.divergent_trend));
        let _ = writeln!(s, "limit_cycle_low = {}", f(a.limit_cycle_low));
        let _ = writeln!(s, "limit_cycle_high = {}", f(a.limit_cycle_high));
        let _ = writeln!(s, "closure_fraction = {}", f(a.closure_fraction));
        let _ = writeln!(s, "two_tone_gap_ratio = {}", f(a.two_tone_gap_ratio));
        let _ = writeln!(
            s,
            "envelope_min_modulation = {}",
            f(a.envelope_min_modulation)
        );
        let _ = writeln!(s, "peak_min_separation = {}", a.peak_min_separation);

        if let Some(sweep) = &self.sweep {
            let _ = writeln!(s, "\n[sweep]");
            if let Some(v) = &sweep.alpha {
                let _ = writeln!(s, "alpha = {}", float_list(v));
            }
            if let Some(v) = &sweep.beta {
                let _ = writeln!(s, "beta = {}", float_list(v));
            }
            if let Some(v) = &sweep.delta {
                let _ = writeln!(s, "delta = {}", float_list(v));
            }
            if let Some(v) = &sweep.omega {
                let _ = writeln!(s, "omega = {}", float_list(v));
            }
        }
        s
    }
}
