//! Trajectory analysis: peaks, periods, and qualitative regime labels.
//!
//! Everything here works on the x series of a [`Trajectory`] (the y series
//! enters only through the phase-plane closure test). The classifier sorts a
//! run into one of five regimes:
//!
//! * `center` — closed orbits: the oscillation amplitude neither grows nor
//!   decays (classical unforced system).
//! * `stable_focus` — damped oscillation into the equilibrium, the signature
//!   of memory effects (fractional orders).
//! * `limit_cycle` — a forced run that settles onto a repeating loop.
//! * `divergent` — the amplitude grows without bound.
//! * `undetermined` — none of the above can be established from the data.
//!
//! The rules are deliberately simple and threshold-based; every threshold is
//! exposed in [`AnalysisOptions`] so a caller can tighten or loosen them.
//! Quantities the rules use:
//!
//! * **amplitude trend** — (max − min of x over the last quarter of the run)
//!   divided by the same range over the first quarter; 1 means no change,
//!   below 1 decay, above 1 growth. Undefined when the first quarter is
//!   exactly flat.
//! * **settled trend** — the same ratio computed inside the settled window
//!   (the trailing `1 − settle_fraction` share of the run), which ignores the
//!   transient.
//! * **closure** — the phase-plane distance from the final point to the loop
//!   one period earlier, compared to that loop's size; small closure means
//!   the trajectory retraces itself.
//!
//! Period estimation handles two-scale signals (a fast carrier under a slow
//! envelope) by first trying to split the peak-spacing distribution into two
//! separated clusters and, failing that, by looking for periodicity in the
//! sequence of peak heights.

use crate::error::{Error, Result};
use crate::sim::Trajectory;
use std::fmt;

/// Indices and values of detected local maxima, in index order.
#[derive(Debug, Clone, PartialEq)]
pub struct PeakList {
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl PeakList {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Finds strict local maxima of `series`.
///
/// A plateau that rises and then falls counts as one peak at its first
/// index. Endpoints never count. When `min_separation > 1`, peaks closer
/// than that many indices are thinned, keeping higher values first.
///
/// Needs at least 3 samples and `min_separation >= 1`.
pub fn find_peaks(series: &[f64], min_separation: usize) -> Result<PeakList> {
    if series.len() < 3 {
        return Err(Error::Domain(format!(
            "peak detection needs at least 3 samples, got {}",
            series.len()
        )));
    }
    if min_separation < 1 {
        return Err(Error::Domain(
            "min_separation must be at least 1".into(),
        ));
    }

    let n = series.len();
    let mut candidates: Vec<usize> = Vec::new();
    let mut i = 1;
    while i < n - 1 {
        if series[i] > series[i - 1] {
            // Walk along a possible plateau of equal values.
            let mut j = i;
            while j + 1 < n && series[j + 1] == series[i] {
                j += 1;
            }
            if j + 1 < n && series[j + 1] < series[i] {
                candidates.push(i);
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }

    let accepted: Vec<usize> = if min_separation <= 1 {
        candidates
    } else {
        // Greedy thinning: take peaks in decreasing value order, drop any
        // candidate within min_separation of one already taken.
        let mut order: Vec<usize> = (0..candidates.len()).collect();
        order.sort_by(|&a, &b| {
            series[candidates[b]]
                .partial_cmp(&series[candidates[a]])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(candidates[a].cmp(&candidates[b]))
        });
        let mut taken: Vec<usize> = Vec::new();
        for oi in order {
            let idx = candidates[oi];
            if taken
                .iter()
                .all(|&t| idx.abs_diff(t) >= min_separation)
            {
                taken.push(idx);
            }
        }
        taken.sort_unstable();
        taken
    };

    let values = accepted.iter().map(|&i| series[i]).collect();
    Ok(PeakList {
        indices: accepted,
        values,
    })
}

/// Qualitative label for a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Center,
    StableFocus,
    LimitCycle,
    Divergent,
    Undetermined,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::Center => "center",
            Regime::StableFocus => "stable_focus",
            Regime::LimitCycle => "limit_cycle",
            Regime::Divergent => "divergent",
            Regime::Undetermined => "undetermined",
        };
        f.write_str(s)
    }
}

/// Thresholds steering classification and period estimation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    /// Share of the run treated as transient; the rest is the settled window.
    pub settle_fraction: f64,
    /// Amplitude-trend band that counts as "no change" (center).
    pub center_band: (f64, f64),
    /// Amplitude trend below this counts as decay (stable focus).
    pub focus_trend_max: f64,
    /// Amplitude trend above this counts as divergence.
    pub divergent_trend: f64,
    /// Settled-trend band acceptable for a limit cycle.
    pub limit_cycle_band: (f64, f64),
    /// Closure must be below this fraction of the cycle amplitude.
    pub closure_fraction: f64,
    /// Two peak-spacing clusters count as separated when their means differ
    /// by at least this factor; also the minimum dominant/secondary ratio.
    pub two_tone_gap_ratio: f64,
    /// Peak-height modulation must exceed this fraction of the series range
    /// before the envelope is trusted as the slow period.
    pub envelope_min_modulation: f64,
    /// Minimum index distance between reported peaks.
    pub peak_min_separation: usize,
    /// Overrides whether the run counts as forced; `None` reads the
    /// trajectory's own forcing metadata.
    pub assume_forced: Option<bool>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            settle_fraction: 0.5,
            center_band: (0.95, 1.05),
            focus_trend_max: 0.8,
            divergent_trend: 10.0,
            limit_cycle_band: (0.9, 1.1),
            closure_fraction: 0.02,
            two_tone_gap_ratio: 2.0,
            envelope_min_modulation: 0.01,
            peak_min_separation: 1,
            assume_forced: None,
        }
    }
}

impl AnalysisOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.settle_fraction > 0.0 && self.settle_fraction < 1.0) {
            return Err(Error::Domain(format!(
                "settle_fraction must lie in (0,1), got {}",
                self.settle_fraction
            )));
        }
        for (name, &(lo, hi)) in [
            ("center_band", &self.center_band),
            ("limit_cycle_band", &self.limit_cycle_band),
        ] {
            if !(lo.is_finite() && hi.is_finite() && 0.0 < lo && lo < hi) {
                return Err(Error::Domain(format!(
                    "{name} must satisfy 0 < low < high, got ({lo}, {hi})"
                )));
            }
        }
        if !(self.focus_trend_max > 0.0 && self.focus_trend_max.is_finite()) {
            return Err(Error::Domain(format!(
                "focus_trend_max must be positive, got {}",
                self.focus_trend_max
            )));
        }
        if !(self.divergent_trend > 1.0 && self.divergent_trend.is_finite()) {
            return Err(Error::Domain(format!(
                "divergent_trend must exceed 1, got {}",
                self.divergent_trend
            )));
        }
        if !(self.closure_fraction > 0.0 && self.closure_fraction.is_finite()) {
            return Err(Error::Domain(format!(
                "closure_fraction must be positive, got {}",
                self.closure_fraction
            )));
        }
        if !(self.two_tone_gap_ratio > 1.0 && self.two_tone_gap_ratio.is_finite()) {
            return Err(Error::Domain(format!(
                "two_tone_gap_ratio must exceed 1, got {}",
                self.two_tone_gap_ratio
            )));
        }
        if !(self.envelope_min_modulation >= 0.0
            && self.envelope_min_modulation.is_finite())
        {
            return Err(Error::Domain(format!(
                "envelope_min_modulation must be nonnegative, got {}",
                self.envelope_min_modulation
            )));
        }
        if self.peak_min_separation < 1 {
            return Err(Error::Domain(
                "peak_min_separation must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Estimated oscillation periods, in time units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodEstimate {
    /// The period of the dominant (slowest prominent) oscillation.
    pub dominant: Option<f64>,
    /// A faster secondary period, when the signal has two separated scales.
    pub secondary: Option<f64>,
}

/// Everything the classifier measured, plus the resulting label.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport {
    pub regime: Regime,
    /// Dominant period of the full x series.
    pub dominant_period: Option<f64>,
    /// Secondary (fast) period when the signal is two-scale.
    pub secondary_period: Option<f64>,
    /// Last-quarter / first-quarter amplitude ratio over the full run.
    pub amplitude_trend: Option<f64>,
    /// The same ratio computed inside the settled window.
    pub settled_trend: Option<f64>,
    /// Phase-plane distance from the final point to the previous cycle.
    pub closure_metric: Option<f64>,
    /// Size (bounding-box diagonal) of the previous cycle in the phase plane.
    pub cycle_amplitude: Option<f64>,
}

fn series_range(s: &[f64]) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in s {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    hi - lo
}

fn mean(s: &[f64]) -> f64 {
    s.iter().sum::<f64>() / s.len() as f64
}

/// Last-quarter / first-quarter amplitude ratio; `None` when a quarter is
/// shorter than 2 samples or when the first quarter is exactly flat.
fn quarter_trend(series: &[f64]) -> Option<f64> {
    let n = series.len();
    let q = n / 4;
    if q < 2 {
        return None;
    }
    let first = series_range(&series[..q]);
    let last = series_range(&series[n - q..]);
    if first == 0.0 {
        return None;
    }
    Some(last / first)
}

/// Period estimation core shared by the public estimator and the classifier.
fn periods_on(times: &[f64], series: &[f64], opts: &AnalysisOptions) -> PeriodEstimate {
    let none = PeriodEstimate {
        dominant: None,
        secondary: None,
    };
    let peaks = match find_peaks(series, opts.peak_min_separation) {
        Ok(p) => p,
        Err(_) => return none,
    };
    if peaks.len() < 2 {
        return none;
    }
    let peak_times: Vec<f64> = peaks.indices().iter().map(|&i| times[i]).collect();
    let spacings: Vec<f64> = peak_times.windows(2).map(|w| w[1] - w[0]).collect();
    let base = mean(&spacings);

    // Path 1: the spacings themselves form two separated clusters (bursts of
    // fast oscillation with long quiet gaps between them).
    if spacings.len() >= 2 {
        let mut sorted = spacings.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut split = 0;
        let mut best_ratio = 0.0;
        for i in 0..sorted.len() - 1 {
            let r = sorted[i + 1] / sorted[i];
            if r > best_ratio {
                best_ratio = r;
                split = i;
            }
        }
        let small = &sorted[..=split];
        let big = &sorted[split + 1..];
        if !big.is_empty() {
            let m_small = mean(small);
            let m_big = mean(big);
            if m_big / m_small >= opts.two_tone_gap_ratio {
                let secondary = m_small;
                // Group peaks into bursts at the geometric-mean threshold and
                // take each burst's tallest peak as the slow-cycle marker.
                let threshold = (m_small * m_big).sqrt();
                let mut rep_times: Vec<f64> = Vec::new();
                let mut burst_start = 0;
                for i in 0..=spacings.len() {
                    let burst_ends = i == spacings.len() || spacings[i] > threshold;
                    if burst_ends {
                        let burst = burst_start..=i;
                        let best = burst
                            .clone()
                            .max_by(|&a, &b| {
                                peaks.values()[a]
                                    .partial_cmp(&peaks.values()[b])
                                    .unwrap_or(std::cmp::Ordering::Equal)
                            })
                            .unwrap();
                        rep_times.push(peak_times[best]);
                        burst_start = i + 1;
                    }
                }
                if rep_times.len() >= 2 {
                    let rep_spacings: Vec<f64> =
                        rep_times.windows(2).map(|w| w[1] - w[0]).collect();
                    return PeriodEstimate {
                        dominant: Some(mean(&rep_spacings)),
                        secondary: Some(secondary),
                    };
                }
            }
        }
    }

    // Path 2: uniform fast spacing, but the peak heights themselves rise and
    // fall periodically — a slow envelope over a fast carrier.
    if peaks.len() >= 3 {
        if let Ok(env) = find_peaks(peaks.values(), 1) {
            let range = series_range(series);
            let modulation = series_range(peaks.values());
            if env.len() >= 2 && range > 0.0 && modulation >= opts.envelope_min_modulation * range
            {
                let env_times: Vec<f64> =
                    env.indices().iter().map(|&i| peak_times[i]).collect();
                let env_spacings: Vec<f64> =
                    env_times.windows(2).map(|w| w[1] - w[0]).collect();
                let dominant = mean(&env_spacings);
                if dominant >= opts.two_tone_gap_ratio * base {
                    return PeriodEstimate {
                        dominant: Some(dominant),
                        secondary: Some(base),
                    };
                }
            }
        }
    }

    PeriodEstimate {
        dominant: Some(base),
        secondary: None,
    }
}

/// Estimates the dominant (and, for two-scale signals, secondary) period of
/// the x series. Fewer than 2 peaks yields `dominant: None` — an answer,
/// not an error.
pub fn estimate_periods(traj: &Trajectory) -> PeriodEstimate {
    estimate_periods_with(traj, &AnalysisOptions::default())
}

/// [`estimate_periods`] with explicit thresholds.
pub fn estimate_periods_with(traj: &Trajectory, opts: &AnalysisOptions) -> PeriodEstimate {
    periods_on(traj.times(), traj.xs(), opts)
}

/// Classifies a trajectory using default thresholds except for the settled
/// window, which starts after `settle_fraction` of the run.
pub fn classify_regime(traj: &Trajectory, settle_fraction: f64) -> Result<RegimeReport> {
    let opts = AnalysisOptions {
        settle_fraction,
        ..Default::default()
    };
    classify_regime_with(traj, &opts)
}

/// Classifies a trajectory with explicit thresholds.
pub fn classify_regime_with(traj: &Trajectory, opts: &AnalysisOptions) -> Result<RegimeReport> {
    opts.validate()?;
    let xs = traj.xs();
    let ys = traj.ys();
    let times = traj.times();
    let n = xs.len();

    let forced = opts
        .assume_forced
        .unwrap_or_else(|| traj.setup().forcing.is_active());

    let full_periods = periods_on(times, xs, opts);
    let amplitude_trend = quarter_trend(xs);

    // Settled window: the trailing part after the transient.
    let start = ((n as f64) * opts.settle_fraction).floor() as usize;
    let start = start.min(n.saturating_sub(2));
    let settled_xs = &xs[start..];
    let settled_times = &times[start..];
    let settled_trend = quarter_trend(settled_xs);
    let settled_periods = periods_on(settled_times, settled_xs, opts);

    // Closure: distance from the final point to the loop one period back.
    let tau = traj.setup().grid.tau();
    let mut closure_metric = None;
    let mut cycle_amplitude = None;
    if let Some(dom) = settled_periods.dominant {
        let period_steps = (dom / tau).round() as usize;
        if period_steps >= 1 && n > 2 * period_steps {
            let last = n - 1;
            let seg = (last - 2 * period_steps)..=(last - period_steps);
            let fx = xs[last];
            let fy = ys[last];
            let mut dist = f64::INFINITY;
            for i in seg.clone() {
                dist = dist.min((xs[i] - fx).hypot(ys[i] - fy));
            }
            let seg_xs = &xs[*seg.start()..=*seg.end()];
            let seg_ys = &ys[*seg.start()..=*seg.end()];
            let amp = series_range(seg_xs).hypot(series_range(seg_ys));
            closure_metric = Some(dist);
            cycle_amplitude = Some(amp);
        }
    }

    // Peak heights inside the settled window must fall strictly for a focus;
    // one or zero peaks count as (vacuously) falling.
    let settled_peaks_falling = match find_peaks(settled_xs, opts.peak_min_separation) {
        Ok(p) => p.values().windows(2).all(|w| w[1] < w[0]),
        Err(_) => true,
    };

    let any_non_finite = xs.iter().chain(ys.iter()).any(|v| !v.is_finite());

    let regime = if any_non_finite
        || matches!(amplitude_trend, Some(t) if t > opts.divergent_trend)
    {
        Regime::Divergent
    } else if !forced
        && matches!(amplitude_trend,
            Some(t) if t >= opts.center_band.0 && t <= opts.center_band.1)
    {
        Regime::Center
    } else if matches!(amplitude_trend, Some(t) if t < opts.focus_trend_max)
        && settled_peaks_falling
    {
        Regime::StableFocus
    } else if forced
        && matches!(settled_trend,
            Some(t) if t >= opts.limit_cycle_band.0 && t <= opts.limit_cycle_band.1)
        && matches!((closure_metric, cycle_amplitude),
            (Some(c), Some(a)) if a > 0.0 && c < opts.closure_fraction * a)
    {
        Regime::LimitCycle
    } else {
        Regime::Undetermined
    };

    Ok(RegimeReport {
        regime,
        dominant_period: full_periods.dominant,
        secondary_period: full_periods.secondary,
        amplitude_trend,
        settled_trend,
        closure_metric,
        cycle_amplitude,
    })
}
