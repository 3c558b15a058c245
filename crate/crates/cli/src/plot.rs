//! Self-contained SVG plots: oscillograms and phase portraits.
//!
//! The output is plain SVG 1.1 with no external references (no fonts, CSS,
//! or scripts), a `viewBox`, light grid lines, tick labels, axis labels, and
//! — for oscillograms — a legend naming the two curves. Rendering is
//! deterministic: the same trajectory and spec always produce the same bytes.

use crate::CliError;
use longwave::sim::Trajectory;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

/// What to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// x(t) and y(t) against time.
    Oscillogram,
    /// y against x.
    Phase,
}

/// Plot geometry and labeling.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub kind: PlotKind,
    pub width: u32,
    pub height: u32,
    pub title: Option<String>,
}

impl PlotSpec {
    pub fn oscillogram() -> Self {
        Self {
            kind: PlotKind::Oscillogram,
            width: 900,
            height: 560,
            title: None,
        }
    }

    pub fn phase() -> Self {
        Self {
            kind: PlotKind::Phase,
            width: 600,
            height: 560,
            title: None,
        }
    }

    pub fn with_title(mut self, title: &str) -> Self {
        self.title = Some(title.to_string());
        self
    }
}

const COLOR_X: &str = "#1565c0";
const COLOR_Y: &str = "#e8710a";
const COLOR_PHASE: &str = "#2e7d32";

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Minimum and maximum of a slice (finite inputs assumed).
fn bounds(values: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// Expands a possibly degenerate range by a margin so it can span an axis.
fn pad_range(lo: f64, hi: f64, fraction: f64) -> (f64, f64) {
    if hi > lo {
        let pad = (hi - lo) * fraction;
        (lo - pad, hi + pad)
    } else {
        let pad = lo.abs().max(1.0) * fraction;
        (lo - pad, hi + pad)
    }
}

/// Tick positions and the step between them, aimed at `target` intervals.
/// Steps are 1, 2, or 5 times a power of ten.
fn nice_ticks(lo: f64, hi: f64, target: usize) -> (Vec<f64>, f64) {
    let span = hi - lo;
    let raw = span / target.max(1) as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let step = if norm <= 1.5 {
        1.0
    } else if norm <= 3.5 {
        2.0
    } else if norm <= 7.5 {
        5.0
    } else {
        10.0
    } * mag;
    let first = (lo / step).ceil();
    let mut ticks = Vec::new();
    let mut i = 0;
    loop {
        let v = (first + i as f64) * step;
        if v > hi + step * 1e-9 {
            break;
        }
        ticks.push(v);
        i += 1;
        if i > 1000 {
            break; // defensive; cannot happen with sane ranges
        }
    }
    (ticks, step)
}

/// Formats a tick value with just enough decimals for its step.
fn tick_label(v: f64, step: f64) -> String {
    let decimals = if step >= 1.0 {
        0
    } else {
        (-step.log10().floor()) as usize
    };
    format!("{v:.decimals$}")
}

struct Frame {
    left: f64,
    top: f64,
    plot_w: f64,
    plot_h: f64,
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
}

impl Frame {
    fn px(&self, v: f64) -> f64 {
        self.left + (v - self.x_lo) / (self.x_hi - self.x_lo) * self.plot_w
    }

    fn py(&self, v: f64) -> f64 {
        self.top + self.plot_h - (v - self.y_lo) / (self.y_hi - self.y_lo) * self.plot_h
    }
}

fn polyline(frame: &Frame, xs: &[f64], ys: &[f64], color: &str) -> String {
    let mut pts = String::with_capacity(xs.len() * 14);
    for (x, y) in xs.iter().zip(ys) {
        if !pts.is_empty() {
            pts.push(' ');
        }
        let _ = write!(pts, "{:.2},{:.2}", frame.px(*x), frame.py(*y));
    }
    format!(
        "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.3\" points=\"{pts}\"/>\n"
    )
}

/// Renders a trajectory to an SVG string.
///
/// Needs at least two nodes — a single point cannot be drawn as a curve —
/// and sane dimensions (each between 64 and 10000 pixels).
pub fn render_plot(traj: &Trajectory, spec: &PlotSpec) -> Result<String, CliError> {
    if traj.len() < 2 {
        return Err(CliError::Config(format!(
            "cannot plot a trajectory with {} point(s); need at least 2",
            traj.len()
        )));
    }
    for (name, v) in [("width", spec.width), ("height", spec.height)] {
        if !(64..=10_000).contains(&v) {
            return Err(CliError::Config(format!(
                "plot {name} must lie between 64 and 10000 pixels, got {v}"
            )));
        }
    }

    let w = spec.width as f64;
    let h = spec.height as f64;
    let top = if spec.title.is_some() { 40.0 } else { 20.0 };
    let (left, right, bottom) = (64.0, 18.0, 48.0);
    let plot_w = w - left - right;
    let plot_h = h - top - bottom;

    // Data ranges per plot kind.
    let (x_series, y_label) = match spec.kind {
        PlotKind::Oscillogram => (traj.times(), "x, y"),
        PlotKind::Phase => (traj.xs(), "y"),
    };
    let x_axis_label = match spec.kind {
        PlotKind::Oscillogram => "t",
        PlotKind::Phase => "x",
    };
    let (x_lo_raw, x_hi_raw) = bounds(x_series);
    let (y_lo_raw, y_hi_raw) = match spec.kind {
        PlotKind::Oscillogram => {
            let (a, b) = bounds(traj.xs());
            let (c, d) = bounds(traj.ys());
            (a.min(c), b.max(d))
        }
        PlotKind::Phase => bounds(traj.ys()),
    };
    let (x_lo, x_hi) = match spec.kind {
        // Time axis starts where the data starts; pad only value axes.
        PlotKind::Oscillogram => {
            if x_hi_raw > x_lo_raw {
                (x_lo_raw, x_hi_raw)
            } else {
                pad_range(x_lo_raw, x_hi_raw, 0.05)
            }
        }
        PlotKind::Phase => pad_range(x_lo_raw, x_hi_raw, 0.05),
    };
    let (y_lo, y_hi) = pad_range(y_lo_raw, y_hi_raw, 0.05);

    let frame = Frame {
        left,
        top,
        plot_w,
        plot_h,
        x_lo,
        x_hi,
        y_lo,
        y_hi,
    };

    let mut s = String::with_capacity(32 * 1024);
    let _ = write!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" \
         viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\">\n",
        spec.width, spec.height
    );
    let _ = write!(s, "<rect width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>\n");

    if let Some(title) = &spec.title {
        let _ = write!(
            s,
            "<text x=\"{:.1}\" y=\"24\" font-size=\"16\" text-anchor=\"middle\" \
             fill=\"#222222\">{}</text>\n",
            left + plot_w / 2.0,
            esc(title)
        );
    }

    // Grid lines and tick labels.
    let (x_ticks, x_step) = nice_ticks(x_lo, x_hi, 7);
    let (y_ticks, y_step) = nice_ticks(y_lo, y_hi, 6);
    s.push_str("<g stroke=\"#dddddd\" stroke-width=\"1\">\n");
    for &t in &x_ticks {
        let px = frame.px(t);
        let _ = write!(
            s,
            "<line x1=\"{px:.2}\" y1=\"{top:.1}\" x2=\"{px:.2}\" y2=\"{:.1}\"/>\n",
            top + plot_h
        );
    }
    for &t in &y_ticks {
        let py = frame.py(t);
        let _ = write!(
            s,
            "<line x1=\"{left:.1}\" y1=\"{py:.2}\" x2=\"{:.1}\" y2=\"{py:.2}\"/>\n",
            left + plot_w
        );
    }
    s.push_str("</g>\n");
    s.push_str("<g font-size=\"12\" fill=\"#444444\">\n");
    for &t in &x_ticks {
        let _ = write!(
            s,
            "<text x=\"{:.2}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>\n",
            frame.px(t),
            top + plot_h + 16.0,
            tick_label(t, x_step)
        );
    }
    for &t in &y_ticks {
        let _ = write!(
            s,
            "<text x=\"{:.1}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
            left - 8.0,
            frame.py(t) + 4.0,
            tick_label(t, y_step)
        );
    }
    s.push_str("</g>\n");

    // Axis labels.
    let _ = write!(
        s,
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"13\" text-anchor=\"middle\" \
         fill=\"#222222\">{}</text>\n",
        left + plot_w / 2.0,
        h - 10.0,
        esc(x_axis_label)
    );
    let _ = write!(
        s,
        "<text x=\"16\" y=\"{0:.1}\" font-size=\"13\" text-anchor=\"middle\" \
         fill=\"#222222\" transform=\"rotate(-90 16 {0:.1})\">{1}</text>\n",
        top + plot_h / 2.0,
        esc(y_label)
    );

    // Plot frame.
    let _ = write!(
        s,
        "<rect x=\"{left:.1}\" y=\"{top:.1}\" width=\"{plot_w:.1}\" height=\"{plot_h:.1}\" \
         fill=\"none\" stroke=\"#444444\"/>\n"
    );

    // Curves and legend.
    match spec.kind {
        PlotKind::Oscillogram => {
            s.push_str(&polyline(&frame, traj.times(), traj.xs(), COLOR_X));
            s.push_str(&polyline(&frame, traj.times(), traj.ys(), COLOR_Y));
            let lx = left + plot_w - 96.0;
            let ly = top + 14.0;
            for (i, (color, label)) in [(COLOR_X, "x"), (COLOR_Y, "y")].iter().enumerate() {
                let row = ly + 18.0 * i as f64;
                let _ = write!(
                    s,
                    "<line x1=\"{lx:.1}\" y1=\"{row:.1}\" x2=\"{:.1}\" y2=\"{row:.1}\" \
                     stroke=\"{color}\" stroke-width=\"2\"/>\n",
                    lx + 26.0
                );
                let _ = write!(
                    s,
                    "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" \
                     fill=\"#222222\">{label}</text>\n",
                    lx + 32.0,
                    row + 4.0
                );
            }
        }
        PlotKind::Phase => {
            s.push_str(&polyline(&frame, traj.xs(), traj.ys(), COLOR_PHASE));
        }
    }

    s.push_str("</svg>\n");
    Ok(s)
}

/// Renders and writes a plot to `path`.
pub fn write_plot(traj: &Trajectory, spec: &PlotSpec, path: &Path) -> Result<(), CliError> {
    let svg = render_plot(traj, spec)?;
    fs::write(path, svg)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}
