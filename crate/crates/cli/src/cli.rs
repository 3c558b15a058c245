//! Argument parsing and command dispatch.
//!
//! [`cli_main`] is what `main` calls; [`cli_main_with`] is the same entry
//! point with injectable stdout/stderr so integration tests can drive the
//! binary surface in-process and assert on exit codes and output bytes.
//!
//! Exit codes: `0` success (including `--help`/`--version`), `1` bad command
//! line or invalid input files, `2` runtime failure (I/O, divergence).

use crate::config::{self, ScenarioConfig, PRESET_NAMES};
use crate::csv;
use crate::plot::{self, PlotSpec};
use crate::sweep;
use crate::CliError;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use longwave::analysis::{classify_regime_with, AnalysisOptions, RegimeReport};
use longwave::sim::{simulate, GridSpec, Trajectory};
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(
    name = "longwave",
    version,
    about = "Simulator for a fractional-order model of Kondratiev long waves",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Integrate one scenario and report its regime
    Run(RunArgs),
    /// Classify a trajectory CSV produced by `run --csv` (or compatible)
    Analyze(AnalyzeArgs),
    /// Run a grid of scenarios in parallel and tabulate the regimes
    Sweep(SweepArgs),
    /// List the built-in scenarios
    Presets,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Built-in scenario name (see `longwave presets`)
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,
    /// TOML scenario file
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Directory for output files (default: the config's out_dir, else ".")
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Write the trajectory as <name>.csv
    #[arg(long)]
    csv: bool,
    /// Write <name>_osc.svg and <name>_phase.svg
    #[arg(long)]
    plots: bool,
    /// Override the time step (the step count is recomputed from it)
    #[arg(long)]
    tau: Option<f64>,
    /// Override the fraction of the run treated as transient by the analysis
    #[arg(long)]
    settle: Option<f64>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Trajectory CSV with header `t,x,y`
    #[arg(long, value_name = "FILE")]
    csv: PathBuf,
    /// Treat the series as externally forced when classifying
    #[arg(long)]
    forced: bool,
    /// Fraction of the run treated as transient
    #[arg(long, default_value_t = 0.5)]
    settle: f64,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// TOML scenario file with a [sweep] section
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    /// Write sweep.csv into this directory instead of printing to stdout
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

/// Runs the CLI against real stdout/stderr and returns the exit code.
pub fn cli_main(args: &[String]) -> i32 {
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    cli_main_with(args, &mut out, &mut err)
}

/// Runs the CLI with injectable output sinks and returns the exit code.
pub fn cli_main_with(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful outcomes; everything else is
            // an input problem and exits 1 regardless of clap's own codes.
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    let result = match &cli.command {
        Cmd::Run(args) => cmd_run(args, out, err),
        Cmd::Analyze(args) => cmd_analyze(args, out),
        Cmd::Sweep(args) => cmd_sweep(args, out, err),
        Cmd::Presets => cmd_presets(out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load_config_file(path: &Path) -> Result<ScenarioConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    config::parse_config(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:?}")).unwrap_or_default()
}

fn report_lines(report: &RegimeReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "regime = {}", report.regime);
    let _ = writeln!(s, "dominant_period = {}", opt(report.dominant_period));
    let _ = writeln!(s, "secondary_period = {}", opt(report.secondary_period));
    let _ = writeln!(s, "amplitude_trend = {}", opt(report.amplitude_trend));
    let _ = writeln!(s, "settled_trend = {}", opt(report.settled_trend));
    let _ = writeln!(s, "closure_metric = {}", opt(report.closure_metric));
    let _ = writeln!(s, "cycle_amplitude = {}", opt(report.cycle_amplitude));
    s
}

fn sink(e: std::io::Error) -> CliError {
    CliError::Runtime(format!("cannot write output: {e}"))
}

fn cmd_run(args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let mut cfg = match (&args.preset, &args.config) {
        (Some(name), None) => config::preset(name)?,
        (None, Some(path)) => load_config_file(path)?,
        _ => {
            return Err(CliError::Usage(
                "run needs exactly one of --preset or --config".into(),
            ))
        }
    };
    if let Some(tau) = args.tau {
        cfg.steps = GridSpec::from_step(cfg.total_time, tau)?.steps();
    }
    if let Some(settle) = args.settle {
        cfg.analysis.settle_fraction = settle;
    }
    cfg.validate()?;

    let traj = simulate(
        cfg.params()?,
        cfg.orders()?,
        cfg.forcing()?,
        cfg.initial()?,
        cfg.grid()?,
        cfg.scheme_options(),
    )?;
    let report = classify_regime_with(&traj, &cfg.analysis_options())?;

    let grid = cfg.grid()?;
    let mut s = String::new();
    let _ = writeln!(s, "name = {}", cfg.label());
    let _ = writeln!(s, "alpha = {:?}", cfg.alpha);
    let _ = writeln!(s, "beta = {:?}", cfg.beta);
    let _ = writeln!(s, "total_time = {:?}", cfg.total_time);
    let _ = writeln!(s, "steps = {}", cfg.steps);
    let _ = writeln!(s, "tau = {:?}", grid.tau());
    let _ = writeln!(s, "forcing = {}", cfg.forcing.describe());
    s.push_str(&report_lines(&report));
    out.write_all(s.as_bytes()).map_err(sink)?;

    if args.csv || args.plots {
        let dir: PathBuf = args
            .out
            .clone()
            .or_else(|| cfg.out_dir.as_ref().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));
        std::fs::create_dir_all(&dir)
            .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", dir.display())))?;
        let label = cfg.label();
        if args.csv {
            let path = dir.join(format!("{label}.csv"));
            csv::export_csv(&traj, &path)?;
            let _ = writeln!(err, "wrote {}", path.display());
        }
        if args.plots {
            write_plots(&traj, &dir, label, err)?;
        }
    }
    Ok(())
}

fn write_plots(
    traj: &Trajectory,
    dir: &Path,
    label: &str,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let jobs = [
        (
            dir.join(format!("{label}_osc.svg")),
            PlotSpec::oscillogram().with_title(&format!("{label}: x(t), y(t)")),
        ),
        (
            dir.join(format!("{label}_phase.svg")),
            PlotSpec::phase().with_title(&format!("{label}: phase portrait")),
        ),
    ];
    for (path, spec) in &jobs {
        plot::write_plot(traj, spec, path)?;
        let _ = writeln!(err, "wrote {}", path.display());
    }
    Ok(())
}

fn cmd_analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let traj = csv::read_csv(&args.csv)?;
    let opts = AnalysisOptions {
        settle_fraction: args.settle,
        assume_forced: Some(args.forced),
        ..AnalysisOptions::default()
    };
    let report = classify_regime_with(&traj, &opts)?;
    let mut s = String::new();
    let _ = writeln!(s, "source = {}", args.csv.display());
    let _ = writeln!(s, "nodes = {}", traj.len());
    let _ = writeln!(s, "total_time = {:?}", traj.times().last().copied().unwrap_or(0.0));
    s.push_str(&report_lines(&report));
    out.write_all(s.as_bytes()).map_err(sink)
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let cfg = load_config_file(&args.config)?;
    let table = sweep::run_sweep(&cfg)?;
    match &args.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", dir.display())))?;
            let path = dir.join("sweep.csv");
            std::fs::write(&path, &table)
                .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
            let _ = writeln!(err, "wrote {}", path.display());
        }
        None => out.write_all(table.as_bytes()).map_err(sink)?,
    }
    Ok(())
}

fn cmd_presets(out: &mut dyn Write) -> Result<(), CliError> {
    let mut s = String::new();
    let _ = writeln!(s, "{:<6}  {:<5}  {:<5}  {:<22}  description", "name", "alpha", "beta", "forcing");
    for name in PRESET_NAMES {
        let cfg = config::preset(name)?;
        let _ = writeln!(
            s,
            "{:<6}  {:<5}  {:<5}  {:<22}  {}",
            name,
            cfg.alpha,
            cfg.beta,
            cfg.forcing.describe(),
            config::preset_description(name)
        );
    }
    out.write_all(s.as_bytes()).map_err(sink)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("longwave".to_string())
            .chain(args.iter().map(|s| s.to_string()))
            .collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli_main_with(&argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn help_and_version_exit_zero_on_stdout() {
        let (code, out, err) = run(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("Usage"));
        assert!(err.is_empty());
        let (code, out, _) = run(&["--version"]);
        assert_eq!(code, 0);
        assert!(out.contains("longwave"));
    }

    #[test]
    fn unknown_flags_and_commands_exit_one_on_stderr() {
        let (code, out, err) = run(&["frobnicate"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(!err.is_empty());
        let (code, _, _) = run(&["run", "--no-such-flag"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn run_requires_a_scenario_source() {
        let (code, _, err) = run(&["run"]);
        assert_eq!(code, 1);
        assert!(err.contains("--preset or --config"), "{err}");
    }

    #[test]
    fn unknown_preset_names_the_valid_ones() {
        let (code, _, err) = run(&["run", "--preset", "fig9"]);
        assert_eq!(code, 1);
        assert!(err.contains("fig9"), "{err}");
        assert!(err.contains("fig1"), "{err}");
    }

    #[test]
    fn presets_lists_all_six() {
        let (code, out, _) = run(&["presets"]);
        assert_eq!(code, 0);
        for name in PRESET_NAMES {
            assert!(out.contains(name), "{name} missing from\n{out}");
        }
    }

    #[test]
    fn short_preset_run_reports_key_values() {
        // Keep it cheap: override tau so the grid has only 400 steps.
        let (code, out, err) = run(&["run", "--preset", "fig4", "--tau", "0.625"]);
        assert_eq!(code, 0, "stderr: {err}");
        assert!(out.contains("name = fig4"));
        assert!(out.contains("alpha = 0.8"));
        assert!(out.contains("steps = 400"));
        assert!(out.contains("regime = "));
        assert!(out.contains("dominant_period = "));
    }

    #[test]
    fn analyze_missing_file_exits_one() {
        let (code, _, err) = run(&["analyze", "--csv", "/no/such/file.csv"]);
        assert_eq!(code, 1);
        assert!(err.contains("cannot read"), "{err}");
    }

    #[test]
    fn sweep_missing_config_exits_one() {
        let (code, _, err) = run(&["sweep", "--config", "/no/such/sweep.toml"]);
        assert_eq!(code, 1);
        assert!(err.contains("cannot read"), "{err}");
    }
}
