//! Trajectory CSV input and output.
//!
//! The format is exactly three columns with the header `t,x,y`, one node per
//! line, LF line endings, final newline included. Numbers are written as the
//! shortest decimal that parses back to the same f64, so a write → read
//! round trip is bit-exact and repeated exports of the same trajectory are
//! byte-identical.

use crate::CliError;
use longwave::sim::Trajectory;
use std::fs;
use std::io::Write;
use std::path::Path;

pub const CSV_HEADER: &str = "t,x,y";

/// Renders a trajectory as CSV text.
pub fn csv_text(traj: &Trajectory) -> String {
    let mut s = String::with_capacity(24 * traj.len() + 8);
    s.push_str(CSV_HEADER);
    s.push('\n');
    for j in 0..traj.len() {
        use std::fmt::Write as _;
        let _ = writeln!(
            s,
            "{:?},{:?},{:?}",
            traj.times()[j],
            traj.xs()[j],
            traj.ys()[j]
        );
    }
    s
}

/// Writes a trajectory to `path` as CSV.
pub fn export_csv(traj: &Trajectory, path: &Path) -> Result<(), CliError> {
    let text = csv_text(traj);
    let mut file = fs::File::create(path).map_err(|e| {
        CliError::Runtime(format!("cannot create {}: {e}", path.display()))
    })?;
    file.write_all(text.as_bytes())
        .and_then(|_| file.flush())
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

/// Parses CSV text into a trajectory. `source` names the input in messages.
pub fn parse_csv(text: &str, source: &str) -> Result<Trajectory, CliError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end_matches('\r') == CSV_HEADER => {}
        Some((_, header)) => {
            return Err(CliError::Config(format!(
                "{source} line 1: expected header \"{CSV_HEADER}\", found \"{header}\""
            )))
        }
        None => {
            return Err(CliError::Config(format!("{source} is empty")));
        }
    }

    let mut times = Vec::new();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (idx, line) in lines {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(CliError::Config(format!(
                "{source} line {lineno}: expected 3 comma-separated values, found {}",
                fields.len()
            )));
        }
        let mut parsed = [0.0f64; 3];
        for (slot, field) in parsed.iter_mut().zip(&fields) {
            *slot = field.trim().parse().map_err(|_| {
                CliError::Config(format!(
                    "{source} line {lineno}: \"{field}\" is not a number"
                ))
            })?;
        }
        times.push(parsed[0]);
        xs.push(parsed[1]);
        ys.push(parsed[2]);
    }

    Trajectory::from_series(times, xs, ys)
        .map_err(|e| CliError::Config(format!("{source}: {e}")))
}

/// Reads a trajectory CSV from disk.
pub fn read_csv(path: &Path) -> Result<Trajectory, CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::Config(format!("cannot read {}: {e}", path.display()))
    })?;
    parse_csv(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use longwave::model::{DubovskyParams, Forcing, InitialConditions};
    use longwave::sim::{simulate, FractionalOrders, GridSpec, SchemeOptions};

    fn small_run() -> Trajectory {
        simulate(
            DubovskyParams::default(),
            FractionalOrders::new(0.8, 0.9).unwrap(),
            Forcing::Zero,
            InitialConditions::new(1.35, 0.5).unwrap(),
            GridSpec::new(2.0, 20).unwrap(),
            SchemeOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn format_shape() {
        let text = csv_text(&small_run());
        assert!(text.starts_with("t,x,y\n"));
        assert!(text.ends_with('\n'));
        assert!(!text.contains('\r'));
        assert_eq!(text.lines().count(), 22); // header + 21 nodes
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let traj = small_run();
        let text = csv_text(&traj);
        let back = parse_csv(&text, "test").unwrap();
        assert_eq!(back.len(), traj.len());
        for j in 0..traj.len() {
            assert_eq!(back.times()[j].to_bits(), traj.times()[j].to_bits());
            assert_eq!(back.xs()[j].to_bits(), traj.xs()[j].to_bits());
            assert_eq!(back.ys()[j].to_bits(), traj.ys()[j].to_bits());
        }
    }

    #[test]
    fn export_is_deterministic() {
        let traj = small_run();
        assert_eq!(csv_text(&traj), csv_text(&traj));
    }

    #[test]
    fn bad_header_is_rejected_with_line() {
        let err = parse_csv("time,x,y\n0,1,2\n", "in.csv").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 1"), "{msg}");
        assert!(msg.contains("t,x,y"), "{msg}");
    }

    #[test]
    fn bad_row_reports_line_number() {
        let err = parse_csv("t,x,y\n0.0,1.0,0.5\n0.1,oops,0.5\n0.2,1.0,0.5\n", "in.csv")
            .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "{msg}");
        assert!(msg.contains("oops"), "{msg}");

        let err = parse_csv("t,x,y\n0.0,1.0\n", "in.csv").unwrap_err();
        assert!(err.to_string().contains("expected 3"), "{}", err);
    }

    #[test]
    fn non_uniform_grid_is_rejected() {
        let err = parse_csv("t,x,y\n0.0,1.0,0.5\n0.1,1.0,0.5\n0.5,1.0,0.5\n", "in.csv")
            .unwrap_err();
        assert!(err.to_string().contains("uniform"), "{}", err);
    }
}
