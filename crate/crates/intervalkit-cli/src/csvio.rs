//! Trajectory CSV format: header `t,x_l,x_r,x_c,x_w`, one row per grid
//! node, every field rendered with 17 significant digits so values
//! round-trip exactly.

use std::fs;
use std::path::Path;

use intervalkit::interval::ExtendedInterval;
use intervalkit::trajectory::EndpointTrajectory;

pub const HEADER: &str = "t,x_l,x_r,x_c,x_w";

#[derive(Debug)]
pub struct CsvError {
    pub message: String,
}

impl std::fmt::Display for CsvError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

fn fail<T>(message: impl Into<String>) -> Result<T, CsvError> {
    Err(CsvError {
        message: message.into(),
    })
}

pub fn to_csv_string(traj: &EndpointTrajectory) -> String {
    let mut s = String::with_capacity(traj.len() * 96 + HEADER.len() + 1);
    s.push_str(HEADER);
    s.push('\n');
    for (t, v) in traj.grid().iter().zip(traj.values()) {
        s.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            t,
            v.lo(),
            v.hi(),
            v.center(),
            v.radius()
        ));
    }
    s
}

pub fn write_trajectory(path: &Path, traj: &EndpointTrajectory) -> Result<(), CsvError> {
    fs::write(path, to_csv_string(traj))
        .map_err(|e| CsvError {
            message: format!("write {}: {e}", path.display()),
        })
}

pub fn read_trajectory(path: &Path) -> Result<EndpointTrajectory, CsvError> {
    let text = fs::read_to_string(path).map_err(|e| CsvError {
        message: format!("read {}: {e}", path.display()),
    })?;
    parse_csv(&text).map_err(|e| CsvError {
        message: format!("{}: {}", path.display(), e.message),
    })
}

pub fn parse_csv(text: &str) -> Result<EndpointTrajectory, CsvError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == HEADER => {}
        other => return fail(format!("expected header `{HEADER}`, got {other:?}")),
    }
    let mut grid = Vec::new();
    let mut values = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return fail(format!("row {}: expected 5 fields, got {}", idx + 2, fields.len()));
        }
        let mut nums = [0.0f64; 5];
        for (k, f) in fields.iter().enumerate() {
            nums[k] = f.trim().parse().map_err(|_| CsvError {
                message: format!("row {}: bad number `{f}`", idx + 2),
            })?;
        }
        let (t, lo, hi) = (nums[0], nums[1], nums[2]);
        if let Some(prev) = grid.last() {
            if t <= *prev {
                return fail(format!("row {}: t column is not increasing", idx + 2));
            }
        }
        if lo > hi {
            return fail(format!("row {}: x_l > x_r", idx + 2));
        }
        grid.push(t);
        values.push(ExtendedInterval::new(lo, hi).map_err(|e| CsvError {
            message: format!("row {}: {e}", idx + 2),
        })?);
    }
    EndpointTrajectory::new(grid, values).map_err(|e| CsvError {
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use intervalkit::trajectory::uniform_grid;

    #[test]
    fn csv_round_trip_is_exact() {
        let grid = uniform_grid(0.0, 1.0, 0.125).unwrap();
        let values = grid
            .iter()
            .map(|t| ExtendedInterval::new(t.sin() - 1.0, t.exp()).unwrap())
            .collect();
        let traj = EndpointTrajectory::new(grid, values).unwrap();
        let text = to_csv_string(&traj);
        let back = parse_csv(&text).unwrap();
        assert_eq!(traj, back);
        // byte-identical re-render
        assert_eq!(text, to_csv_string(&back));
    }

    #[test]
    fn rejects_malformed_rows() {
        assert!(parse_csv("nope\n").is_err());
        assert!(parse_csv(&format!("{HEADER}\n1,2\n")).is_err());
        assert!(parse_csv(&format!("{HEADER}\n0,2,1,1.5,0.5\n")).is_err());
    }
}
