//! Time-gridded interval trajectories, the output of the IDE solvers.

use crate::error::{Error, Result};
use crate::interval::{ExtendedInterval, Interval};

/// Builds the uniform grid `t0, t0 + h, ..., t_end` with `n = round(span/step)`
/// panels; the effective step is `span / n`, which reproduces `t_end` exactly
/// at the last node.
pub fn uniform_grid(t0: f64, t_end: f64, step: f64) -> Result<Vec<f64>> {
    if !(t0.is_finite() && t_end.is_finite() && t0 < t_end) {
        return Err(Error::Problem {
            message: format!("need t0 < t_end, got {t0} and {t_end}"),
        });
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::Problem {
            message: format!("step must be positive, got {step}"),
        });
    }
    let span = t_end - t0;
    let n = (span / step).round().max(1.0) as usize;
    let mut grid = Vec::with_capacity(n + 1);
    for i in 0..=n {
        grid.push(t0 + span * (i as f64) / (n as f64));
    }
    grid[n] = t_end;
    Ok(grid)
}

pub(crate) fn grids_match(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| (x - y).abs() <= 4.0 * f64::EPSILON * x.abs().max(y.abs()).max(1.0))
}

/// A uniform time grid with one non-degenerate [`Interval`] per node.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    grid: Vec<f64>,
    values: Vec<Interval>,
}

impl Trajectory {
    pub fn new(grid: Vec<f64>, values: Vec<Interval>) -> Result<Trajectory> {
        check_grid(&grid, values.len())?;
        Ok(Trajectory { grid, values })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[Interval] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn to_endpoints(&self) -> EndpointTrajectory {
        EndpointTrajectory {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| (*v).into()).collect(),
        }
    }
}

/// A uniform time grid with one endpoint pair per node; used for gH and
/// parameter-sweep outputs, where values may degenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointTrajectory {
    grid: Vec<f64>,
    values: Vec<ExtendedInterval>,
}

impl EndpointTrajectory {
    pub fn new(grid: Vec<f64>, values: Vec<ExtendedInterval>) -> Result<EndpointTrajectory> {
        check_grid(&grid, values.len())?;
        Ok(EndpointTrajectory { grid, values })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[ExtendedInterval] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

fn check_grid(grid: &[f64], n_values: usize) -> Result<()> {
    if grid.len() != n_values || grid.len() < 2 {
        return Err(Error::Problem {
            message: format!(
                "grid has {} nodes but {} values",
                grid.len(),
                n_values
            ),
        });
    }
    let h = grid[1] - grid[0];
    if h <= 0.0 {
        return Err(Error::Problem {
            message: "grid is not increasing".into(),
        });
    }
    for w in grid.windows(2) {
        let step = w[1] - w[0];
        if (step - h).abs() > 4.0 * f64::EPSILON * (1.0 + w[1].abs()) {
            return Err(Error::Problem {
                message: "grid is not uniform".into(),
            });
        }
    }
    Ok(())
}
