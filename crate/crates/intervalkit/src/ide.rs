//! Interval differential equation solvers.
//!
//! An IDE `x' = f(t, x)`, `x(t0) = x0` reduces, in `(center, log_radius)`
//! coordinates, to the coupled real system
//!
//! ```text
//! u' = center of f(t, ⟨u; e^v⟩)      v' = log-radius of f(t, ⟨u; e^v⟩)
//! ```
//!
//! which [`solve_new`] integrates with fixed-step RK4. [`solve_picard`]
//! iterates the integral operator `x ↦ x0 + ∫ f(s, x(s)) ds` on the grid
//! instead. [`solve_gh`] integrates the classical endpoint systems for
//! user-declared gH branch patterns, and [`solve_param_sweep`] propagates
//! an envelope through the real ODE family obtained by replacing interval
//! constants with swept parameters.
//!
//! Sweep runs are independent; with the `parallel` feature they execute on
//! a rayon pool (capped by `INTERVALKIT_THREADS`, `0` = auto) and reduce
//! through pointwise min/max, so results are schedule-independent.

use crate::error::{Error, Result};
use crate::expr::{eval_endpoint_pair, eval_interval, eval_param, parse, ExprNode};
use crate::interval::{ExtendedInterval, Interval};
use crate::trajectory::{grids_match, uniform_grid, EndpointTrajectory, Trajectory};

/// Solution method selector for [`IdeProblem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Rk4,
    Picard,
    GhBranch,
    ParamSweep,
}

/// Differentiability type of one gH segment: `TypeI` integrates
/// `(x_l', x_r') = (f_l, f_r)`, `TypeII` integrates `(x_l', x_r') = (f_r, f_l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhSegment {
    TypeI,
    TypeII,
}

/// One gH branch: segment types separated by declared switching times.
/// Switching points are user obligations (for example the output of
/// `find_switching_points`); they are not auto-detected inside the loop.
#[derive(Debug, Clone, PartialEq)]
pub struct GhBranchSpec {
    pub switches: Vec<f64>,
    pub segments: Vec<GhSegment>,
}

impl GhBranchSpec {
    /// A single segment covering the whole time span.
    pub fn uniform(seg: GhSegment) -> GhBranchSpec {
        GhBranchSpec {
            switches: Vec::new(),
            segments: vec![seg],
        }
    }

    pub fn new(switches: Vec<f64>, segments: Vec<GhSegment>) -> GhBranchSpec {
        GhBranchSpec { switches, segments }
    }

    /// Every branch pattern over the given switching times: `2^(k+1)`
    /// specs for `k` switches. The count doubles with each added
    /// switching point, which is exactly why enumerating gH solutions
    /// gets expensive on long horizons.
    pub fn enumerate_all(switches: &[f64]) -> Vec<GhBranchSpec> {
        let n_seg = switches.len() + 1;
        (0..(1usize << n_seg))
            .map(|mask| {
                let segments = (0..n_seg)
                    .map(|i| {
                        if mask & (1 << i) == 0 {
                            GhSegment::TypeI
                        } else {
                            GhSegment::TypeII
                        }
                    })
                    .collect();
                GhBranchSpec {
                    switches: switches.to_vec(),
                    segments,
                }
            })
            .collect()
    }

    fn validate(&self, t0: f64, t_end: f64) -> Result<()> {
        if self.segments.len() != self.switches.len() + 1 {
            return Err(Error::Problem {
                message: format!(
                    "gh branch needs {} segment types for {} switches, got {}",
                    self.switches.len() + 1,
                    self.switches.len(),
                    self.segments.len()
                ),
            });
        }
        let mut prev = t0;
        for s in &self.switches {
            if !(prev < *s && *s < t_end) {
                return Err(Error::Problem {
                    message: format!("switch time {s} outside ({t0}, {t_end}) or out of order"),
                });
            }
            prev = *s;
        }
        Ok(())
    }

    fn segment_at(&self, t: f64) -> GhSegment {
        let idx = self.switches.iter().take_while(|s| **s < t).count();
        self.segments[idx.min(self.segments.len() - 1)]
    }
}

/// An interval differential equation with solver configuration.
#[derive(Debug, Clone)]
pub struct IdeProblem {
    pub rhs: ExprNode,
    pub t0: f64,
    pub t_end: f64,
    pub x0: Interval,
    pub method: Method,
    pub step: f64,
    pub picard_tol: f64,
    pub picard_max_iter: usize,
    pub sweep_density: usize,
    pub gh_branches: Vec<GhBranchSpec>,
}

impl IdeProblem {
    /// Parses the right-hand side and fills default configuration:
    /// RK4, step `1e-3`, Picard tolerance `1e-6` with 50 iterations,
    /// sweep density 9.
    pub fn new(rhs: &str, t0: f64, t_end: f64, x0: Interval) -> Result<IdeProblem> {
        Ok(IdeProblem {
            rhs: parse(rhs)?,
            t0,
            t_end,
            x0,
            method: Method::Rk4,
            step: 1e-3,
            picard_tol: 1e-6,
            picard_max_iter: 50,
            sweep_density: 9,
            gh_branches: Vec::new(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t0.is_finite() && self.t_end.is_finite() && self.t0 < self.t_end) {
            return Err(Error::Problem {
                message: format!("need t0 < t_end, got {} and {}", self.t0, self.t_end),
            });
        }
        let span = self.t_end - self.t0;
        if !(self.step > 0.0 && self.step <= span / 8.0) {
            return Err(Error::Problem {
                message: format!("step {} must be positive and at most span/8 = {}", self.step, span / 8.0),
            });
        }
        match self.method {
            Method::ParamSweep => {
                if self.sweep_density < 3 {
                    return Err(Error::Problem {
                        message: format!("sweep density must be at least 3, got {}", self.sweep_density),
                    });
                }
            }
            Method::GhBranch => {
                if self.gh_branches.is_empty() {
                    return Err(Error::Problem {
                        message: "gh_branch method needs at least one branch spec".into(),
                    });
                }
                for b in &self.gh_branches {
                    b.validate(self.t0, self.t_end)?;
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn grid(&self) -> Result<Vec<f64>> {
        uniform_grid(self.t0, self.t_end, self.step)
    }
}

fn rhs_err(t: f64) -> impl FnOnce(Error) -> Error {
    move |e| Error::RhsEvaluation {
        t,
        source: Box::new(e),
    }
}

fn rk4_step<const N: usize>(
    deriv: &mut dyn FnMut(f64, [f64; N]) -> Result<[f64; N]>,
    t: f64,
    h: f64,
    y: [f64; N],
) -> Result<[f64; N]> {
    let k1 = deriv(t, y)?;
    let k2 = deriv(t + 0.5 * h, axpy(y, 0.5 * h, k1))?;
    let k3 = deriv(t + 0.5 * h, axpy(y, 0.5 * h, k2))?;
    let k4 = deriv(t + h, axpy(y, h, k3))?;
    let mut out = y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Ok(out)
}

fn axpy<const N: usize>(y: [f64; N], a: f64, k: [f64; N]) -> [f64; N] {
    let mut out = y;
    for i in 0..N {
        out[i] += a * k[i];
    }
    out
}

/// Solves the IDE under the new calculus: RK4 on the reduced real system
/// in `(center, log_radius)` coordinates.
pub fn solve_new(p: &IdeProblem) -> Result<Trajectory> {
    p.validate()?;
    let grid = p.grid()?;
    let mut deriv = |t: f64, y: [f64; 2]| -> Result<[f64; 2]> {
        let x = Interval::from_center_log_radius(y[0], y[1]).map_err(rhs_err(t))?;
        let f = eval_interval(&p.rhs, t, x).map_err(rhs_err(t))?;
        Ok([f.center(), f.log_radius()])
    };
    let mut y = [p.x0.center(), p.x0.log_radius()];
    let mut values = Vec::with_capacity(grid.len());
    values.push(p.x0);
    for w in grid.windows(2) {
        y = rk4_step(&mut deriv, w[0], w[1] - w[0], y)?;
        values.push(Interval::from_center_log_radius(y[0], y[1]).map_err(|_| Error::NonFinite { t: w[1] })?);
    }
    Trajectory::new(grid, values)
}

/// Solves the IDE by Picard iteration of the integral operator
/// `x ↦ x0 + ∫ f(s, x(s)) ds` on the fixed grid, seeded with the constant
/// `x0` trajectory. Stops when successive iterates come within
/// `picard_tol` in the sup metric.
pub fn solve_picard(p: &IdeProblem) -> Result<Trajectory> {
    solve_picard_detailed(p).map(|(t, _, _)| t)
}

/// [`solve_picard`] plus the iteration count and final residual.
pub fn solve_picard_detailed(p: &IdeProblem) -> Result<(Trajectory, usize, f64)> {
    p.validate()?;
    let grid = p.grid()?;
    let n = grid.len();
    let h = grid[1] - grid[0];
    let mut cur_c = vec![p.x0.center(); n];
    let mut cur_r = vec![p.x0.log_radius(); n];
    let mut fc = vec![0.0; n];
    let mut fr = vec![0.0; n];
    let mut residual = f64::INFINITY;

    for iter in 1..=p.picard_max_iter {
        for i in 0..n {
            let x = Interval::from_center_log_radius(cur_c[i], cur_r[i])
                .map_err(rhs_err(grid[i]))?;
            let f = eval_interval(&p.rhs, grid[i], x).map_err(rhs_err(grid[i]))?;
            fc[i] = f.center();
            fr[i] = f.log_radius();
        }
        let ic = cumulative_simpson(&fc, h);
        let ir = cumulative_simpson(&fr, h);
        residual = 0.0f64;
        for i in 0..n {
            let nc = p.x0.center() + ic[i];
            let nr = p.x0.log_radius() + ir[i];
            residual = residual.max((nc - cur_c[i]).hypot(nr - cur_r[i]));
            cur_c[i] = nc;
            cur_r[i] = nr;
        }
        if residual < p.picard_tol {
            let traj = build_trajectory(grid, &cur_c, &cur_r)?;
            return Ok((traj, iter, residual));
        }
    }
    let last = build_trajectory(grid, &cur_c, &cur_r)?;
    Err(Error::NonConvergence {
        iterations: p.picard_max_iter,
        residual,
        last: Box::new(last),
    })
}

fn build_trajectory(grid: Vec<f64>, c: &[f64], r: &[f64]) -> Result<Trajectory> {
    let mut values = Vec::with_capacity(c.len());
    for (i, (&uc, &ur)) in c.iter().zip(r).enumerate() {
        values.push(
            Interval::from_center_log_radius(uc, ur).map_err(|_| Error::NonFinite { t: grid[i] })?,
        );
    }
    Trajectory::new(grid, values)
}

/// Cumulative composite Simpson on a uniform grid: even nodes take full
/// panels, odd nodes a three-point half panel; all values are O(h^4).
fn cumulative_simpson(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len() - 1;
    let mut out = vec![0.0; n + 1];
    for k in 1..=n {
        if k % 2 == 0 {
            out[k] = out[k - 2] + h / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
        } else if k < n {
            out[k] = out[k - 1] + h / 12.0 * (5.0 * f[k - 1] + 8.0 * f[k] - f[k + 1]);
        } else {
            out[k] = out[k - 1] + h / 12.0 * (-f[k - 2] + 8.0 * f[k - 1] + 5.0 * f[k]);
        }
    }
    out
}

/// One accepted gH branch solution.
#[derive(Debug, Clone)]
pub struct GhTrajectory {
    pub branch: GhBranchSpec,
    pub trajectory: EndpointTrajectory,
}

/// A branch discarded because its endpoints crossed.
#[derive(Debug, Clone)]
pub struct GhDiscarded {
    pub branch_index: usize,
    pub branch: GhBranchSpec,
    pub t_crossed: f64,
}

/// Result of [`solve_gh`]: accepted trajectories plus the discard report.
#[derive(Debug, Clone)]
pub struct GhSolution {
    pub trajectories: Vec<GhTrajectory>,
    pub discarded: Vec<GhDiscarded>,
}

/// Integrates the classical endpoint system for each requested branch
/// pattern. Branches whose endpoint pair crosses (`x_l > x_r` beyond
/// rounding slack) are discarded and reported with the first crossing
/// time. Errs with [`Error::BranchInfeasible`] when nothing survives.
pub fn solve_gh(p: &IdeProblem) -> Result<GhSolution> {
    p.validate()?;
    if p.gh_branches.is_empty() {
        return Err(Error::Problem {
            message: "solve_gh needs at least one branch spec".into(),
        });
    }
    let grid = p.grid()?;
    let mut solution = GhSolution {
        trajectories: Vec::new(),
        discarded: Vec::new(),
    };

    for (bi, branch) in p.gh_branches.iter().enumerate() {
        branch.validate(p.t0, p.t_end)?;
        match integrate_gh_branch(p, branch, &grid)? {
            Ok(values) => solution.trajectories.push(GhTrajectory {
                branch: branch.clone(),
                trajectory: EndpointTrajectory::new(grid.clone(), values)?,
            }),
            Err(t_crossed) => solution.discarded.push(GhDiscarded {
                branch_index: bi,
                branch: branch.clone(),
                t_crossed,
            }),
        }
    }

    if solution.trajectories.is_empty() {
        return Err(Error::BranchInfeasible {
            discarded: solution
                .discarded
                .iter()
                .map(|d| (d.branch_index, d.t_crossed))
                .collect(),
        });
    }
    Ok(solution)
}

/// `Ok(Ok(values))` on success, `Ok(Err(t))` when the branch crossed at `t`.
fn integrate_gh_branch(
    p: &IdeProblem,
    branch: &GhBranchSpec,
    grid: &[f64],
) -> Result<std::result::Result<Vec<ExtendedInterval>, f64>> {
    let deriv_for = |seg: GhSegment| {
        let rhs = &p.rhs;
        move |t: f64, y: [f64; 2]| -> Result<[f64; 2]> {
            // normalize tiny inversions so the endpoint evaluator stays
            // applicable right at a touching point
            let (lo, hi) = (y[0].min(y[1]), y[0].max(y[1]));
            let (fl, fr) = eval_endpoint_pair(rhs, t, lo, hi).map_err(rhs_err(t))?;
            Ok(match seg {
                GhSegment::TypeI => [fl, fr],
                GhSegment::TypeII => [fr, fl],
            })
        }
    };

    let mut y = [p.x0.lo(), p.x0.hi()];
    let mut values = Vec::with_capacity(grid.len());
    values.push(ExtendedInterval::new(y[0], y[1])?);

    for w in grid.windows(2) {
        // split the step at declared switching times falling inside it
        let mut pts = vec![w[0]];
        for s in &branch.switches {
            if w[0] < *s && *s < w[1] {
                pts.push(*s);
            }
        }
        pts.push(w[1]);
        for pair in pts.windows(2) {
            let seg = branch.segment_at(0.5 * (pair[0] + pair[1]));
            let mut d = deriv_for(seg);
            y = rk4_step(&mut d, pair[0], pair[1] - pair[0], y)?;
        }
        let slack = 1e-9 * (1.0 + y[0].abs() + y[1].abs());
        if y[0] - y[1] > slack {
            return Ok(Err(w[1]));
        }
        values.push(ExtendedInterval::new(y[0].min(y[1]), y[0].max(y[1]))?);
    }
    Ok(Ok(values))
}

/// Evenly spaced samples including both endpoints.
fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * (i as f64) / ((n - 1) as f64))
        .collect()
}

/// The sweep workhorse: solves the real ODE `u' = rhs(t, u; params)` for
/// every combination of initial value and parameter samples, and returns
/// the pointwise envelope `[min, max]` per grid node. The reduction is
/// associative and commutative, so sequential and parallel execution agree
/// bit for bit.
pub fn sweep_envelope(
    rhs: &ExprNode,
    grid: &[f64],
    x0_samples: &[f64],
    param_axes: &[Vec<f64>],
) -> Result<EndpointTrajectory> {
    if x0_samples.is_empty() || param_axes.iter().any(|a| a.is_empty()) {
        return Err(Error::Problem {
            message: "sweep needs at least one sample per axis".into(),
        });
    }
    let combos = combo_count(x0_samples, param_axes);
    let runs = run_sweep(rhs, grid, x0_samples, param_axes, combos)?;
    let n = grid.len();
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for path in &runs {
        for i in 0..n {
            lo[i] = lo[i].min(path[i]);
            hi[i] = hi[i].max(path[i]);
        }
    }
    let values = lo
        .iter()
        .zip(&hi)
        .map(|(&l, &h)| ExtendedInterval::new(l, h))
        .collect::<Result<Vec<_>>>()?;
    EndpointTrajectory::new(grid.to_vec(), values)
}

fn combo_count(x0_samples: &[f64], param_axes: &[Vec<f64>]) -> usize {
    x0_samples.len() * param_axes.iter().map(Vec::len).product::<usize>()
}

fn combo_inputs(
    idx: usize,
    x0_samples: &[f64],
    param_axes: &[Vec<f64>],
) -> (f64, Vec<f64>) {
    let mut k = idx;
    let a = x0_samples[k % x0_samples.len()];
    k /= x0_samples.len();
    let mut params = Vec::with_capacity(param_axes.len());
    for axis in param_axes {
        params.push(axis[k % axis.len()]);
        k /= axis.len();
    }
    (a, params)
}

fn solve_real_ode(rhs: &ExprNode, grid: &[f64], a: f64, params: &[f64]) -> Result<Vec<f64>> {
    let mut deriv = |t: f64, y: [f64; 1]| -> Result<[f64; 1]> {
        Ok([eval_param(rhs, t, y[0], params).map_err(rhs_err(t))?])
    };
    let mut y = [a];
    let mut path = Vec::with_capacity(grid.len());
    path.push(a);
    for w in grid.windows(2) {
        y = rk4_step(&mut deriv, w[0], w[1] - w[0], y)?;
        path.push(y[0]);
    }
    Ok(path)
}

#[cfg(feature = "parallel")]
fn run_sweep(
    rhs: &ExprNode,
    grid: &[f64],
    x0_samples: &[f64],
    param_axes: &[Vec<f64>],
    combos: usize,
) -> Result<Vec<Vec<f64>>> {
    use rayon::prelude::*;
    let work = || -> Result<Vec<Vec<f64>>> {
        (0..combos)
            .into_par_iter()
            .map(|idx| {
                let (a, params) = combo_inputs(idx, x0_samples, param_axes);
                solve_real_ode(rhs, grid, a, &params)
            })
            .collect()
    };
    match sweep_thread_cap() {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Problem {
                message: format!("thread pool: {e}"),
            })?
            .install(work),
        None => work(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_sweep(
    rhs: &ExprNode,
    grid: &[f64],
    x0_samples: &[f64],
    param_axes: &[Vec<f64>],
    combos: usize,
) -> Result<Vec<Vec<f64>>> {
    (0..combos)
        .map(|idx| {
            let (a, params) = combo_inputs(idx, x0_samples, param_axes);
            solve_real_ode(rhs, grid, a, &params)
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn sweep_thread_cap() -> Option<usize> {
    std::env::var("INTERVALKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|n| *n > 0)
}

/// Sequential sweep regardless of the `parallel` feature; the reference
/// path for the benchmark comparison.
pub fn solve_param_sweep_seq(p: &IdeProblem) -> Result<EndpointTrajectory> {
    p.validate()?;
    let grid = p.grid()?;
    let (x0s, axes) = sweep_axes(p)?;
    let combos = combo_count(&x0s, &axes);
    let runs: Result<Vec<Vec<f64>>> = (0..combos)
        .map(|idx| {
            let (a, params) = combo_inputs(idx, &x0s, &axes);
            solve_real_ode(&p.rhs, &grid, a, &params)
        })
        .collect();
    envelope_from_runs(&grid, &runs?)
}

/// Data-parallel sweep over the rayon pool.
#[cfg(feature = "parallel")]
pub fn solve_param_sweep_par(p: &IdeProblem) -> Result<EndpointTrajectory> {
    p.validate()?;
    let grid = p.grid()?;
    let (x0s, axes) = sweep_axes(p)?;
    sweep_envelope(&p.rhs, &grid, &x0s, &axes)
}

/// Parameter-sweep envelope: interval literals and the initial interval
/// each become a sampled axis (`sweep_density` points, endpoints
/// included — envelopes of nonlinear flows need interior samples too).
pub fn solve_param_sweep(p: &IdeProblem) -> Result<EndpointTrajectory> {
    #[cfg(feature = "parallel")]
    {
        solve_param_sweep_par(p)
    }
    #[cfg(not(feature = "parallel"))]
    {
        solve_param_sweep_seq(p)
    }
}

fn sweep_axes(p: &IdeProblem) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    if p.sweep_density < 3 {
        return Err(Error::Problem {
            message: format!("sweep density must be at least 3, got {}", p.sweep_density),
        });
    }
    let x0s = linspace(p.x0.lo(), p.x0.hi(), p.sweep_density);
    let axes = p
        .rhs
        .literal_bounds()
        .iter()
        .map(|(lo, hi)| linspace(*lo, *hi, p.sweep_density))
        .collect();
    Ok((x0s, axes))
}

fn envelope_from_runs(grid: &[f64], runs: &[Vec<f64>]) -> Result<EndpointTrajectory> {
    let n = grid.len();
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for path in runs {
        for i in 0..n {
            lo[i] = lo[i].min(path[i]);
            hi[i] = hi[i].max(path[i]);
        }
    }
    let values = lo
        .iter()
        .zip(&hi)
        .map(|(&l, &h)| ExtendedInterval::new(l, h))
        .collect::<Result<Vec<_>>>()?;
    EndpointTrajectory::new(grid.to_vec(), values)
}

/// Sup deviation between one pair of trajectories.
#[derive(Debug, Clone, Copy)]
pub struct PairDeviation {
    pub first: usize,
    pub second: usize,
    pub sup: f64,
}

/// Pairwise endpoint deviations over a shared grid.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    grid: Vec<f64>,
    pairs: Vec<PairDeviation>,
    per_node: Vec<Vec<f64>>,
}

impl ComparisonReport {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn pairs(&self) -> &[PairDeviation] {
        &self.pairs
    }

    /// Per-node deviations for pair `k`, aligned with the grid.
    pub fn per_node(&self, k: usize) -> &[f64] {
        &self.per_node[k]
    }

    /// CSV rows `t,dev_i_j,...` with one column per compared pair.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t");
        for p in &self.pairs {
            s.push_str(&format!(",dev_{}_{}", p.first, p.second));
        }
        s.push('\n');
        for (i, t) in self.grid.iter().enumerate() {
            s.push_str(&format!("{t:.16e}"));
            for col in &self.per_node {
                s.push_str(&format!(",{:.16e}", col[i]));
            }
            s.push('\n');
        }
        s
    }
}

/// Compares trajectories pairwise: sup over nodes of
/// `max(|lo_i - lo_j|, |hi_i - hi_j|)`.
pub fn compare(trajs: &[EndpointTrajectory]) -> Result<ComparisonReport> {
    let Some(first) = trajs.first() else {
        return Err(Error::Problem {
            message: "compare needs at least one trajectory".into(),
        });
    };
    for t in trajs.iter().skip(1) {
        if !grids_match(first.grid(), t.grid()) {
            return Err(Error::GridMismatch);
        }
    }
    let mut pairs = Vec::new();
    let mut per_node = Vec::new();
    for i in 0..trajs.len() {
        for j in (i + 1)..trajs.len() {
            let devs: Vec<f64> = trajs[i]
                .values()
                .iter()
                .zip(trajs[j].values())
                .map(|(a, b)| {
                    (a.lo() - b.lo())
                        .abs()
                        .max((a.hi() - b.hi()).abs())
                })
                .collect();
            let sup = devs.iter().cloned().fold(0.0, f64::max);
            pairs.push(PairDeviation {
                first: i,
                second: j,
                sup,
            });
            per_node.push(devs);
        }
    }
    Ok(ComparisonReport {
        grid: first.grid().to_vec(),
        pairs,
        per_node,
    })
}

/// Sup distance between an interval trajectory and another, in the
/// interval metric. Convenience re-export for solver comparisons.
pub fn sup_metric_distance(a: &Trajectory, b: &Trajectory) -> Result<f64> {
    crate::metric::sup_distance(a, b)
}

/// Closed-form reference solutions used by tests and the selftest suite.
pub mod reference {
    /// Solves `w + w^3/3 = q` by the Cardano resolvent: with
    /// `ξ = (3q/2 + sqrt(9q²/4 + 1))^{1/3}`, the root is `ξ - 1/ξ`.
    pub fn depressed_cubic_root(q: f64) -> f64 {
        let half = 1.5 * q;
        let xi = (half + (half * half + 1.0).sqrt()).cbrt();
        xi - 1.0 / xi
    }

    /// Center/log-radius closed form for `x' = [1,2]t/(1+x²)`, `x(0) = [-1,1]`:
    /// `u + u³/3 = 3t²/4` and `v + v³/3 = -(ln2/2) t²`.
    pub fn rational_rhs_center_rho(t: f64) -> (f64, f64) {
        let u = depressed_cubic_root(0.75 * t * t);
        let v = depressed_cubic_root(-0.5 * 2.0f64.ln() * t * t);
        (u, v)
    }

    /// Same problem with sin forcing and `x(0) = [1,3]`:
    /// `u + u³/3 = 3(1-cos t)/2 + 14/3`, `v + v³/3 = (cos t - 1) ln 2`.
    pub fn sin_forcing_center_rho(t: f64) -> (f64, f64) {
        let u = depressed_cubic_root(1.5 * (1.0 - t.cos()) + 14.0 / 3.0);
        let v = depressed_cubic_root((t.cos() - 1.0) * 2.0f64.ln());
        (u, v)
    }

    /// Closed form for `x' = x sin t`, `x(0) = [1,2]` under the new
    /// calculus: center `(3/2)e^{1-cos t}`, radius `2^{-e^{1-cos t}}`.
    pub fn sin_growth_center_radius(t: f64) -> (f64, f64) {
        let g = (1.0 - t.cos()).exp();
        (1.5 * g, 2.0f64.powf(-g))
    }

    /// The four gH branch solutions of `x'_gH = x ⊙ sin t`, `x(0) = [1,2]`
    /// on `[0, 6]` (switch at π where applicable), endpoint form.
    pub fn sin_growth_gh(branch: usize, t: f64) -> (f64, f64) {
        use std::f64::consts::PI;
        let g = (1.0 - t.cos()).exp(); // e^{1-cos t}
        match branch {
            // type I then type II at π
            0 => (g, 2.0 * g),
            // type II then type I at π
            1 => {
                let d = (t.cos() - 1.0).exp();
                (1.5 * g - 0.5 * d, 1.5 * g + 0.5 * d)
            }
            // type I throughout
            2 => {
                if t <= PI {
                    (g, 2.0 * g)
                } else {
                    let d = (3.0 + t.cos()).exp();
                    (1.5 * g - 0.5 * d, 1.5 * g + 0.5 * d)
                }
            }
            // type II throughout
            _ => {
                if t <= PI {
                    let d = (t.cos() - 1.0).exp();
                    (1.5 * g - 0.5 * d, 1.5 * g + 0.5 * d)
                } else {
                    let d = (-3.0 - t.cos()).exp();
                    (1.5 * g - 0.5 * d, 1.5 * g + 0.5 * d)
                }
            }
        }
    }

    /// gH branch solutions of `x'_gH = -1 ⊙ x ⊕ [1,2] ⊙ t`, `x(0) = [0,1]`:
    /// branch 0 is type I throughout, branch 1 switches type II → type I
    /// at `t = 1`.
    pub fn linear_gh(branch: usize, t: f64) -> (f64, f64) {
        match branch {
            0 => (
                2.0 * t - t.exp() + 2.0 * (-t).exp() - 1.0,
                t + t.exp() + 2.0 * (-t).exp() - 2.0,
            ),
            _ => {
                if t <= 1.0 {
                    (2.0 * t + 2.0 * (-t).exp() - 2.0, t + 2.0 * (-t).exp() - 1.0)
                } else {
                    (
                        2.0 * t - (t - 1.0).exp() + 2.0 * (-t).exp() - 1.0,
                        t + (t - 1.0).exp() + 2.0 * (-t).exp() - 2.0,
                    )
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn max_endpoint_dev(traj: &Trajectory, f: impl Fn(f64) -> (f64, f64)) -> f64 {
        traj.grid()
            .iter()
            .zip(traj.values())
            .map(|(&t, v)| {
                let (c, r) = f(t);
                let lo = c - r;
                let hi = c + r;
                (v.lo() - lo).abs().max((v.hi() - hi).abs())
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn zero_rhs_is_constant() {
        let mut p = IdeProblem::new("[-1,1]", 0.0, 1.0, Interval::from_endpoints(2.0, 5.0).unwrap()).unwrap();
        p.step = 0.05;
        let traj = solve_new(&p).unwrap();
        for v in traj.values() {
            assert!(distance(*v, p.x0) < 1e-12);
        }
        p.method = Method::Picard;
        let pic = solve_picard(&p).unwrap();
        assert!(sup_metric_distance(&traj, &pic).unwrap() < 1e-12);
    }

    #[test]
    fn rational_rhs_matches_closed_form() {
        let mut p = IdeProblem::new(
            "[1,2]*t/(1+x^2)",
            0.0,
            4.0,
            Interval::from_endpoints(-1.0, 1.0).unwrap(),
        )
        .unwrap();
        p.step = 4e-3;
        let traj = solve_new(&p).unwrap();
        let dev = max_endpoint_dev(&traj, |t| {
            let (u, v) = reference::rational_rhs_center_rho(t);
            (u, v.exp())
        });
        assert!(dev < 1e-7, "deviation {dev}");

        // algebraic residual of the reduced center equation
        for (t, v) in traj.grid().iter().zip(traj.values()) {
            let u = v.center();
            let res = u + u * u * u / 3.0 - 0.75 * t * t;
            assert!(res.abs() < 1e-8, "residual {res} at t = {t}");
        }
    }

    #[test]
    fn picard_agrees_with_rk4() {
        let mut p = IdeProblem::new(
            "x*sin(t)",
            0.0,
            6.0,
            Interval::from_endpoints(1.0, 2.0).unwrap(),
        )
        .unwrap();
        p.step = 5e-3;
        let rk = solve_new(&p).unwrap();
        let pic = solve_picard(&p).unwrap();
        assert!(sup_metric_distance(&rk, &pic).unwrap() < 1e-4);
    }

    #[test]
    fn picard_reports_nonconvergence() {
        let mut p = IdeProblem::new(
            "x*sin(t)",
            0.0,
            6.0,
            Interval::from_endpoints(1.0, 2.0).unwrap(),
        )
        .unwrap();
        p.step = 0.05;
        p.picard_max_iter = 1;
        match solve_picard(&p) {
            Err(Error::NonConvergence { residual, last, .. }) => {
                assert!(residual > 0.0);
                assert_eq!(last.len(), 121);
            }
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }

    #[test]
    fn gh_linear_branches() {
        let mut p = IdeProblem::new(
            "-x+[1,2]*t",
            0.0,
            3.0,
            Interval::from_endpoints(0.0, 1.0).unwrap(),
        )
        .unwrap();
        p.step = 2e-3;
        p.method = Method::GhBranch;
        p.gh_branches = vec![
            GhBranchSpec::uniform(GhSegment::TypeI),
            GhBranchSpec::new(vec![1.0], vec![GhSegment::TypeII, GhSegment::TypeI]),
            GhBranchSpec::uniform(GhSegment::TypeII),
        ];
        let sol = solve_gh(&p).unwrap();
        assert_eq!(sol.trajectories.len(), 2);
        assert_eq!(sol.discarded.len(), 1);
        assert!((sol.discarded[0].t_crossed - 1.0).abs() < 0.05);

        for (k, gt) in sol.trajectories.iter().enumerate() {
            let dev = gt
                .trajectory
                .grid()
                .iter()
                .zip(gt.trajectory.values())
                .map(|(&t, v)| {
                    let (lo, hi) = reference::linear_gh(k, t);
                    (v.lo() - lo).abs().max((v.hi() - hi).abs())
                })
                .fold(0.0, f64::max);
            assert!(dev < 1e-6, "branch {k} deviation {dev}");
        }
    }

    #[test]
    fn gh_null_rhs_keeps_both_branches_constant() {
        let mut p = IdeProblem::new(
            "smul(0,x)",
            0.0,
            1.0,
            Interval::from_endpoints(2.0, 5.0).unwrap(),
        )
        .unwrap();
        p.step = 0.05;
        p.method = Method::GhBranch;
        p.gh_branches = GhBranchSpec::enumerate_all(&[]);
        let sol = solve_gh(&p).unwrap();
        assert_eq!(sol.trajectories.len(), 2);
        for gt in &sol.trajectories {
            for v in gt.trajectory.values() {
                assert_eq!(v.to_endpoints(), p.x0.to_endpoints());
            }
        }
    }

    #[test]
    fn gh_branch_count_doubles_per_switch() {
        assert_eq!(GhBranchSpec::enumerate_all(&[]).len(), 2);
        assert_eq!(GhBranchSpec::enumerate_all(&[1.0]).len(), 4);
        assert_eq!(GhBranchSpec::enumerate_all(&[1.0, 2.0]).len(), 8);

        // the full enumeration over the one switch of the sin problem
        // yields exactly the four known solutions
        let mut p = IdeProblem::new(
            "x*sin(t)",
            0.0,
            6.0,
            Interval::from_endpoints(1.0, 2.0).unwrap(),
        )
        .unwrap();
        p.step = 0.01;
        p.method = Method::GhBranch;
        p.gh_branches = GhBranchSpec::enumerate_all(&[std::f64::consts::PI]);
        let sol = solve_gh(&p).unwrap();
        assert_eq!(sol.trajectories.len(), 4);
        assert!(sol.discarded.is_empty());
    }

    #[test]
    fn gh_all_infeasible_is_an_error() {
        let mut p = IdeProblem::new(
            "-x+[1,2]*t",
            0.0,
            3.0,
            Interval::from_endpoints(0.0, 1.0).unwrap(),
        )
        .unwrap();
        p.step = 0.01;
        p.method = Method::GhBranch;
        p.gh_branches = vec![GhBranchSpec::uniform(GhSegment::TypeII)];
        assert!(matches!(
            solve_gh(&p),
            Err(Error::BranchInfeasible { .. })
        ));
    }

    #[test]
    fn sweep_envelope_examples() {
        // x' = x sin t with only the initial value swept:
        // envelope [e^{1-cos t}, 2 e^{1-cos t}]
        let mut p = IdeProblem::new(
            "x*sin(t)",
            0.0,
            6.0,
            Interval::from_endpoints(1.0, 2.0).unwrap(),
        )
        .unwrap();
        p.step = 5e-3;
        p.method = Method::ParamSweep;
        p.sweep_density = 5;
        let env = solve_param_sweep(&p).unwrap();
        let dev = env
            .grid()
            .iter()
            .zip(env.values())
            .map(|(&t, v)| {
                let g = (1.0 - t.cos()).exp();
                (v.lo() - g).abs().max((v.hi() - 2.0 * g).abs())
            })
            .fold(0.0, f64::max);
        assert!(dev < 1e-6, "envelope deviation {dev}");

        // degenerate sweep: one sample, no parameters → lo == hi
        let grid = uniform_grid(0.0, 1.0, 0.05).unwrap();
        let rhs = parse("t").unwrap();
        let single = sweep_envelope(&rhs, &grid, &[0.25], &[]).unwrap();
        for v in single.values() {
            assert_eq!(v.lo(), v.hi());
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn sweep_parallel_matches_sequential_bitwise() {
        let mut p = IdeProblem::new(
            "[1,2]*t/(1+x^2)",
            0.0,
            2.0,
            Interval::from_endpoints(-1.0, 1.0).unwrap(),
        )
        .unwrap();
        p.step = 0.01;
        p.method = Method::ParamSweep;
        p.sweep_density = 4;
        let par = solve_param_sweep_par(&p).unwrap();
        let seq = solve_param_sweep_seq(&p).unwrap();
        assert_eq!(par, seq);
    }

    #[test]
    fn compare_reports_pairs() {
        let grid = uniform_grid(0.0, 1.0, 0.25).unwrap();
        let mk = |shift: f64| {
            let values = grid
                .iter()
                .map(|t| ExtendedInterval::new(t - 1.0 + shift, t + 1.0 + shift).unwrap())
                .collect();
            EndpointTrajectory::new(grid.clone(), values).unwrap()
        };
        let a = mk(0.0);
        let same = compare(&[a.clone(), a.clone()]).unwrap();
        assert_eq!(same.pairs().len(), 1);
        assert_eq!(same.pairs()[0].sup, 0.0);

        let three = compare(&[a.clone(), mk(0.5), mk(-0.25)]).unwrap();
        assert_eq!(three.pairs().len(), 3);
        assert!((three.pairs()[0].sup - 0.5).abs() < 1e-15);
        assert!((three.pairs()[2].sup - 0.75).abs() < 1e-15);
        assert!(three.to_csv().starts_with("t,dev_0_1,dev_0_2,dev_1_2"));

        let other = EndpointTrajectory::new(
            uniform_grid(0.0, 2.0, 0.5).unwrap(),
            vec![ExtendedInterval::degenerate(0.0); 5],
        )
        .unwrap();
        assert!(matches!(compare(&[a, other]), Err(Error::GridMismatch)));
    }

    #[test]
    fn rk4_halving_is_fourth_order() {
        let mut p = IdeProblem::new(
            "[1,2]*t/(1+x^2)",
            0.0,
            4.0,
            Interval::from_endpoints(-1.0, 1.0).unwrap(),
        )
        .unwrap();
        p.step = 0.04;
        let coarse = solve_new(&p).unwrap();
        p.step = 0.02;
        let fine = solve_new(&p).unwrap();
        let exact = |t: f64| {
            let (u, v) = reference::rational_rhs_center_rho(t);
            (u, v.exp())
        };
        let e1 = max_endpoint_dev(&coarse, exact);
        let e2 = max_endpoint_dev(&fine, exact);
        let ratio = e1 / e2;
        assert!(
            (12.0..=20.0).contains(&ratio),
            "error ratio {ratio} (coarse {e1:.3e}, fine {e2:.3e})"
        );
    }

    use crate::expr::parse;
    use crate::metric::distance;
    use crate::trajectory::uniform_grid;

    #[test]
    fn sin_growth_matches_closed_form() {
        let mut p = IdeProblem::new(
            "x*sin(t)",
            0.0,
            6.0,
            Interval::from_endpoints(1.0, 2.0).unwrap(),
        )
        .unwrap();
        p.step = 5e-3;
        let traj = solve_new(&p).unwrap();
        let dev = max_endpoint_dev(&traj, reference::sin_growth_center_radius);
        assert!(dev < 1e-7, "deviation {dev}");
    }

    #[test]
    fn gh_sin_growth_four_branches() {
        let mut p = IdeProblem::new(
            "x*sin(t)",
            0.0,
            6.0,
            Interval::from_endpoints(1.0, 2.0).unwrap(),
        )
        .unwrap();
        p.step = 1e-3;
        p.method = Method::GhBranch;
        p.gh_branches = vec![
            GhBranchSpec::new(vec![PI], vec![GhSegment::TypeI, GhSegment::TypeII]),
            GhBranchSpec::new(vec![PI], vec![GhSegment::TypeII, GhSegment::TypeI]),
            GhBranchSpec::uniform(GhSegment::TypeI),
            GhBranchSpec::uniform(GhSegment::TypeII),
        ];
        let sol = solve_gh(&p).unwrap();
        assert_eq!(sol.trajectories.len(), 4);
        for (k, gt) in sol.trajectories.iter().enumerate() {
            let dev = gt
                .trajectory
                .grid()
                .iter()
                .zip(gt.trajectory.values())
                .map(|(&t, v)| {
                    let (lo, hi) = reference::sin_growth_gh(k, t);
                    (v.lo() - lo).abs().max((v.hi() - hi).abs())
                })
                .fold(0.0, f64::max);
            assert!(dev < 1e-6, "branch {k} deviation {dev}");
        }
    }
}
