//! Distance, norm, and inner product on interval numbers.
//!
//! `(center, log_radius)` coordinates identify the interval space with the
//! Euclidean plane: the distance below is the plane distance, the norm the
//! plane norm, and the inner product the plane dot product. The sup metric
//! on trajectories and a finite-sequence limit check are built on top.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::trajectory::{grids_match, Trajectory};

/// `d(a, b) = sqrt((a_c - b_c)^2 + (ln a_w - ln b_w)^2)`.
pub fn distance(a: Interval, b: Interval) -> f64 {
    let dc = a.center() - b.center();
    let dr = a.log_radius() - b.log_radius();
    dc.hypot(dr)
}

/// `‖a‖ = d(a, 0̄) = sqrt(a_c^2 + ln^2 a_w)`.
pub fn norm(a: Interval) -> f64 {
    a.center().hypot(a.log_radius())
}

/// Inner product `a ⋄ b = a_c b_c + ln a_w · ln b_w`; the norm is induced
/// from it.
pub fn inner(a: Interval, b: Interval) -> f64 {
    a.center() * b.center() + a.log_radius() * b.log_radius()
}

/// The metric quantities for one pair of intervals.
#[derive(Debug, Clone, Copy)]
pub struct MetricReport {
    pub distance: f64,
    pub norm_a: f64,
    pub norm_b: f64,
    pub inner: f64,
}

impl MetricReport {
    pub fn new(a: Interval, b: Interval) -> MetricReport {
        MetricReport {
            distance: distance(a, b),
            norm_a: norm(a),
            norm_b: norm(b),
            inner: inner(a, b),
        }
    }
}

/// Sup metric over shared grid nodes: `max_i d(x_i, y_i)`.
pub fn sup_distance(x: &Trajectory, y: &Trajectory) -> Result<f64> {
    if !grids_match(x.grid(), y.grid()) {
        return Err(Error::GridMismatch);
    }
    Ok(x.values()
        .iter()
        .zip(y.values())
        .map(|(a, b)| distance(*a, *b))
        .fold(0.0, f64::max))
}

/// Finite-sequence limit heuristic: the last element must be within `tol`
/// of the candidate and the distances must be non-increasing over the final
/// quarter of the sequence. True limits are not decidable from samples;
/// this is the practical stand-in.
///
/// # Panics
///
/// Panics when `seq` is empty.
pub fn check_limit(seq: &[Interval], candidate: Interval, tol: f64) -> bool {
    assert!(!seq.is_empty(), "check_limit needs a non-empty sequence");
    let d: Vec<f64> = seq.iter().map(|a| distance(*a, candidate)).collect();
    if *d.last().unwrap() >= tol {
        return false;
    }
    let start = (3 * d.len()) / 4;
    d[start..]
        .windows(2)
        .all(|w| w[1] <= w[0] + 1e-12 * (1.0 + w[0]))
}
