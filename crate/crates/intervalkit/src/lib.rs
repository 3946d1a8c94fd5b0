//! intervalkit: a validated-numerics library for an interval calculus in
//! which interval numbers form a true linear space.
//!
//! Intervals are stored as `(center, log_radius)`; in these coordinates the
//! linear-space arithmetic is componentwise real arithmetic, the metric is
//! the Euclidean plane metric, and the derivative and integral of an
//! interval-valued function split into a classical operation on the center
//! and a multiplicative one on the radius. The classical Moore/gH endpoint
//! toolchain is implemented alongside for comparison.
//!
//! Modules:
//!
//! - [`interval`]: the interval type, both arithmetic families, orderings.
//! - [`metric`]: distance, norm, inner product, sup metric, limit checks.
//! - [`expr`]: the expression language (parser plus three evaluators).
//! - [`calculus`]: derivative, gH-derivative, switching points, continuity.
//! - [`quadrature`]: interval Riemann integral and calculus-rule verifiers.
//! - [`ide`]: interval differential equation solvers and trajectory
//!   comparison; the parameter sweep runs data-parallel under the
//!   `parallel` feature (on by default) and sequentially otherwise.
//! - [`selftest`]: the reference-example check suite behind the CLI
//!   `selftest` subcommand.

pub mod calculus;
pub mod error;
pub mod expr;
pub mod ide;
pub mod interval;
pub mod metric;
pub mod quadrature;
pub mod selftest;
pub mod trajectory;

pub use error::{Error, Result};
pub use interval::{ExtendedInterval, Interval, OrderRelation};
