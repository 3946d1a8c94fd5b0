//! Error type shared across the crate.

use crate::trajectory::Trajectory;

/// Errors produced by interval arithmetic, expression evaluation, the
/// calculus engines, and the IDE solvers.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An interval constructor received endpoints with `lo >= hi`.
    /// Degenerate intervals are not representable in the strict type.
    #[error("degenerate interval: lo = {lo}, hi = {hi} (need lo < hi)")]
    DegenerateInterval { lo: f64, hi: f64 },

    /// An arithmetic result had a non-finite component.
    #[error("overflow: result component is not finite")]
    Overflow,

    /// Reciprocal undefined: the operand has center 0 or radius 1
    /// (within the division tolerance).
    #[error("interval is not invertible (center or log-radius within 1e-12 of zero)")]
    NotInvertible,

    /// Division undefined: the divisor has center 0 or radius 1
    /// (within the division tolerance).
    #[error("division undefined (divisor center or log-radius within 1e-12 of zero)")]
    DivisionUndefined,

    /// Classical endpoint division with a divisor spanning zero.
    #[error("classical division by an interval spanning zero")]
    MooreDivByZeroSpanning,

    /// Hukuhara difference does not exist (left radius smaller than right).
    #[error("Hukuhara difference does not exist (minuend narrower than subtrahend)")]
    HDiffNotExists,

    /// Two trajectories do not share the same time grid.
    #[error("trajectory grids do not match")]
    GridMismatch,

    /// Expression text failed to parse.
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    /// An operand had the wrong kind (e.g. a transcendental applied to an
    /// interval, or a classical scalar product without a real factor).
    #[error("type error: {message}")]
    TypeError { message: String },

    /// A sweep parameter fell outside its interval literal.
    #[error("parameter {index} = {value} outside its literal's endpoints")]
    ParamOutOfRange { index: usize, value: f64 },

    /// Wrong number of sweep parameters for the expression.
    #[error("expected {expected} parameters, got {got}")]
    ParamArityMismatch { expected: usize, got: usize },

    /// Differentiation requested too close to the domain boundary.
    #[error("t = {t} is within the finite-difference margin of the domain boundary")]
    DomainBoundary { t: f64 },

    /// A sample of an interval-valued function was not finite.
    #[error("non-finite sample at t = {t}")]
    NonFinite { t: f64 },

    /// One-sided derivative probes disagree: no two-sided derivative exists.
    #[error("function is not differentiable at t = {t} (one-sided probes disagree)")]
    NonDifferentiable { t: f64 },

    /// Adaptive quadrature hit its recursion depth cap before converging.
    #[error("adaptive quadrature exceeded maximum subdivision depth")]
    MaxDepthExceeded,

    /// Multiplicative integral of a function that is not strictly positive.
    #[error("multiplicative integrand is not strictly positive at t = {t}")]
    NonPositiveIntegrand { t: f64 },

    /// The IDE right-hand side failed to evaluate during time stepping.
    #[error("right-hand side evaluation failed at t = {t}: {source}")]
    RhsEvaluation {
        t: f64,
        #[source]
        source: Box<Error>,
    },

    /// Picard iteration did not reach its tolerance; carries the last
    /// iterate and the final residual.
    #[error("Picard iteration did not converge after {iterations} iterations (residual {residual:.3e})")]
    NonConvergence {
        iterations: usize,
        residual: f64,
        last: Box<Trajectory>,
    },

    /// Every requested gH branch produced a crossed endpoint pair.
    /// Carries `(branch index, first crossing time)` per discarded branch.
    #[error("all gH branches infeasible: {discarded:?}")]
    BranchInfeasible { discarded: Vec<(usize, f64)> },

    /// An `IdeProblem` violated a structural invariant.
    #[error("invalid problem: {message}")]
    Problem { message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
