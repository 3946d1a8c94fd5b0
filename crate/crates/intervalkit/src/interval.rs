//! The interval number type and both arithmetic families.
//!
//! An [`Interval`] is a non-degenerate closed interval `[l, r]`, `l < r`,
//! stored as `(center, log_radius)`:
//!
//! ```text
//! center = (l + r) / 2        log_radius = ln((r - l) / 2)
//! ```
//!
//! In these coordinates the linear-space operations are exact componentwise
//! real arithmetic: addition adds both coordinates, scalar multiplication
//! scales both, multiplication multiplies centers and log-radii, division
//! divides them. Endpoints are materialized only at I/O boundaries.
//!
//! The classical Moore endpoint operations (`⊕`, `⊖`, `⊖_H`, `⊖_gH`, `⊗`,
//! `⊘`, `k⊙`) live on [`ExtendedInterval`], which permits degenerate
//! (zero-width) values.

use crate::error::{Error, Result};

/// Tolerance below which a divisor's center or log-radius counts as zero.
pub const DIV_EPSILON: f64 = 1e-12;

/// Tolerance used when classifying a new-arithmetic result against the
/// classical one as equal.
const CLASSIFY_EPSILON: f64 = 1e-9;

/// Outcome of comparing two intervals under one of the three orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderRelation {
    Less,
    Equal,
    Greater,
    /// Only produced by the partial orderings (`⊆` and `≼`).
    Incomparable,
}

/// A non-degenerate interval number in center/log-radius coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    center: f64,
    log_radius: f64,
}

// The arithmetic methods keep the names of the operations they implement;
// `std::ops` traits would hide the fallible cases (`add` checks overflow,
// `div` has preconditions).
#[allow(clippy::should_implement_trait)]
impl Interval {
    /// The additive zero element `⟨0; 1⟩ = [-1, 1]`.
    pub const ZERO: Interval = Interval {
        center: 0.0,
        log_radius: 0.0,
    };

    /// The multiplicative identity `⟨1; e⟩ = [1-e, 1+e]`.
    pub const ONE: Interval = Interval {
        center: 1.0,
        log_radius: 1.0,
    };

    /// Builds an interval from its endpoints. Fails with
    /// [`Error::DegenerateInterval`] unless `l < r`; real numbers are not
    /// degenerate interval numbers here.
    pub fn from_endpoints(l: f64, r: f64) -> Result<Interval> {
        if !(l.is_finite() && r.is_finite() && l < r) {
            return Err(Error::DegenerateInterval { lo: l, hi: r });
        }
        Ok(Interval {
            center: 0.5 * (l + r),
            log_radius: (0.5 * (r - l)).ln(),
        })
    }

    /// Builds an interval from center and radius; the radius must be
    /// strictly positive and finite.
    pub fn from_center_radius(center: f64, radius: f64) -> Result<Interval> {
        if !(center.is_finite() && radius.is_finite() && radius > 0.0) {
            return Err(Error::DegenerateInterval {
                lo: center - radius,
                hi: center + radius,
            });
        }
        Ok(Interval {
            center,
            log_radius: radius.ln(),
        })
    }

    /// Builds an interval directly in `(center, log_radius)` coordinates.
    pub fn from_center_log_radius(center: f64, log_radius: f64) -> Result<Interval> {
        if !(center.is_finite() && log_radius.is_finite()) {
            return Err(Error::Overflow);
        }
        Ok(Interval { center, log_radius })
    }

    /// Embeds a real number: `λ̄ = λ·1̄ = ⟨λ; e^λ⟩`.
    pub fn from_real(lambda: f64) -> Interval {
        Interval {
            center: lambda,
            log_radius: lambda,
        }
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn log_radius(&self) -> f64 {
        self.log_radius
    }

    /// Radius `a_w = exp(log_radius)`, always strictly positive.
    pub fn radius(&self) -> f64 {
        self.log_radius.exp()
    }

    pub fn lo(&self) -> f64 {
        self.center - self.radius()
    }

    pub fn hi(&self) -> f64 {
        self.center + self.radius()
    }

    pub fn to_endpoints(&self) -> (f64, f64) {
        (self.lo(), self.hi())
    }

    /// Addition: `⟨a_c + b_c; a_w b_w⟩`. Errors on non-finite components.
    pub fn add(self, other: Interval) -> Result<Interval> {
        let center = self.center + other.center;
        let log_radius = self.log_radius + other.log_radius;
        if !(center.is_finite() && log_radius.is_finite()) {
            return Err(Error::Overflow);
        }
        Ok(Interval { center, log_radius })
    }

    /// Negative element `⟨-a_c; 1/a_w⟩`; an involution.
    pub fn neg(self) -> Interval {
        Interval {
            center: -self.center,
            log_radius: -self.log_radius,
        }
    }

    /// Subtraction `⟨a_c - b_c; a_w / b_w⟩`, the exact inverse of addition.
    pub fn sub(self, other: Interval) -> Interval {
        Interval {
            center: self.center - other.center,
            log_radius: self.log_radius - other.log_radius,
        }
    }

    /// Scalar multiplication `k·⟨a_c; a_w⟩ = ⟨k a_c; a_w^k⟩`.
    pub fn scale(self, k: f64) -> Interval {
        Interval {
            center: k * self.center,
            log_radius: k * self.log_radius,
        }
    }

    /// Multiplication `⟨a_c b_c; e^{ln a_w · ln b_w}⟩`.
    pub fn mul(self, other: Interval) -> Interval {
        Interval {
            center: self.center * other.center,
            log_radius: self.log_radius * other.log_radius,
        }
    }

    /// Reciprocal `⟨1/a_c; e^{1/ln a_w}⟩`; requires `a_c ≠ 0` and
    /// `a_w ≠ 1` within [`DIV_EPSILON`].
    pub fn inv(self) -> Result<Interval> {
        if self.center.abs() <= DIV_EPSILON || self.log_radius.abs() <= DIV_EPSILON {
            return Err(Error::NotInvertible);
        }
        Ok(Interval {
            center: 1.0 / self.center,
            log_radius: 1.0 / self.log_radius,
        })
    }

    /// Division `⟨a_c / b_c; e^{ln a_w / ln b_w}⟩`, the inverse of
    /// multiplication; requires `b_c ≠ 0` and `b_w ≠ 1` within
    /// [`DIV_EPSILON`].
    pub fn div(self, other: Interval) -> Result<Interval> {
        if other.center.abs() <= DIV_EPSILON || other.log_radius.abs() <= DIV_EPSILON {
            return Err(Error::DivisionUndefined);
        }
        Ok(Interval {
            center: self.center / other.center,
            log_radius: self.log_radius / other.log_radius,
        })
    }

    /// `n`-th power `⟨a_c^n; e^{ln^n a_w}⟩`; `a^0` is the identity element.
    pub fn pow_n(self, n: u32) -> Interval {
        Interval {
            center: self.center.powi(n as i32),
            log_radius: self.log_radius.powi(n as i32),
        }
    }

    /// Total order per the lexicographic (center, radius) comparison.
    /// Never returns [`OrderRelation::Incomparable`].
    pub fn cmp_total(&self, other: &Interval) -> OrderRelation {
        if self.center < other.center {
            OrderRelation::Less
        } else if self.center > other.center {
            OrderRelation::Greater
        } else if self.log_radius < other.log_radius {
            OrderRelation::Less
        } else if self.log_radius > other.log_radius {
            OrderRelation::Greater
        } else {
            OrderRelation::Equal
        }
    }

    /// Set inclusion `⊆` on endpoints; `Less` means `self ⊂ other`.
    pub fn cmp_subset(&self, other: &Interval) -> OrderRelation {
        if self == other {
            return OrderRelation::Equal;
        }
        let (al, ar) = self.to_endpoints();
        let (bl, br) = other.to_endpoints();
        if bl <= al && ar <= br {
            OrderRelation::Less
        } else if al <= bl && br <= ar {
            OrderRelation::Greater
        } else {
            OrderRelation::Incomparable
        }
    }

    /// Componentwise order `≼` (`a_c ≤ b_c` and `a_w ≤ b_w`).
    pub fn cmp_preceq(&self, other: &Interval) -> OrderRelation {
        if self == other {
            return OrderRelation::Equal;
        }
        let le = self.center <= other.center && self.log_radius <= other.log_radius;
        let ge = self.center >= other.center && self.log_radius >= other.log_radius;
        match (le, ge) {
            (true, _) => OrderRelation::Less,
            (_, true) => OrderRelation::Greater,
            _ => OrderRelation::Incomparable,
        }
    }

    /// `true` when `self ≤ other` in the total order.
    pub fn le_total(&self, other: &Interval) -> bool {
        !matches!(self.cmp_total(other), OrderRelation::Greater)
    }

    /// Classical endpoint sum `[a_l + b_l, a_r + b_r]`.
    pub fn moore_add(self, other: Interval) -> ExtendedInterval {
        ExtendedInterval::from(self).moore_add(other.into())
    }

    /// Classical difference `[a_l - b_r, a_r - b_l]`.
    pub fn moore_sub(self, other: Interval) -> ExtendedInterval {
        ExtendedInterval::from(self).moore_sub(other.into())
    }

    /// Hukuhara difference `[a_l - b_l, a_r - b_r]`; exists only when
    /// `a_w ≥ b_w`.
    pub fn h_sub(self, other: Interval) -> Result<ExtendedInterval> {
        ExtendedInterval::from(self).h_sub(other.into())
    }

    /// Generalized Hukuhara difference
    /// `[min(a_l-b_l, a_r-b_r), max(a_l-b_l, a_r-b_r)]`.
    pub fn gh_sub(self, other: Interval) -> ExtendedInterval {
        ExtendedInterval::from(self).gh_sub(other.into())
    }

    /// Classical product: min/max over the four endpoint products.
    pub fn moore_mul(self, other: Interval) -> ExtendedInterval {
        ExtendedInterval::from(self).moore_mul(other.into())
    }

    /// Classical quotient; fails when the divisor spans zero.
    pub fn moore_div(self, other: Interval) -> Result<ExtendedInterval> {
        ExtendedInterval::from(self).moore_div(other.into())
    }

    /// Classical scalar product `k ⊙ a`.
    pub fn moore_scale(self, k: f64) -> ExtendedInterval {
        ExtendedInterval::from(self).moore_scale(k)
    }
}

impl std::fmt::Display for Interval {
    /// Renders `[l,r]` with 17 significant digits, enough to round-trip f64.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{:.16e},{:.16e}]", self.lo(), self.hi())
    }
}

impl Interval {
    /// Renders the `<c;w>` center/radius form, also accepted by the parser.
    pub fn to_center_radius_string(&self) -> String {
        format!("<{:.16e};{:.16e}>", self.center, self.radius())
    }
}

/// Comparison of a new-arithmetic result against its classical counterpart.
#[derive(Debug, Clone, Copy)]
pub enum ClassicalOp {
    /// `a + b` vs `a ⊕ b`.
    Add(Interval),
    /// `a - b` vs `a ⊖ b`.
    Sub(Interval),
    /// `k a` vs `k ⊙ a`.
    Scalar(f64),
}

/// Computes the new-arithmetic result and the classical one for `op`, and
/// returns their inclusion relation: `Less` means the new result is a
/// strict subset of the classical one, `Greater` the reverse. Endpoints are
/// compared with a `1e-9` tolerance for the `Equal` case; the trichotomy
/// boundaries are measure-zero, so callers should target interior cases.
pub fn classify_vs_classical(a: Interval, op: ClassicalOp) -> Result<OrderRelation> {
    let (new, classical) = match op {
        ClassicalOp::Add(b) => (a.add(b)?.to_endpoints(), a.moore_add(b).to_endpoints()),
        ClassicalOp::Sub(b) => (a.sub(b).to_endpoints(), a.moore_sub(b).to_endpoints()),
        ClassicalOp::Scalar(k) => (a.scale(k).to_endpoints(), a.moore_scale(k).to_endpoints()),
    };
    Ok(inclusion_relation(new, classical, CLASSIFY_EPSILON))
}

fn inclusion_relation(a: (f64, f64), b: (f64, f64), tol: f64) -> OrderRelation {
    if (a.0 - b.0).abs() <= tol && (a.1 - b.1).abs() <= tol {
        OrderRelation::Equal
    } else if a.0 >= b.0 - tol && a.1 <= b.1 + tol {
        OrderRelation::Less
    } else if b.0 >= a.0 - tol && b.1 <= a.1 + tol {
        OrderRelation::Greater
    } else {
        OrderRelation::Incomparable
    }
}

/// The order-characterizing function: `φ(a, b) ≤ 0` iff `a ≤ b` in the
/// total order. The raw value is asymmetric (the right radius sits in the
/// denominator); only its sign is order-meaningful.
pub fn phi(a: Interval, b: Interval) -> f64 {
    let dc = a.center() - b.center();
    if dc == 0.0 {
        (a.log_radius() - b.log_radius()).exp() - 1.0
    } else {
        dc
    }
}

/// An endpoint pair with `lo ≤ hi`; the result type of the classical
/// operations, which may degenerate to a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedInterval {
    lo: f64,
    hi: f64,
}

impl ExtendedInterval {
    pub fn new(lo: f64, hi: f64) -> Result<ExtendedInterval> {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::DegenerateInterval { lo, hi });
        }
        Ok(ExtendedInterval { lo, hi })
    }

    /// A zero-width interval `[x, x]`, the classical embedding of a real.
    pub fn degenerate(x: f64) -> ExtendedInterval {
        ExtendedInterval { lo: x, hi: x }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn to_endpoints(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn radius(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    /// Converts to a strict [`Interval`]; fails on degenerate width.
    pub fn to_interval(&self) -> Result<Interval> {
        Interval::from_endpoints(self.lo, self.hi)
    }

    pub fn moore_add(self, other: ExtendedInterval) -> ExtendedInterval {
        ExtendedInterval {
            lo: self.lo + other.lo,
            hi: self.hi + other.hi,
        }
    }

    pub fn moore_sub(self, other: ExtendedInterval) -> ExtendedInterval {
        ExtendedInterval {
            lo: self.lo - other.hi,
            hi: self.hi - other.lo,
        }
    }

    pub fn h_sub(self, other: ExtendedInterval) -> Result<ExtendedInterval> {
        if self.radius() < other.radius() {
            return Err(Error::HDiffNotExists);
        }
        Ok(ExtendedInterval {
            lo: self.lo - other.lo,
            hi: self.hi - other.hi,
        })
    }

    pub fn gh_sub(self, other: ExtendedInterval) -> ExtendedInterval {
        let dl = self.lo - other.lo;
        let dr = self.hi - other.hi;
        ExtendedInterval {
            lo: dl.min(dr),
            hi: dl.max(dr),
        }
    }

    pub fn moore_mul(self, other: ExtendedInterval) -> ExtendedInterval {
        let p = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ];
        ExtendedInterval {
            lo: p.iter().cloned().fold(f64::INFINITY, f64::min),
            hi: p.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        }
    }

    pub fn moore_div(self, other: ExtendedInterval) -> Result<ExtendedInterval> {
        if other.lo <= 0.0 && other.hi >= 0.0 {
            return Err(Error::MooreDivByZeroSpanning);
        }
        let q = [
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        ];
        Ok(ExtendedInterval {
            lo: q.iter().cloned().fold(f64::INFINITY, f64::min),
            hi: q.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        })
    }

    pub fn moore_scale(self, k: f64) -> ExtendedInterval {
        if k >= 0.0 {
            ExtendedInterval {
                lo: k * self.lo,
                hi: k * self.hi,
            }
        } else {
            ExtendedInterval {
                lo: k * self.hi,
                hi: k * self.lo,
            }
        }
    }
}

impl From<Interval> for ExtendedInterval {
    fn from(a: Interval) -> ExtendedInterval {
        let (lo, hi) = a.to_endpoints();
        ExtendedInterval { lo, hi }
    }
}

impl std::fmt::Display for ExtendedInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{:.16e},{:.16e}]", self.lo, self.hi)
    }
}
