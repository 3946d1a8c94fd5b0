//! Differentiation of interval-valued functions.
//!
//! The derivative of an IVF splits in `(center, log_radius)` coordinates:
//! the center function gets the classical derivative and the radius
//! function the multiplicative one, `f_w^* = e^{(ln f_w)'}`, so the
//! derivative interval is `⟨f_c'; e^{ρ'}⟩` with `ρ = ln f_w`. The
//! gH-derivative is computed on the endpoint functions instead and needs
//! switching-point case analysis, which [`find_switching_points`] supplies.
//!
//! Differentiation is numerical: Richardson-extrapolated central
//! differences with base step `1e-4`. Symbolic differentiation would need
//! case analysis through `abs` and the piecewise classical operations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{eval_interval_t, parse, ExprNode};
use crate::interval::{ExtendedInterval, Interval};

/// Base step for finite differences.
const H0: f64 = 1e-4;

/// Relative disagreement between one-sided and central probes beyond which
/// the two-sided derivative is declared nonexistent.
const KINK_REL: f64 = 1e-6;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Source {
    Expr(ExprNode),
    EndpointFns { lo: RealFn, hi: RealFn },
    CenterFns { center: RealFn, log_radius: RealFn },
}

/// An interval-valued function of `t` on a closed domain.
///
/// Expression-backed handles evaluate under the new arithmetic (a purely
/// real expression embeds pointwise via `λ̄`). Closure-backed handles exist
/// for functions outside the expression language, e.g. piecewise endpoint
/// formulas.
#[derive(Clone)]
pub struct IvfHandle {
    source: Source,
    t_lo: f64,
    t_hi: f64,
}

impl IvfHandle {
    /// Wraps a parsed expression in `t`; `x` is forbidden. The expression
    /// must evaluate at both domain endpoints.
    pub fn from_expr(expr: ExprNode, t_lo: f64, t_hi: f64) -> Result<IvfHandle> {
        if expr.uses_x() {
            return Err(Error::TypeError {
                message: "an interval-valued function of t must not reference x".into(),
            });
        }
        let h = IvfHandle {
            source: Source::Expr(expr),
            t_lo,
            t_hi,
        };
        h.validate()?;
        Ok(h)
    }

    /// Parses `src` and wraps it via [`IvfHandle::from_expr`].
    pub fn from_expr_str(src: &str, t_lo: f64, t_hi: f64) -> Result<IvfHandle> {
        IvfHandle::from_expr(parse(src)?, t_lo, t_hi)
    }

    /// Builds a handle from endpoint functions `t ↦ (f_l(t), f_r(t))`.
    /// Zero-width points are tolerated when sampling endpoints but make
    /// the value unrepresentable as a strict interval there.
    pub fn from_endpoint_fns(
        lo: impl Fn(f64) -> f64 + Send + Sync + 'static,
        hi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        t_lo: f64,
        t_hi: f64,
    ) -> Result<IvfHandle> {
        let h = IvfHandle {
            source: Source::EndpointFns {
                lo: Arc::new(lo),
                hi: Arc::new(hi),
            },
            t_lo,
            t_hi,
        };
        h.validate()?;
        Ok(h)
    }

    /// Builds a handle from `t ↦ (f_c(t), ln f_w(t))`.
    pub fn from_center_log_radius_fns(
        center: impl Fn(f64) -> f64 + Send + Sync + 'static,
        log_radius: impl Fn(f64) -> f64 + Send + Sync + 'static,
        t_lo: f64,
        t_hi: f64,
    ) -> Result<IvfHandle> {
        let h = IvfHandle {
            source: Source::CenterFns {
                center: Arc::new(center),
                log_radius: Arc::new(log_radius),
            },
            t_lo,
            t_hi,
        };
        h.validate()?;
        Ok(h)
    }

    fn validate(&self) -> Result<()> {
        if !(self.t_lo.is_finite() && self.t_hi.is_finite() && self.t_lo < self.t_hi) {
            return Err(Error::Problem {
                message: format!("bad IVF domain [{}, {}]", self.t_lo, self.t_hi),
            });
        }
        for t in [self.t_lo, self.t_hi] {
            let (l, h) = self.endpoints(t)?;
            if !(l.is_finite() && h.is_finite()) {
                return Err(Error::NonFinite { t });
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.t_lo, self.t_hi)
    }

    /// The interval value at `t`; fails where the width degenerates.
    pub fn value(&self, t: f64) -> Result<Interval> {
        match &self.source {
            Source::Expr(e) => eval_interval_t(e, t),
            Source::EndpointFns { lo, hi } => Interval::from_endpoints(lo(t), hi(t)),
            Source::CenterFns { center, log_radius } => {
                Interval::from_center_log_radius(center(t), log_radius(t))
            }
        }
    }

    /// Endpoint sample `(f_l(t), f_r(t))`; zero width is permitted for
    /// closure-backed handles.
    pub fn endpoints(&self, t: f64) -> Result<(f64, f64)> {
        match &self.source {
            Source::Expr(e) => Ok(eval_interval_t(e, t)?.to_endpoints()),
            Source::EndpointFns { lo, hi } => {
                let (l, h) = (lo(t), hi(t));
                if l.is_finite() && h.is_finite() && l <= h {
                    Ok((l, h))
                } else {
                    Err(Error::NonFinite { t })
                }
            }
            Source::CenterFns { center, log_radius } => {
                let (c, w) = (center(t), log_radius(t).exp());
                Ok((c - w, c + w))
            }
        }
    }

    fn center_at(&self, t: f64) -> Result<f64> {
        match &self.source {
            Source::CenterFns { center, .. } => Ok(center(t)),
            _ => Ok(self.endpoints(t).map(|(l, h)| 0.5 * (l + h))?),
        }
    }

    fn rho_at(&self, t: f64) -> Result<f64> {
        match &self.source {
            Source::Expr(e) => Ok(eval_interval_t(e, t)?.log_radius()),
            Source::CenterFns { log_radius, .. } => Ok(log_radius(t)),
            Source::EndpointFns { .. } => {
                let (l, h) = self.endpoints(t)?;
                let rho = (0.5 * (h - l)).ln();
                if rho.is_finite() {
                    Ok(rho)
                } else {
                    Err(Error::NonFinite { t })
                }
            }
        }
    }

    fn half_width_at(&self, t: f64) -> Result<f64> {
        let (l, h) = self.endpoints(t)?;
        Ok(0.5 * (h - l))
    }
}

/// A derivative value with the extrapolation-tableau error estimate.
#[derive(Debug, Clone, Copy)]
pub struct DerivativeResult {
    pub value: Interval,
    pub estimated_error: f64,
}

/// A gH-derivative value (endpoint form, possibly degenerate) with its
/// error estimate.
#[derive(Debug, Clone, Copy)]
pub struct GhDerivativeResult {
    pub value: ExtendedInterval,
    pub estimated_error: f64,
}

/// Differentiates `f` at an interior point: classical derivative of the
/// center, multiplicative derivative of the radius, assembled as
/// `⟨f_c'; e^{ρ'}⟩`. Points within `2e-4` of the domain boundary report
/// [`Error::DomainBoundary`]; kinks report [`Error::NonDifferentiable`].
pub fn derive(f: &IvfHandle, t: f64) -> Result<DerivativeResult> {
    let (lo, hi) = f.domain();
    if t - lo < 2.0 * H0 || hi - t < 2.0 * H0 {
        return Err(Error::DomainBoundary { t });
    }
    let (dc, ec) = component_derivative(&|s| f.center_at(s), t, true)?;
    let (dr, er) = component_derivative(&|s| f.rho_at(s), t, true)?;
    let value = Interval::from_center_log_radius(dc, dr).map_err(|_| Error::NonFinite { t })?;
    Ok(DerivativeResult {
        value,
        estimated_error: ec.hypot(er),
    })
}

/// gH-derivative at an interior point: central differences of the endpoint
/// functions, then `[min, max]`.
pub fn gh_derive(f: &IvfHandle, t: f64) -> Result<GhDerivativeResult> {
    let (lo, hi) = f.domain();
    if t - lo < 2.0 * H0 || hi - t < 2.0 * H0 {
        return Err(Error::DomainBoundary { t });
    }
    let (dl, el) = component_derivative(&|s| f.endpoints(s).map(|p| p.0), t, true)?;
    let (dr, er) = component_derivative(&|s| f.endpoints(s).map(|p| p.1), t, true)?;
    let value = ExtendedInterval::new(dl.min(dr), dl.max(dr))
        .map_err(|_| Error::NonFinite { t })?;
    Ok(GhDerivativeResult {
        value,
        estimated_error: el.hypot(er),
    })
}

/// Derivative valid up to the domain ends: interior points use the central
/// stencil, points within the margin switch to a one-sided fourth-order
/// stencil. No kink probing; intended for integrating derivatives of C¹
/// functions.
pub(crate) fn derive_unrestricted(f: &IvfHandle, t: f64) -> Result<DerivativeResult> {
    let (dc, ec) = unrestricted_component(&|s| f.center_at(s), t, f.domain())?;
    let (dr, er) = unrestricted_component(&|s| f.rho_at(s), t, f.domain())?;
    let value = Interval::from_center_log_radius(dc, dr).map_err(|_| Error::NonFinite { t })?;
    Ok(DerivativeResult {
        value,
        estimated_error: ec.hypot(er),
    })
}

/// Endpoint-function derivatives `(f_l'(t), f_r'(t))` valid up to the
/// domain ends; feeds the classical integral of the gH-derivative.
pub(crate) fn gh_derive_unrestricted(f: &IvfHandle, t: f64) -> Result<(f64, f64)> {
    let (dl, _) = unrestricted_component(&|s| f.endpoints(s).map(|p| p.0), t, f.domain())?;
    let (dr, _) = unrestricted_component(&|s| f.endpoints(s).map(|p| p.1), t, f.domain())?;
    Ok((dl.min(dr), dl.max(dr)))
}

fn unrestricted_component(
    g: &dyn Fn(f64) -> Result<f64>,
    t: f64,
    (lo, hi): (f64, f64),
) -> Result<(f64, f64)> {
    if t - lo >= 2.0 * H0 && hi - t >= 2.0 * H0 {
        component_derivative(g, t, false)
    } else if hi - t >= 4.0 * H0 {
        one_sided_stencil(g, t, 1.0)
    } else if t - lo >= 4.0 * H0 {
        one_sided_stencil(g, t, -1.0)
    } else {
        Err(Error::DomainBoundary { t })
    }
}

/// Central difference with three Richardson levels. `probe_sides` adds the
/// one-sided comparison that flags kinks the symmetric stencil cannot see.
fn component_derivative(
    g: &dyn Fn(f64) -> Result<f64>,
    t: f64,
    probe_sides: bool,
) -> Result<(f64, f64)> {
    let sample = |s: f64| -> Result<f64> {
        let v = g(s).map_err(|_| Error::NonFinite { t: s })?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { t: s })
        }
    };
    let central = |h: f64| -> Result<f64> { Ok((sample(t + h)? - sample(t - h)?) / (2.0 * h)) };
    let d0 = central(H0)?;
    let d1 = central(0.5 * H0)?;
    let d2 = central(0.25 * H0)?;
    let r10 = (4.0 * d1 - d0) / 3.0;
    let r11 = (4.0 * d2 - d1) / 3.0;
    let r20 = (16.0 * r11 - r10) / 15.0;
    let err = (r20 - r11).abs().max(f64::EPSILON * (1.0 + r20.abs()));

    if probe_sides {
        let f0 = sample(t)?;
        let one_sided = |dir: f64| -> Result<f64> {
            let d = |h: f64| -> Result<f64> { Ok((sample(t + dir * h)? - f0) / (dir * h)) };
            let a = d(H0)?;
            let b = d(0.5 * H0)?;
            let c = d(0.25 * H0)?;
            let r1 = 2.0 * b - a;
            let r2 = 2.0 * c - b;
            Ok((4.0 * r2 - r1) / 3.0)
        };
        let fwd = one_sided(1.0)?;
        let bwd = one_sided(-1.0)?;
        let allow = (100.0 * err).max(KINK_REL * (1.0 + r20.abs()));
        if (fwd - r20).abs() > allow || (bwd - r20).abs() > allow {
            return Err(Error::NonDifferentiable { t });
        }
    }
    Ok((r20, err))
}

/// Five-point one-sided fourth-order stencil, Richardson-combined across
/// two step sizes.
fn one_sided_stencil(g: &dyn Fn(f64) -> Result<f64>, t: f64, dir: f64) -> Result<(f64, f64)> {
    let sample = |s: f64| -> Result<f64> {
        let v = g(s).map_err(|_| Error::NonFinite { t: s })?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { t: s })
        }
    };
    let stencil = |h: f64| -> Result<f64> {
        let s = dir * h;
        Ok(
            (-25.0 * sample(t)? + 48.0 * sample(t + s)? - 36.0 * sample(t + 2.0 * s)?
                + 16.0 * sample(t + 3.0 * s)?
                - 3.0 * sample(t + 4.0 * s)?)
                / (12.0 * s),
        )
    };
    let d0 = stencil(H0)?;
    let d1 = stencil(0.5 * H0)?;
    let combined = (16.0 * d1 - d0) / 15.0;
    let err = ((d1 - d0) / 15.0).abs().max(f64::EPSILON * (1.0 + combined.abs()));
    Ok((combined, err))
}

/// Locates sign changes of the width derivative `f_w'` on the domain,
/// refined by bisection to `1e-10`. Returns an empty list for
/// constant-width functions.
///
/// # Panics
///
/// Panics when `grid_n < 16`.
pub fn find_switching_points(f: &IvfHandle, grid_n: usize) -> Result<Vec<f64>> {
    assert!(grid_n >= 16, "switching-point scan needs grid_n >= 16");
    let (lo, hi) = f.domain();
    let span = hi - lo;
    let h_fd = (span * 1e-7).max(1e-9);
    let a = lo + 2.0 * h_fd;
    let b = hi - 2.0 * h_fd;
    let slope = |t: f64| -> Result<f64> { Ok(f.half_width_at(t + h_fd)? - f.half_width_at(t - h_fd)?) };

    let n = grid_n;
    let mut ts = Vec::with_capacity(n + 1);
    let mut ss = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let t = a + (b - a) * (i as f64) / (n as f64);
        ts.push(t);
        ss.push(slope(t)?);
    }

    let mut out = Vec::new();
    for i in 0..n {
        if ss[i] == 0.0 {
            if i > 0 && i < n && ss[i - 1] * ss[i + 1] < 0.0 {
                out.push(ts[i]);
            }
            continue;
        }
        if ss[i] * ss[i + 1] < 0.0 {
            out.push(bisect_sign_change(&slope, ts[i], ts[i + 1], ss[i])?);
        }
    }
    Ok(out)
}

fn bisect_sign_change(
    slope: &dyn Fn(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    mut sa: f64,
) -> Result<f64> {
    while b - a > 1e-10 {
        let m = 0.5 * (a + b);
        let sm = slope(m)?;
        if sm == 0.0 {
            return Ok(m);
        }
        if sa * sm > 0.0 {
            a = m;
            sa = sm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Sampling continuity check on the endpoint functions (an IVF is
/// continuous iff both endpoint functions are). Adjacent samples whose gap
/// exceeds `tol · (1 + slope estimate)` are bisected; a gap that survives
/// subdivision to machine scale is a jump. Purely a heuristic: sampling
/// cannot prove continuity.
pub fn check_continuity(f: &IvfHandle, grid_n: usize, tol: f64) -> bool {
    assert!(grid_n >= 2, "continuity scan needs grid_n >= 2");
    let (lo, hi) = f.domain();
    let n = grid_n;
    let mut nodes = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let t = lo + (hi - lo) * (i as f64) / (n as f64);
        match f.endpoints(t) {
            Ok(p) => nodes.push((t, p)),
            Err(_) => return false,
        }
    }
    let h = (hi - lo) / n as f64;
    let mut slope: f64 = 0.0;
    for w in nodes.windows(2) {
        slope = slope.max(gap(w[0].1, w[1].1) / h);
    }
    let threshold = tol * (1.0 + slope);
    let floor = (hi - lo) * 1e-13;
    for w in nodes.windows(2) {
        if !pair_continuous(f, w[0], w[1], threshold, floor) {
            return false;
        }
    }
    true
}

fn gap(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn pair_continuous(
    f: &IvfHandle,
    left: (f64, (f64, f64)),
    right: (f64, (f64, f64)),
    threshold: f64,
    floor: f64,
) -> bool {
    if gap(left.1, right.1) <= threshold {
        return true;
    }
    if right.0 - left.0 <= floor {
        return false;
    }
    let tm = 0.5 * (left.0 + right.0);
    let Ok(vm) = f.endpoints(tm) else {
        return false;
    };
    let mid = (tm, vm);
    pair_continuous(f, left, mid, threshold, floor) && pair_continuous(f, mid, right, threshold, floor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::distance;
    use std::f64::consts::{E, PI};

    fn ftc_example() -> IvfHandle {
        // F(t) = [t, t^2+1] on [0, 1]
        IvfHandle::from_expr_str("[t,t^2+1]", 0.0, 1.0).unwrap()
    }

    fn three_switch_example() -> IvfHandle {
        // f(t) = [t^2/2, 1 + t^2/2 + 2 sin^2 t] on [0, 2π]
        IvfHandle::from_expr_str("[t^2/2, 1 + t^2/2 + 2*sin(t)^2]", 0.0, 2.0 * PI).unwrap()
    }

    #[test]
    fn derive_examples() {
        // F'(0) = ⟨1/2; e^{-1}⟩ — evaluate just inside the margin
        let f = IvfHandle::from_expr_str("[t,t^2+1]", -1.0, 1.0).unwrap();
        let d = derive(&f, 0.0).unwrap();
        assert!((d.value.center() - 0.5).abs() < 1e-8);
        assert!((d.value.radius() - 1.0 / E).abs() < 1e-8);
        assert!(d.estimated_error < 1e-7);

        let c = IvfHandle::from_expr_str("[2,5]", 0.0, 1.0).unwrap();
        let dc = derive(&c, 0.5).unwrap();
        assert!(distance(dc.value, Interval::ZERO) < 1e-9);

        let g = three_switch_example();
        let dg = derive(&g, PI / 2.0).unwrap();
        assert!((dg.value.center() - PI / 2.0).abs() < 1e-8);
        assert!((dg.value.radius() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn derive_respects_domain_margin() {
        let f = ftc_example();
        assert!(matches!(derive(&f, 0.0), Err(Error::DomainBoundary { .. })));
        assert!(matches!(derive(&f, 1.0), Err(Error::DomainBoundary { .. })));
        assert!(derive(&f, 0.5).is_ok());
    }

    #[test]
    fn gh_derive_examples() {
        let f = IvfHandle::from_expr_str("[t,t^2+1]", -1.0, 1.0).unwrap();
        let d = gh_derive(&f, 0.0).unwrap();
        assert!((d.value.lo() - 0.0).abs() < 1e-8);
        assert!((d.value.hi() - 1.0).abs() < 1e-8);

        let c = IvfHandle::from_expr_str("[2,5]", 0.0, 1.0).unwrap();
        let dc = gh_derive(&c, 0.5).unwrap();
        assert!(dc.value.lo().abs() < 1e-8 && dc.value.hi().abs() < 1e-8);
    }

    #[test]
    fn kink_is_not_differentiable_either_way() {
        // f(t) = [-|t|, |t|+1]: one-sided radius derivatives e^{±2} at 0
        let f = IvfHandle::from_endpoint_fns(|t: f64| -t.abs(), |t: f64| t.abs() + 1.0, -1.0, 1.0)
            .unwrap();
        assert!(matches!(derive(&f, 0.0), Err(Error::NonDifferentiable { .. })));
        assert!(matches!(gh_derive(&f, 0.0), Err(Error::NonDifferentiable { .. })));
        // away from the kink both families work
        assert!(derive(&f, 0.5).is_ok());
        assert!(gh_derive(&f, 0.5).is_ok());
    }

    #[test]
    fn switching_points_examples() {
        let g = three_switch_example();
        let pts = find_switching_points(&g, 64).unwrap();
        assert_eq!(pts.len(), 3);
        let expect = [PI / 2.0, PI, 1.5 * PI];
        for (p, e) in pts.iter().zip(expect) {
            assert!((p - e).abs() < 1e-8, "got {p}, want {e}");
        }

        let c = IvfHandle::from_expr_str("[t, t+2]", 0.0, 1.0).unwrap();
        assert!(find_switching_points(&c, 32).unwrap().is_empty());

        let f = ftc_example();
        let pts = find_switching_points(&f, 32).unwrap();
        assert_eq!(pts.len(), 1);
        assert!((pts[0] - 0.5).abs() < 1e-8);
    }

    #[test]
    fn continuity_examples() {
        assert!(check_continuity(&ftc_example(), 64, 1e-3));

        // gH-composed piecewise function: continuous but kinked, and its
        // width degenerates at two points
        let g = IvfHandle::from_endpoint_fns(
            |t: f64| {
                let u = (t - 2.0).abs();
                if (1.0..=3.0).contains(&t) {
                    u
                } else {
                    2.0 - u
                }
            },
            |t: f64| {
                let u = (t - 2.0).abs();
                if (1.0..=3.0).contains(&t) {
                    2.0 - u
                } else {
                    u
                }
            },
            0.0,
            4.0,
        )
        .unwrap();
        assert!(check_continuity(&g, 64, 1e-3));

        let step = IvfHandle::from_endpoint_fns(
            |t: f64| if t < 0.5 { 0.0 } else { 2.0 },
            |t: f64| if t < 0.5 { 1.0 } else { 3.0 },
            0.0,
            1.0,
        )
        .unwrap();
        assert!(!check_continuity(&step, 64, 1e-3));
    }

    #[test]
    fn differentiable_implies_continuous() {
        let f = three_switch_example();
        let (lo, hi) = f.domain();
        for i in 1..20 {
            let t = lo + (hi - lo) * (i as f64) / 20.0;
            assert!(derive(&f, t).is_ok());
        }
        assert!(check_continuity(&f, 64, 1e-3));
    }

    #[test]
    fn algebraic_rules_hold_numerically() {
        // smooth test IVFs with radius bounded away from 1
        let f = IvfHandle::from_center_log_radius_fns(
            |t: f64| 2.0 + t.sin(),
            |t: f64| 0.5 + 0.3 * t.cos(),
            -1.0,
            1.0,
        )
        .unwrap();
        let g = IvfHandle::from_center_log_radius_fns(
            |t: f64| 3.0 + 0.5 * t.cos(),
            |t: f64| 1.0 + 0.25 * t.sin(),
            -1.0,
            1.0,
        )
        .unwrap();
        let c1 = Interval::from_center_log_radius(2.0, 0.5).unwrap();
        let c2 = Interval::from_center_log_radius(-1.0, 1.5).unwrap();

        let t = 0.3;
        let df = derive(&f, t).unwrap().value;
        let dg = derive(&g, t).unwrap().value;

        // linearity with interval coefficients
        let combo = {
            let (c1c, c1r) = (c1.center(), c1.log_radius());
            let (c2c, c2r) = (c2.center(), c2.log_radius());
            IvfHandle::from_center_log_radius_fns(
                move |t: f64| c1c * (2.0 + t.sin()) + c2c * (3.0 + 0.5 * t.cos()),
                move |t: f64| c1r * (0.5 + 0.3 * t.cos()) + c2r * (1.0 + 0.25 * t.sin()),
                -1.0,
                1.0,
            )
            .unwrap()
        };
        let lhs = derive(&combo, t).unwrap().value;
        let rhs = c1.mul(df).add(c2.mul(dg)).unwrap();
        assert!(distance(lhs, rhs) < 1e-6);

        // product rule
        let prod = IvfHandle::from_center_log_radius_fns(
            |t: f64| (2.0 + t.sin()) * (3.0 + 0.5 * t.cos()),
            |t: f64| (0.5 + 0.3 * t.cos()) * (1.0 + 0.25 * t.sin()),
            -1.0,
            1.0,
        )
        .unwrap();
        let lhs = derive(&prod, t).unwrap().value;
        let rhs = df.mul(g.value(t).unwrap()).add(f.value(t).unwrap().mul(dg)).unwrap();
        assert!(distance(lhs, rhs) < 1e-6);

        // quotient rule
        let quot = IvfHandle::from_center_log_radius_fns(
            |t: f64| (2.0 + t.sin()) / (3.0 + 0.5 * t.cos()),
            |t: f64| (0.5 + 0.3 * t.cos()) / (1.0 + 0.25 * t.sin()),
            -1.0,
            1.0,
        )
        .unwrap();
        let lhs = derive(&quot, t).unwrap().value;
        let gt = g.value(t).unwrap();
        let num = df.mul(gt).sub(f.value(t).unwrap().mul(dg));
        let rhs = num.div(gt.pow_n(2)).unwrap();
        assert!(distance(lhs, rhs) < 1e-6);

        // chain rule with g(t) = t^2
        let comp = IvfHandle::from_center_log_radius_fns(
            |t: f64| 2.0 + (t * t).sin(),
            |t: f64| 0.5 + 0.3 * (t * t).cos(),
            -1.0,
            1.0,
        )
        .unwrap();
        let lhs = derive(&comp, t).unwrap().value;
        let inner = IvfHandle::from_center_log_radius_fns(
            |t: f64| 2.0 + t.sin(),
            |t: f64| 0.5 + 0.3 * t.cos(),
            -1.0,
            1.0,
        )
        .unwrap();
        let dy = derive(&inner, t * t).unwrap().value;
        let rhs = dy.scale(2.0 * t);
        assert!(distance(lhs, rhs) < 1e-6);
    }
}
