//! The interval Riemann integral and verifiers for the integral calculus
//! rules.
//!
//! For an integrable IVF the integral decomposes componentwise:
//!
//! ```text
//! (IR)∫ f = ⟨ ∫ f_c ; e^{∫ ln f_w} ⟩
//! ```
//!
//! so one adaptive Simpson pass over each real integrand is exact in
//! structure. The two component integrals subdivide independently; the
//! center and the log-radius have unrelated stiffness.

use crate::calculus::{derive_unrestricted, gh_derive_unrestricted, IvfHandle};
use crate::error::{Error, Result};
use crate::interval::{ExtendedInterval, Interval};
use crate::metric::distance;

const MAX_DEPTH: u32 = 40;
const REL_FLOOR: f64 = 1e-14;

/// An interval integral value with error estimate and evaluation count.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: Interval,
    pub estimated_error: f64,
    pub evaluations: usize,
}

struct Quad<'a> {
    f: &'a dyn Fn(f64) -> Result<f64>,
    evals: usize,
}

impl Quad<'_> {
    fn sample(&mut self, t: f64) -> Result<f64> {
        self.evals += 1;
        let v = (self.f)(t)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { t })
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn adapt(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<(f64, f64)> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.sample(lm)?;
        let frm = self.sample(rm)?;
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        let refined = left + right;
        let delta = refined - whole;
        if delta.abs() <= 15.0 * tol.max(REL_FLOOR * refined.abs()) {
            return Ok((refined + delta / 15.0, delta.abs() / 15.0));
        }
        if depth == 0 {
            return Err(Error::MaxDepthExceeded);
        }
        let (lv, le) = self.adapt(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
        let (rv, re) = self.adapt(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
        Ok((lv + rv, le + re))
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Adaptive Simpson for one real integrand: `(value, error estimate,
/// evaluation count)`.
pub(crate) fn adaptive_simpson(
    f: &dyn Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(f64, f64, usize)> {
    let mut q = Quad { f, evals: 0 };
    let fa = q.sample(a)?;
    let m = 0.5 * (a + b);
    let fm = q.sample(m)?;
    let fb = q.sample(b)?;
    let whole = simpson(a, b, fa, fm, fb);
    let (value, err) = q.adapt(a, b, fa, fm, fb, whole, tol, MAX_DEPTH)?;
    Ok((value, err, q.evals))
}

/// The interval Riemann integral `⟨∫ f_c; e^{∫ ln f_w}⟩` over `[a, b]`,
/// each component to tolerance `tol/√2`.
pub fn ir_integral(f: &IvfHandle, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    let (lo, hi) = f.domain();
    if !(a < b && a >= lo && b <= hi) {
        return Err(Error::Problem {
            message: format!("integration bounds [{a}, {b}] outside domain [{lo}, {hi}]"),
        });
    }
    let comp_tol = tol / std::f64::consts::SQRT_2;
    let fc = |t: f64| f.value(t).map(|v| v.center());
    let fr = |t: f64| f.value(t).map(|v| v.log_radius());
    let (ic, ec, nc) = adaptive_simpson(&fc, a, b, comp_tol)?;
    let (ir, er, nr) = adaptive_simpson(&fr, a, b, comp_tol)?;
    Ok(QuadratureResult {
        value: Interval::from_center_log_radius(ic, ir)?,
        estimated_error: ec.hypot(er),
        evaluations: nc + nr,
    })
}

/// The multiplicative integral `e^{∫ ln g}` of a strictly positive real
/// function.
pub fn mult_integral<F>(g: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let integrand = |t: f64| -> Result<f64> {
        let v = g(t);
        if v > 0.0 {
            Ok(v.ln())
        } else {
            Err(Error::NonPositiveIntegrand { t })
        }
    };
    let (i, _, _) = adaptive_simpson(&integrand, a, b, tol)?;
    Ok(i.exp())
}

/// Classical endpointwise integral `[∫ lo, ∫ hi]` of an endpoint-pair
/// function; used for integrating gH-derivatives.
pub fn classical_integral<F>(f: F, a: f64, b: f64, tol: f64) -> Result<ExtendedInterval>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let flo = |t: f64| f(t).map(|p| p.0);
    let fhi = |t: f64| f(t).map(|p| p.1);
    let (il, _, _) = adaptive_simpson(&flo, a, b, tol)?;
    let (ih, _, _) = adaptive_simpson(&fhi, a, b, tol)?;
    ExtendedInterval::new(il, ih)
}

/// Integrates the gH-derivative of `f` endpointwise over `[a, b]`.
pub fn integrate_gh_derivative(f: &IvfHandle, a: f64, b: f64, tol: f64) -> Result<ExtendedInterval> {
    classical_integral(|t| gh_derive_unrestricted(f, t), a, b, tol)
}

/// The derivative of `f` as an integrand pair `(center', log_radius')`,
/// valid up to the domain ends.
fn derivative_components(f: &IvfHandle, t: f64) -> Result<(f64, f64)> {
    let d = derive_unrestricted(f, t)?;
    Ok((d.value.center(), d.value.log_radius()))
}

/// `(IR)∫ f'` over `[a, b]`, with one-sided derivative stencils at the
/// boundary nodes.
pub fn integral_of_derivative(f: &IvfHandle, a: f64, b: f64, tol: f64) -> Result<Interval> {
    let dc = |t: f64| derivative_components(f, t).map(|p| p.0);
    let dr = |t: f64| derivative_components(f, t).map(|p| p.1);
    let (ic, _, _) = adaptive_simpson(&dc, a, b, tol)?;
    let (ir, _, _) = adaptive_simpson(&dr, a, b, tol)?;
    Interval::from_center_log_radius(ic, ir)
}

/// Checks the Newton–Leibniz identity `f(b) - f(a) = (IR)∫ f'`: true when
/// the two sides are within `tol` in the interval metric.
pub fn verify_ftc(f: &IvfHandle, a: f64, b: f64, tol: f64) -> Result<bool> {
    let lhs = f.value(b)?.sub(f.value(a)?);
    let rhs = integral_of_derivative(f, a, b, tol / 10.0)?;
    Ok(distance(lhs, rhs) < tol)
}

/// Checks integration by parts:
/// `F(b)G(b) - F(a)G(a) = ∫ F'G + ∫ FG'` within `tol`.
pub fn verify_by_parts(
    f: &IvfHandle,
    g: &IvfHandle,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<bool> {
    let lhs = f
        .value(b)?
        .mul(g.value(b)?)
        .sub(f.value(a)?.mul(g.value(a)?));
    let rhs = by_parts_rhs(f, g, a, b, tol / 10.0)?;
    Ok(distance(lhs, rhs) < tol)
}

/// `∫ F'G + ∫ FG'` assembled in `(center, log_radius)` coordinates.
pub fn by_parts_rhs(f: &IvfHandle, g: &IvfHandle, a: f64, b: f64, tol: f64) -> Result<Interval> {
    let prod_df_g = |t: f64| -> Result<(f64, f64)> {
        let df = derivative_components(f, t)?;
        let gv = g.value(t)?;
        Ok((df.0 * gv.center(), df.1 * gv.log_radius()))
    };
    let prod_f_dg = |t: f64| -> Result<(f64, f64)> {
        let dg = derivative_components(g, t)?;
        let fv = f.value(t)?;
        Ok((fv.center() * dg.0, fv.log_radius() * dg.1))
    };
    let int_pair = |p: &dyn Fn(f64) -> Result<(f64, f64)>| -> Result<Interval> {
        let pc = |t: f64| p(t).map(|v| v.0);
        let pr = |t: f64| p(t).map(|v| v.1);
        let (ic, _, _) = adaptive_simpson(&pc, a, b, tol)?;
        let (ir, _, _) = adaptive_simpson(&pr, a, b, tol)?;
        Interval::from_center_log_radius(ic, ir)
    };
    let first = int_pair(&prod_df_g)?;
    let second = int_pair(&prod_f_dg)?;
    first.add(second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::OrderRelation;
    use std::f64::consts::E;

    fn ftc_example() -> IvfHandle {
        IvfHandle::from_expr_str("[t,t^2+1]", 0.0, 1.0).unwrap()
    }

    #[test]
    fn ir_integral_examples() {
        // ∫_0^1 F' = ⟨1;1⟩ = [0,2] for F = [t, t^2+1]
        let f = ftc_example();
        let dc = |t: f64| derivative_components(&f, t).map(|p| p.0);
        let dr = |t: f64| derivative_components(&f, t).map(|p| p.1);
        let (ic, _, _) = adaptive_simpson(&dc, 0.0, 1.0, 1e-10).unwrap();
        let (ir, _, _) = adaptive_simpson(&dr, 0.0, 1.0, 1e-10).unwrap();
        assert!((ic - 1.0).abs() < 1e-8);
        assert!(ir.abs() < 1e-8);

        // constant zero element integrates to the zero element
        let z = IvfHandle::from_expr_str("[-1,1]", 0.0, 2.0).unwrap();
        let r = ir_integral(&z, 0.0, 2.0, 1e-10).unwrap();
        assert!(distance(r.value, Interval::ZERO) < 1e-12);
        assert!(r.evaluations >= 6);

        // ∫_0^1 [t^2, 2t+1]·(-1) dt = ⟨-7/6; e^{2+ln 2-2√2 artanh(√2/2)}⟩
        let s = IvfHandle::from_expr_str("[t^2,2*t+1]*(-1)", 0.0, 1.0).unwrap();
        let r = ir_integral(&s, 0.0, 1.0, 1e-11).unwrap();
        assert!((r.value.center() + 7.0 / 6.0).abs() < 1e-9);
        let expo = 2.0 + 2.0f64.ln()
            - 2.0 * 2.0f64.sqrt() * (2.0f64.sqrt() / 2.0).atanh();
        assert!((r.value.log_radius() - expo).abs() < 1e-9);
    }

    #[test]
    fn mult_integral_examples() {
        assert!((mult_integral(|_| 1.0, 0.0, 3.0, 1e-12).unwrap() - 1.0).abs() < 1e-12);
        assert!((mult_integral(|_| E, 0.0, 1.0, 1e-12).unwrap() - E).abs() < 1e-10);
        assert!(matches!(
            mult_integral(|t: f64| t - 0.5, 0.0, 1.0, 1e-10),
            Err(Error::NonPositiveIntegrand { .. })
        ));

        // radius function of [t, t^2+1] against a fine trapezoid oracle
        let g = |t: f64| 0.5 * (t * t - t + 1.0);
        let got = mult_integral(g, 0.0, 1.0, 1e-12).unwrap();
        let n = 200_000;
        let mut acc = 0.5 * (g(0.0).ln() + g(1.0).ln());
        for i in 1..n {
            acc += g(i as f64 / n as f64).ln();
        }
        let oracle = (acc / n as f64).exp();
        assert!((got - oracle).abs() < 1e-9, "got {got}, oracle {oracle}");
    }

    #[test]
    fn ftc_examples() {
        let f = ftc_example();
        assert!(verify_ftc(&f, 0.0, 1.0, 1e-8).unwrap());

        let c = IvfHandle::from_expr_str("[1,4]", 0.0, 1.0).unwrap();
        assert!(verify_ftc(&c, 0.0, 1.0, 1e-8).unwrap());
    }

    #[test]
    fn gh_ftc_counterexample() {
        // ∫_0^1 F'_gH = [3/4, 5/4] but F(1) ⊖_gH F(0) = [1,1]
        let f = ftc_example();
        let integral = integrate_gh_derivative(&f, 0.0, 1.0, 1e-10).unwrap();
        assert!((integral.lo() - 0.75).abs() < 1e-8);
        assert!((integral.hi() - 1.25).abs() < 1e-8);
        let jump = f.value(1.0).unwrap().gh_sub(f.value(0.0).unwrap());
        assert_eq!(jump.to_endpoints(), (1.0, 1.0));
        assert!((integral.lo() - jump.lo()).abs() > 0.1);
    }

    #[test]
    fn by_parts_examples() {
        let f = IvfHandle::from_expr_str("[t^2,2*t+1]", 0.0, 1.0).unwrap();
        let g = IvfHandle::from_expr_str("[t,t^2+1]", 0.0, 1.0).unwrap();
        assert!(verify_by_parts(&f, &g, 0.0, 1.0, 1e-8).unwrap());
        let rhs = by_parts_rhs(&f, &g, 0.0, 1.0, 1e-10).unwrap();
        assert!((rhs.center() - 2.75).abs() < 1e-8);
        let ln2 = 2.0f64.ln();
        assert!((rhs.log_radius() + ln2 * ln2).abs() < 1e-8);

        // real multiplier G(t) = 2 - t embeds pointwise
        let gr = IvfHandle::from_expr_str("2-t", 0.0, 1.0).unwrap();
        assert!(verify_by_parts(&f, &gr, 0.0, 1.0, 1e-8).unwrap());
        let rhs = by_parts_rhs(&f, &gr, 0.0, 1.0, 1e-10).unwrap();
        assert!((rhs.center() - 1.0).abs() < 1e-8);
        assert!((rhs.radius() - 4.0).abs() < 1e-7);

        // constants: both sides are the zero element
        let cf = IvfHandle::from_expr_str("[1,2]", 0.0, 1.0).unwrap();
        let cg = IvfHandle::from_expr_str("[3,5]", 0.0, 1.0).unwrap();
        assert!(verify_by_parts(&cf, &cg, 0.0, 1.0, 1e-8).unwrap());
    }

    #[test]
    fn linearity_additivity_monotonicity() {
        let f = IvfHandle::from_expr_str("[t,t^2+1]", 0.0, 1.0).unwrap();
        let g = IvfHandle::from_expr_str("<2+sin(t);2>", 0.0, 1.0).unwrap();
        let l1 = Interval::from_center_log_radius(1.5, 0.5).unwrap();
        let l2 = Interval::from_center_log_radius(-0.5, 2.0).unwrap();

        // linearity with interval coefficients
        let combo = {
            let (fc, gc) = (f.clone(), g.clone());
            let (fr, gr) = (f.clone(), g.clone());
            let (a_c, a_r) = (l1.center(), l1.log_radius());
            let (b_c, b_r) = (l2.center(), l2.log_radius());
            IvfHandle::from_center_log_radius_fns(
                move |t| {
                    a_c * fc.value(t).unwrap().center() + b_c * gc.value(t).unwrap().center()
                },
                move |t| {
                    a_r * fr.value(t).unwrap().log_radius()
                        + b_r * gr.value(t).unwrap().log_radius()
                },
                0.0,
                1.0,
            )
            .unwrap()
        };
        let lhs = ir_integral(&combo, 0.0, 1.0, 1e-10).unwrap().value;
        let rhs = l1
            .mul(ir_integral(&f, 0.0, 1.0, 1e-10).unwrap().value)
            .add(l2.mul(ir_integral(&g, 0.0, 1.0, 1e-10).unwrap().value))
            .unwrap();
        assert!(distance(lhs, rhs) < 1e-8);

        // additivity over a split point
        let whole = ir_integral(&f, 0.0, 1.0, 1e-10).unwrap().value;
        let c = 0.37;
        let split = ir_integral(&f, 0.0, c, 1e-10)
            .unwrap()
            .value
            .add(ir_integral(&f, c, 1.0, 1e-10).unwrap().value)
            .unwrap();
        assert!(distance(whole, split) < 2e-10);

        // monotonicity: g dominates f + shift pointwise in the total order
        let shifted = IvfHandle::from_expr_str("[t,t^2+1]+<4;1>", 0.0, 1.0).unwrap();
        let a = ir_integral(&f, 0.0, 1.0, 1e-10).unwrap().value;
        let b = ir_integral(&shifted, 0.0, 1.0, 1e-10).unwrap().value;
        assert!(matches!(a.cmp_total(&b), OrderRelation::Less));

        // product of integrable IVFs stays integrable
        let prod = {
            let (fc, gc) = (f.clone(), g.clone());
            let (fr, gr) = (f.clone(), g.clone());
            IvfHandle::from_center_log_radius_fns(
                move |t| fc.value(t).unwrap().center() * gc.value(t).unwrap().center(),
                move |t| fr.value(t).unwrap().log_radius() * gr.value(t).unwrap().log_radius(),
                0.0,
                1.0,
            )
            .unwrap()
        };
        assert!(ir_integral(&prod, 0.0, 1.0, 1e-9).is_ok());
    }

    #[test]
    fn ftc_part_one() {
        // derivative of t ↦ ∫_a^t f recovers f
        let f = IvfHandle::from_expr_str("<2+sin(t);2+cos(t)>", 0.0, 2.0).unwrap();
        let accum = {
            let f1 = f.clone();
            let fc = move |t: f64| {
                if t <= 0.0 {
                    return 0.0;
                }
                let inner = |s: f64| f1.value(s).map(|v| v.center());
                adaptive_simpson(&inner, 0.0, t, 1e-11).unwrap().0
            };
            let f2 = f.clone();
            let fr = move |t: f64| {
                if t <= 0.0 {
                    return 0.0;
                }
                let inner = |s: f64| f2.value(s).map(|v| v.log_radius());
                adaptive_simpson(&inner, 0.0, t, 1e-11).unwrap().0
            };
            IvfHandle::from_center_log_radius_fns(fc, fr, 0.0, 2.0).unwrap()
        };
        for t in [0.3, 0.9, 1.5] {
            let d = crate::calculus::derive(&accum, t).unwrap().value;
            let expect = f.value(t).unwrap();
            assert!(distance(d, expect) < 1e-6, "at t = {t}");
        }
    }
}
