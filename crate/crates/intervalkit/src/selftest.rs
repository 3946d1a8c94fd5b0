//! The reference-example check suite.
//!
//! Every check pins an independently derived value (hand arithmetic,
//! closed-form solutions, or brute-force oracles) against the library at
//! a fixed tolerance. The CLI `selftest` subcommand runs the whole table;
//! the acceptance test target runs each check as its own test.

#![allow(clippy::type_complexity)] // inline reference tables

use std::time::Instant;

use crate::calculus::{derive, find_switching_points, IvfHandle};
use crate::ide::{
    compare, reference, solve_gh, solve_new, solve_param_sweep_seq, solve_picard, GhBranchSpec,
    GhSegment, IdeProblem, Method,
};
use crate::interval::{ExtendedInterval, Interval};
use crate::metric::{distance, norm, sup_distance};
use crate::quadrature::{by_parts_rhs, integral_of_derivative, integrate_gh_derivative, verify_ftc};
use crate::trajectory::Trajectory;

type CheckFn = fn() -> Result<(), String>;

/// One entry of the check table.
pub struct Check {
    pub id: usize,
    pub name: &'static str,
    pub run: CheckFn,
}

/// Outcome of one executed check.
pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    pub outcome: Result<(), String>,
    pub elapsed_ms: f64,
}

/// The check table in criterion order.
pub fn checks() -> Vec<Check> {
    vec![
        Check { id: 1, name: "multiplication and division tables", run: check_tables },
        Check { id: 2, name: "worked arithmetic examples", run: check_worked_examples },
        Check { id: 3, name: "algebraic property suite (1e4 random triples)", run: check_property_suite },
        Check { id: 4, name: "derivative engine vs analytic forms", run: check_derivatives },
        Check { id: 5, name: "fundamental theorem and gH counterexample", run: check_ftc },
        Check { id: 6, name: "integration by parts", run: check_by_parts },
        Check { id: 7, name: "ide closed forms (quadratic and sin forcing)", run: check_ide_closed_forms },
        Check { id: 8, name: "ide sin growth closed form", run: check_sin_growth },
        Check { id: 9, name: "gh branch solutions and discard report", run: check_gh_branches },
        Check { id: 10, name: "rk4 convergence order", run: check_convergence_order },
        Check { id: 11, name: "picard agreement with rk4", run: check_picard },
    ]
}

/// Runs every check, timing each.
pub fn run_all() -> Vec<CheckResult> {
    checks()
        .into_iter()
        .map(|c| {
            let start = Instant::now();
            let outcome = (c.run)();
            CheckResult {
                id: c.id,
                name: c.name,
                outcome,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn close(got: f64, want: f64, tol: f64, what: &str) -> Result<(), String> {
    ensure(
        (got - want).abs() <= tol,
        format!("{what}: got {got:.12e}, want {want:.12e} (tol {tol:.1e})"),
    )
}

fn iv(l: f64, r: f64) -> Interval {
    Interval::from_endpoints(l, r).unwrap()
}

fn endpoints_close(got: (f64, f64), want: (f64, f64), tol: f64, what: &str) -> Result<(), String> {
    close(got.0, want.0, tol, &format!("{what} (lo)"))?;
    close(got.1, want.1, tol, &format!("{what} (hi)"))
}

// ---------------------------------------------------------------- check 1

fn check_tables() -> Result<(), String> {
    let start = Instant::now();

    // multiplication table, 2-decimal references
    let mul_rows: [(f64, f64, f64, f64, (f64, f64), (f64, f64)); 5] = [
        (-10.0, 5.0, -10.0, 5.0, (-51.71, 64.21), (-50.0, 100.0)),
        (-2.0, -1.0, 1.0, 2.0, (-3.87, -0.63), (-4.0, -1.0)),
        (0.0, 1.0, 0.0, 1.0, (-1.37, 1.87), (0.0, 1.0)),
        (0.0, 1.0, 0.0, 2.0, (-0.5, 1.5), (0.0, 2.0)),
        (0.0, 1.0, 0.0, 4.0, (0.38, 1.62), (0.0, 4.0)),
    ];
    for (al, ar, bl, br, new_want, moore_want) in mul_rows {
        let a = iv(al, ar);
        let b = iv(bl, br);
        endpoints_close(a.mul(b).to_endpoints(), new_want, 0.01, "new product")?;
        let am = ExtendedInterval::new(al, ar).unwrap();
        let bm = ExtendedInterval::new(bl, br).unwrap();
        endpoints_close(am.moore_mul(bm).to_endpoints(), moore_want, 1e-12, "classical product")?;
    }

    // division table; None marks an undefined entry
    struct DivRow {
        a: (f64, f64),
        b: (f64, f64),
        new: Option<(f64, f64)>,
        moore: Option<(f64, f64)>,
    }
    let div_rows = [
        DivRow { a: (-7.0, -5.0), b: (-10.0, -2.0), new: Some((0.0, 2.0)), moore: Some((0.5, 3.5)) },
        DivRow { a: (2.0, 4.0), b: (1.0, 5.0), new: Some((0.0, 2.0)), moore: Some((0.4, 4.0)) },
        DivRow { a: (7.0, 9.0), b: (-10.0, -6.0), new: Some((-2.0, 0.0)), moore: Some((-1.5, -0.7)) },
        DivRow { a: (-6.0, -4.0), b: (-10.0, 0.0), new: Some((0.0, 2.0)), moore: None },
        DivRow { a: (-10.0, 0.0), b: (-6.0, -4.0), new: None, moore: Some((0.0, 2.5)) },
        DivRow { a: (-1.0, 1.0), b: (-1.0, 2.0), new: Some((-1.0, 1.0)), moore: None },
        DivRow { a: (-1.0, 2.0), b: (-2.0, 2.0), new: None, moore: None },
    ];
    for row in &div_rows {
        let a = iv(row.a.0, row.a.1);
        let b = iv(row.b.0, row.b.1);
        match (a.div(b), row.new) {
            (Ok(q), Some(want)) => endpoints_close(q.to_endpoints(), want, 1e-12, "new quotient")?,
            (Err(_), None) => {}
            (Ok(q), None) => return Err(format!("new quotient {q} should be undefined")),
            (Err(e), Some(_)) => return Err(format!("new quotient unexpectedly failed: {e}")),
        }
        let am = ExtendedInterval::new(row.a.0, row.a.1).unwrap();
        let bm = ExtendedInterval::new(row.b.0, row.b.1).unwrap();
        match (am.moore_div(bm), row.moore) {
            (Ok(q), Some(want)) => {
                endpoints_close(q.to_endpoints(), want, 1e-12, "classical quotient")?
            }
            (Err(_), None) => {}
            (Ok(q), None) => return Err(format!("classical quotient {q} should be undefined")),
            (Err(e), Some(_)) => return Err(format!("classical quotient unexpectedly failed: {e}")),
        }
    }

    let elapsed = start.elapsed();
    ensure(
        elapsed.as_secs_f64() < 1e-3,
        format!("table evaluation took {:.3} ms, budget 1 ms", elapsed.as_secs_f64() * 1e3),
    )
}

// ---------------------------------------------------------------- check 2

fn check_worked_examples() -> Result<(), String> {
    let tol = 1e-12;

    // sums of [-5,-1] with [1,3], [1,5], [1,7], both families
    let a = iv(-5.0, -1.0);
    let sums = [
        ((1.0, 3.0), (-3.0, 1.0), (-4.0, 2.0)),
        ((1.0, 5.0), (-4.0, 4.0), (-4.0, 4.0)),
        ((1.0, 7.0), (-5.0, 7.0), (-4.0, 6.0)),
    ];
    let am = ExtendedInterval::new(-5.0, -1.0).unwrap();
    for ((bl, br), new_want, moore_want) in sums {
        let b = iv(bl, br);
        endpoints_close(a.add(b).map_err(|e| e.to_string())?.to_endpoints(), new_want, tol, "sum")?;
        let bm = ExtendedInterval::new(bl, br).unwrap();
        endpoints_close(am.moore_add(bm).to_endpoints(), moore_want, tol, "classical sum")?;
    }

    // scalar products, all listed k cases including the √2 forms
    let s2 = std::f64::consts::SQRT_2;
    let scalar_cases: [((f64, f64), &[(f64, f64, f64)], &[(f64, f64, f64)]); 3] = [
        (
            (-2.0, -1.0),
            &[
                (-1.0, -0.5, 3.5),
                (0.0, -1.0, 1.0),
                (0.5, -0.75 - s2 / 2.0, -0.75 + s2 / 2.0),
                (1.0, -2.0, -1.0),
                (2.0, -3.25, -2.75),
            ],
            &[
                (-1.0, 1.0, 2.0),
                (0.0, 0.0, 0.0),
                (0.5, -1.0, -0.5),
                (1.0, -2.0, -1.0),
                (2.0, -4.0, -2.0),
            ],
        ),
        (
            (1.0, 5.0),
            &[
                (-1.0, -3.5, -2.5),
                (0.0, -1.0, 1.0),
                (1.0, 1.0, 5.0),
                (1.5, 4.5 - 2.0 * s2, 4.5 + 2.0 * s2),
                (2.0, 2.0, 10.0),
                (3.0, 1.0, 17.0),
            ],
            &[
                (-1.0, -5.0, -1.0),
                (0.0, 0.0, 0.0),
                (1.0, 1.0, 5.0),
                (1.5, 1.5, 7.5),
                (2.0, 2.0, 10.0),
                (3.0, 3.0, 15.0),
            ],
        ),
        (
            (1.0, 9.0),
            &[
                (-0.5, -3.0, -2.0),
                (0.0, -1.0, 1.0),
                (0.5, 0.5, 4.5),
                (0.75, 3.75 - 2.0 * s2, 3.75 + 2.0 * s2),
                (1.0, 1.0, 9.0),
                (2.0, -6.0, 26.0),
            ],
            &[
                (-0.5, -4.5, -0.5),
                (0.0, 0.0, 0.0),
                (0.5, 0.5, 4.5),
                (0.75, 0.75, 6.75),
                (1.0, 1.0, 9.0),
                (2.0, 2.0, 18.0),
            ],
        ),
    ];
    for ((al, ar), new_cases, moore_cases) in scalar_cases {
        let base = iv(al, ar);
        let base_m = ExtendedInterval::new(al, ar).unwrap();
        for (k, lo, hi) in new_cases {
            endpoints_close(base.scale(*k).to_endpoints(), (*lo, *hi), tol, "scalar product")?;
        }
        for (k, lo, hi) in moore_cases {
            endpoints_close(
                base_m.moore_scale(*k).to_endpoints(),
                (*lo, *hi),
                tol,
                "classical scalar product",
            )?;
        }
    }

    // difference triples: c = a - b, d = a ⊖ b, e = a ⊖_gH b
    let diff_cases = [
        ((-3.0, -1.0), (-4.0, 0.0), (-0.5, 0.5), (-3.0, 3.0), (-1.0, 1.0)),
        ((1.0, 9.0), (-2.0, 2.0), (3.0, 7.0), (-1.0, 11.0), (3.0, 7.0)),
        ((-4.0, 0.0), (-3.0, -1.0), (-2.0, 2.0), (-3.0, 3.0), (-1.0, 1.0)),
        ((0.5, 5.0), (0.0, 1.5), (-1.0, 5.0), (-1.0, 5.0), (0.5, 3.5)),
        ((0.5, 3.5), (1.5, 2.5), (-3.0, 3.0), (-2.0, 2.0), (-1.0, 1.0)),
    ];
    for ((al, ar), (bl, br), c, d, e) in diff_cases {
        let a = iv(al, ar);
        let b = iv(bl, br);
        endpoints_close(a.sub(b).to_endpoints(), c, tol, "new difference")?;
        let am = ExtendedInterval::new(al, ar).unwrap();
        let bm = ExtendedInterval::new(bl, br).unwrap();
        endpoints_close(am.moore_sub(bm).to_endpoints(), d, tol, "classical difference")?;
        endpoints_close(am.gh_sub(bm).to_endpoints(), e, tol, "gH difference")?;
    }

    // mixed real/interval table for a = [-1,3], λ = 2
    let a = iv(-1.0, 3.0);
    let lam = Interval::from_real(2.0);
    let e2 = std::f64::consts::E.powi(2);
    endpoints_close(
        a.add(lam).map_err(|e| e.to_string())?.to_endpoints(),
        (3.0 - 2.0 * e2, 3.0 + 2.0 * e2),
        tol,
        "a + λ",
    )?;
    endpoints_close(
        a.sub(lam).to_endpoints(),
        (-1.0 - 2.0 / e2, -1.0 + 2.0 / e2),
        tol,
        "a - λ",
    )?;
    endpoints_close(
        lam.sub(a).to_endpoints(),
        (1.0 - 0.5 * e2, 1.0 + 0.5 * e2),
        tol,
        "λ - a",
    )?;
    endpoints_close(a.scale(2.0).to_endpoints(), (-2.0, 6.0), tol, "a × λ")?;
    endpoints_close(a.mul(lam).to_endpoints(), (-2.0, 6.0), tol, "embedded a × λ")?;
    let s2 = std::f64::consts::SQRT_2;
    endpoints_close(
        a.div(lam).map_err(|e| e.to_string())?.to_endpoints(),
        (0.5 - s2, 0.5 + s2),
        tol,
        "a ÷ λ",
    )?;
    let w = (2.0 / 2.0f64.ln()).exp();
    endpoints_close(
        lam.div(a).map_err(|e| e.to_string())?.to_endpoints(),
        (2.0 - w, 2.0 + w),
        tol,
        "λ ÷ a",
    )?;

    let dl = ExtendedInterval::degenerate(2.0);
    let ae = ExtendedInterval::new(-1.0, 3.0).unwrap();
    endpoints_close(ae.moore_add(dl).to_endpoints(), (1.0, 5.0), tol, "a ⊕ λ")?;
    endpoints_close(ae.moore_sub(dl).to_endpoints(), (-3.0, 1.0), tol, "a ⊖ λ")?;
    endpoints_close(
        ae.h_sub(dl).map_err(|e| e.to_string())?.to_endpoints(),
        (-3.0, 1.0),
        tol,
        "a ⊖_H λ",
    )?;
    endpoints_close(ae.gh_sub(dl).to_endpoints(), (-3.0, 1.0), tol, "a ⊖_gH λ")?;
    endpoints_close(dl.moore_sub(ae).to_endpoints(), (-1.0, 3.0), tol, "λ ⊖ a")?;
    endpoints_close(ae.moore_mul(dl).to_endpoints(), (-2.0, 6.0), tol, "a ⊗ λ")?;
    endpoints_close(ae.moore_div(dl).map_err(|e| e.to_string())?.to_endpoints(), (-0.5, 1.5), tol, "a ⊘ λ")?;
    ensure(dl.moore_div(ae).is_err(), "λ ⊘ a should be undefined")
}

// ---------------------------------------------------------------- check 3

/// SplitMix64; deterministic across runs and platforms.
struct Rng(u64);

impl Rng {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    fn interval(&mut self) -> Interval {
        Interval::from_center_log_radius(self.range(-3.0, 3.0), self.range(-1.5, 1.5)).unwrap()
    }
}

fn coord_close(a: Interval, b: Interval, tol: f64, what: &str) -> Result<(), String> {
    close(a.center(), b.center(), tol, &format!("{what} (center)"))?;
    close(a.log_radius(), b.log_radius(), tol, &format!("{what} (log-radius)"))
}

fn check_property_suite() -> Result<(), String> {
    let mut rng = Rng(0x1DE5CA1C);
    let tol = 1e-9;
    let n_trials = 10_000;
    for trial in 0..n_trials {
        let a = rng.interval();
        let b = rng.interval();
        let c = rng.interval();
        let k = rng.range(-3.0, 3.0);
        let l = rng.range(-3.0, 3.0);
        let ctx = |what: &str| format!("trial {trial}: {what}");

        // linear-space axioms
        let ab = a.add(b).map_err(|e| e.to_string())?;
        coord_close(ab, b.add(a).map_err(|e| e.to_string())?, tol, &ctx("commutativity"))?;
        coord_close(
            a.add(b.add(c).unwrap()).unwrap(),
            ab.add(c).unwrap(),
            tol,
            &ctx("associativity"),
        )?;
        coord_close(a.add(Interval::ZERO).unwrap(), a, tol, &ctx("zero element"))?;
        coord_close(a.add(a.neg()).unwrap(), Interval::ZERO, tol, &ctx("negative element"))?;
        coord_close(ab.scale(k), a.scale(k).add(b.scale(k)).unwrap(), tol, &ctx("k(a+b)"))?;
        coord_close(a.scale(k + l), a.scale(k).add(a.scale(l)).unwrap(), tol, &ctx("(k+l)a"))?;
        coord_close(a.scale(k * l), a.scale(l).scale(k), tol, &ctx("(kl)a"))?;
        coord_close(a.scale(1.0), a, tol, &ctx("1·a"))?;

        // inverse laws
        coord_close(ab.sub(b), a, tol, &ctx("(a+b)-b"))?;
        if b.center().abs() > 1e-3 && b.log_radius().abs() > 1e-3 {
            coord_close(
                a.mul(b).div(b).map_err(|e| e.to_string())?,
                a,
                tol,
                &ctx("(ab)/b"),
            )?;
        }

        // order laws
        let phi_le = crate::interval::phi(a, b) <= 0.0;
        ensure(phi_le == a.le_total(&b), ctx("φ sign vs total order"))?;
        ensure(
            a.add(c).unwrap().le_total(&b.add(c).unwrap()) == a.le_total(&b),
            ctx("translation invariance"),
        )?;
        if a.le_total(&b) {
            if k >= 0.0 {
                ensure(a.scale(k).le_total(&b.scale(k)), ctx("scalar monotonicity"))?;
            } else {
                ensure(b.scale(k).le_total(&a.scale(k)), ctx("scalar antitonicity"))?;
            }
        }
        // multiplication order law away from its degenerate boundaries
        if (a.center() - b.center()).abs() > 1e-6
            && c.center().abs() > 1e-6
            && c.log_radius().abs() > 1e-6
        {
            let lhs = a.mul(c).le_total(&b.mul(c));
            let c_nonneg = Interval::ZERO.le_total(&c);
            let rhs = (a.le_total(&b) && c_nonneg) || (b.le_total(&a) && !c_nonneg);
            ensure(lhs == rhs, ctx("multiplication order law"))?;
        }

        // parallelogram law (squared form) and polarization identity
        let sum = norm(ab).powi(2) + norm(a.sub(b)).powi(2);
        close(
            sum,
            2.0 * norm(a).powi(2) + 2.0 * norm(b).powi(2),
            tol * (1.0 + sum.abs()),
            &ctx("parallelogram"),
        )?;
        let pol = 0.25 * (norm(ab).powi(2) - norm(a.sub(b)).powi(2));
        close(
            pol,
            crate::metric::inner(a, b),
            tol * (1.0 + pol.abs()),
            &ctx("polarization"),
        )?;

        // binomial identity up to n = 5
        let n = (rng.next_u64() % 6) as u32;
        let lhs = ab.pow_n(n);
        let mut rhs = b.pow_n(n); // i = 0 term: C(n,0) a^0 b^n
        for i in 1..=n {
            rhs = rhs
                .add(a.pow_n(i).mul(b.pow_n(n - i)).scale(binom(n, i)))
                .unwrap();
        }
        coord_close(lhs, rhs, tol, &ctx("binomial identity"))?;
    }
    Ok(())
}

fn binom(n: u32, k: u32) -> f64 {
    let mut v = 1.0f64;
    for i in 0..k {
        v = v * (n - i) as f64 / (i + 1) as f64;
    }
    v
}

// ---------------------------------------------------------------- check 4

fn check_derivatives() -> Result<(), String> {
    // F = [t, t^2+1]: F' = ⟨t + 1/2; e^{(2t-1)/(t²-t+1)}⟩
    let f = IvfHandle::from_expr_str("[t,t^2+1]", 0.0, 1.0).map_err(|e| e.to_string())?;
    for i in 0..=100 {
        let t = 0.05 + 0.9 * (i as f64) / 100.0;
        let d = derive(&f, t).map_err(|e| format!("derive at {t}: {e}"))?;
        let want = Interval::from_center_log_radius(t + 0.5, (2.0 * t - 1.0) / (t * t - t + 1.0))
            .unwrap();
        ensure(
            distance(d.value, want) < 1e-6,
            format!("derivative off by {:.3e} at t = {t}", distance(d.value, want)),
        )?;
    }

    // f = [t²/2, 1 + t²/2 + 2 sin²t]: f' = ⟨t + sin 2t; e^{2 sin 2t/(2-cos 2t)}⟩
    let tau = 2.0 * std::f64::consts::PI;
    let g = IvfHandle::from_expr_str("[t^2/2, 1 + t^2/2 + 2*sin(t)^2]", 0.0, tau)
        .map_err(|e| e.to_string())?;
    for i in 0..=100 {
        let t = 0.1 + (tau - 0.2) * (i as f64) / 100.0;
        let d = derive(&g, t).map_err(|e| format!("derive at {t}: {e}"))?;
        let want = Interval::from_center_log_radius(
            t + (2.0 * t).sin(),
            2.0 * (2.0 * t).sin() / (2.0 - (2.0 * t).cos()),
        )
        .unwrap();
        ensure(
            distance(d.value, want) < 1e-6,
            format!("derivative off by {:.3e} at t = {t}", distance(d.value, want)),
        )?;
    }

    // three switching points at π/2, π, 3π/2
    let pts = find_switching_points(&g, 256).map_err(|e| e.to_string())?;
    ensure(pts.len() == 3, format!("expected 3 switching points, got {:?}", pts))?;
    let want = [0.5, 1.0, 1.5].map(|k| k * std::f64::consts::PI);
    for (p, w) in pts.iter().zip(want) {
        close(*p, w, 1e-8, "switching point")?;
    }
    Ok(())
}

// ---------------------------------------------------------------- check 5

fn check_ftc() -> Result<(), String> {
    let f = IvfHandle::from_expr_str("[t,t^2+1]", 0.0, 1.0).map_err(|e| e.to_string())?;
    ensure(
        verify_ftc(&f, 0.0, 1.0, 1e-8).map_err(|e| e.to_string())?,
        "Newton–Leibniz identity failed at tol 1e-8",
    )?;
    let lhs = f.value(1.0).unwrap().sub(f.value(0.0).unwrap());
    endpoints_close(lhs.to_endpoints(), (0.0, 2.0), 1e-12, "F(1) - F(0)")?;
    let rhs = integral_of_derivative(&f, 0.0, 1.0, 1e-10).map_err(|e| e.to_string())?;
    ensure(
        distance(lhs, rhs) < 1e-8,
        format!("∫F' differs from F(1)-F(0) by {:.3e}", distance(lhs, rhs)),
    )?;

    // gH counterexample: ∫ F'_gH = [3/4, 5/4] but F(1) ⊖_gH F(0) = [1,1]
    let gh_int = integrate_gh_derivative(&f, 0.0, 1.0, 1e-10).map_err(|e| e.to_string())?;
    endpoints_close(gh_int.to_endpoints(), (0.75, 1.25), 1e-8, "∫F'_gH")?;
    let jump = f.value(1.0).unwrap().gh_sub(f.value(0.0).unwrap());
    endpoints_close(jump.to_endpoints(), (1.0, 1.0), 1e-12, "F(1) ⊖_gH F(0)")?;
    ensure(
        (gh_int.lo() - jump.lo()).abs() > 0.2,
        "gH counterexample should show a strict gap",
    )
}

// ---------------------------------------------------------------- check 6

fn check_by_parts() -> Result<(), String> {
    let ln2 = 2.0f64.ln();

    // F = [t², 2t+1], G = [t, t²+1]: both sides ⟨11/4; 2^{-ln 2}⟩
    let f = IvfHandle::from_expr_str("[t^2,2*t+1]", 0.0, 1.0).map_err(|e| e.to_string())?;
    let g = IvfHandle::from_expr_str("[t,t^2+1]", 0.0, 1.0).map_err(|e| e.to_string())?;
    let lhs = f.value(1.0).unwrap().mul(g.value(1.0).unwrap())
        .sub(f.value(0.0).unwrap().mul(g.value(0.0).unwrap()));
    let rhs = by_parts_rhs(&f, &g, 0.0, 1.0, 1e-10).map_err(|e| e.to_string())?;
    for (side, v) in [("lhs", lhs), ("rhs", rhs)] {
        close(v.center(), 2.75, 1e-8, &format!("{side} center"))?;
        close(v.radius(), (-ln2 * ln2).exp(), 1e-8, &format!("{side} radius"))?;
    }
    close((-ln2 * ln2).exp(), 0.618503, 1e-6, "2^{-ln 2} reference")?;

    // F = [t², 2t+1], real G(t) = 2 - t: both sides ⟨1; 4⟩
    let gr = IvfHandle::from_expr_str("2-t", 0.0, 1.0).map_err(|e| e.to_string())?;
    let lhs = f.value(1.0).unwrap().mul(gr.value(1.0).unwrap())
        .sub(f.value(0.0).unwrap().mul(gr.value(0.0).unwrap()));
    let rhs = by_parts_rhs(&f, &gr, 0.0, 1.0, 1e-10).map_err(|e| e.to_string())?;
    for (side, v) in [("lhs", lhs), ("rhs", rhs)] {
        close(v.center(), 1.0, 1e-8, &format!("{side} center"))?;
        close(v.radius(), 4.0, 1e-8, &format!("{side} radius"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------- checks 7/8

fn sup_endpoint_dev(traj: &Trajectory, f: impl Fn(f64) -> (f64, f64)) -> f64 {
    traj.grid()
        .iter()
        .zip(traj.values())
        .map(|(&t, v)| {
            let (lo, hi) = f(t);
            (v.lo() - lo).abs().max((v.hi() - hi).abs())
        })
        .fold(0.0, f64::max)
}

fn quadratic_forcing_problem() -> IdeProblem {
    IdeProblem::new("[1,2]*t/(1+x^2)", 0.0, 4.0, iv(-1.0, 1.0)).unwrap()
}

fn sin_growth_problem() -> IdeProblem {
    IdeProblem::new("x*sin(t)", 0.0, 6.0, iv(1.0, 2.0)).unwrap()
}

fn check_ide_closed_forms() -> Result<(), String> {
    let start = Instant::now();
    let p = quadratic_forcing_problem();
    let traj = solve_new(&p).map_err(|e| e.to_string())?;
    let dev = sup_endpoint_dev(&traj, |t| {
        let (u, v) = reference::rational_rhs_center_rho(t);
        (u - v.exp(), u + v.exp())
    });
    ensure(dev <= 1e-6, format!("quadratic forcing deviation {dev:.3e} > 1e-6"))?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 1.0, format!("rk4 solve took {elapsed:.2} s, budget 1 s"))?;

    let p2 = IdeProblem::new("[1,2]*sin(t)/(1+x^2)", 0.0, 4.0, iv(1.0, 3.0)).unwrap();
    let traj2 = solve_new(&p2).map_err(|e| e.to_string())?;
    let dev2 = sup_endpoint_dev(&traj2, |t| {
        let (u, v) = reference::sin_forcing_center_rho(t);
        (u - v.exp(), u + v.exp())
    });
    ensure(dev2 <= 1e-6, format!("sin forcing deviation {dev2:.3e} > 1e-6"))
}

fn check_sin_growth() -> Result<(), String> {
    let p = sin_growth_problem();
    let traj = solve_new(&p).map_err(|e| e.to_string())?;
    let dev = sup_endpoint_dev(&traj, |t| {
        let (c, r) = reference::sin_growth_center_radius(t);
        (c - r, c + r)
    });
    ensure(dev <= 1e-6, format!("sin growth deviation {dev:.3e} > 1e-6"))
}

// ---------------------------------------------------------------- check 9

fn check_gh_branches() -> Result<(), String> {
    // linear problem: type I gives x₁; type II switching to type I at t = 1
    // gives the piecewise x₂; pure type II crosses and is discarded
    let mut p = IdeProblem::new("-x+[1,2]*t", 0.0, 3.0, iv(0.0, 1.0)).unwrap();
    p.method = Method::GhBranch;
    p.gh_branches = vec![
        GhBranchSpec::uniform(GhSegment::TypeI),
        GhBranchSpec::new(vec![1.0], vec![GhSegment::TypeII, GhSegment::TypeI]),
        GhBranchSpec::uniform(GhSegment::TypeII),
    ];
    let sol = solve_gh(&p).map_err(|e| e.to_string())?;
    ensure(sol.trajectories.len() == 2, format!("expected 2 accepted branches, got {}", sol.trajectories.len()))?;
    ensure(sol.discarded.len() == 1, "expected 1 discarded branch")?;
    ensure(
        (sol.discarded[0].t_crossed - 1.0).abs() < 0.05,
        format!("discard reported at t = {}", sol.discarded[0].t_crossed),
    )?;
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
        ensure(dev <= 1e-6, format!("linear gh branch {k} deviation {dev:.3e}"))?;
    }

    // sin growth: all four branch patterns around the switch at π
    let pi = std::f64::consts::PI;
    let mut p = sin_growth_problem();
    p.method = Method::GhBranch;
    p.gh_branches = vec![
        GhBranchSpec::new(vec![pi], vec![GhSegment::TypeI, GhSegment::TypeII]),
        GhBranchSpec::new(vec![pi], vec![GhSegment::TypeII, GhSegment::TypeI]),
        GhBranchSpec::uniform(GhSegment::TypeI),
        GhBranchSpec::uniform(GhSegment::TypeII),
    ];
    let sol = solve_gh(&p).map_err(|e| e.to_string())?;
    ensure(sol.trajectories.len() == 4, format!("expected 4 accepted branches, got {}", sol.trajectories.len()))?;
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
        ensure(dev <= 1e-6, format!("sin gh branch {k} deviation {dev:.3e}"))?;
    }
    Ok(())
}

// --------------------------------------------------------------- check 10

fn check_convergence_order() -> Result<(), String> {
    let exact = |t: f64| {
        let (u, v) = reference::rational_rhs_center_rho(t);
        (u - v.exp(), u + v.exp())
    };
    let mut p = quadratic_forcing_problem();
    p.step = 0.04;
    let e1 = sup_endpoint_dev(&solve_new(&p).map_err(|e| e.to_string())?, exact);
    p.step = 0.02;
    let e2 = sup_endpoint_dev(&solve_new(&p).map_err(|e| e.to_string())?, exact);
    let ratio = e1 / e2;
    ensure(
        (12.0..=20.0).contains(&ratio),
        format!("halving ratio {ratio:.2} outside [12, 20] (errors {e1:.3e} → {e2:.3e})"),
    )
}

// --------------------------------------------------------------- check 11

fn check_picard() -> Result<(), String> {
    for (mut p, name) in [
        (quadratic_forcing_problem(), "quadratic forcing"),
        (sin_growth_problem(), "sin growth"),
    ] {
        p.step = 2e-3;
        p.picard_tol = 1e-6;
        p.picard_max_iter = 50;
        let rk = solve_new(&p).map_err(|e| e.to_string())?;
        let pic = solve_picard(&p).map_err(|e| format!("{name}: {e}"))?;
        let d = sup_distance(&rk, &pic).map_err(|e| e.to_string())?;
        ensure(d <= 1e-4, format!("{name}: picard vs rk4 sup distance {d:.3e} > 1e-4"))?;
    }
    Ok(())
}

// -------------------------------------------------------- sweeps (used by CLI)

/// The sweep comparison behind the CLI demonstration paths: solves the
/// interval problem and its parametric family, returning both sup
/// deviations. Reported, not asserted: the two solution families are only
/// roughly consistent and no numeric tolerance relates them.
pub fn sweep_comparison_demo() -> Result<(f64, f64), String> {
    let mut p = quadratic_forcing_problem();
    p.step = 5e-3;
    p.sweep_density = 5;
    let new_traj = solve_new(&p).map_err(|e| e.to_string())?.to_endpoints();
    let env = solve_param_sweep_seq(&p).map_err(|e| e.to_string())?;
    let report = compare(&[new_traj, env]).map_err(|e| e.to_string())?;
    let first = report.pairs()[0].sup;

    let mut p2 = sin_growth_problem();
    p2.step = 5e-3;
    p2.sweep_density = 5;
    let new_traj2 = solve_new(&p2).map_err(|e| e.to_string())?.to_endpoints();
    let env2 = solve_param_sweep_seq(&p2).map_err(|e| e.to_string())?;
    let report2 = compare(&[new_traj2, env2]).map_err(|e| e.to_string())?;
    Ok((first, report2.pairs()[0].sup))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes() {
        for r in run_all() {
            if let Err(e) = &r.outcome {
                panic!("check {} ({}) failed: {e}", r.id, r.name);
            }
        }
    }
}
