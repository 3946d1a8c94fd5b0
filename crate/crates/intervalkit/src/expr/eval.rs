//! The three evaluators over one AST: new interval arithmetic, parametric
//! real arithmetic, and classical Moore endpoint arithmetic.

use super::{BinOp, ExprNode, Func, Var};
use crate::error::{Error, Result};
use crate::interval::{ExtendedInterval, Interval};

/// A value during new-arithmetic evaluation: real subexpressions stay real
/// until they meet an interval operand, at which point they embed via
/// `λ̄ = ⟨λ; e^λ⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalValue {
    Real(f64),
    Interval(Interval),
}

impl EvalValue {
    /// Embeds a real result; identity on intervals.
    pub fn into_interval(self) -> Interval {
        match self {
            EvalValue::Real(v) => Interval::from_real(v),
            EvalValue::Interval(a) => a,
        }
    }
}

/// Evaluates under the new arithmetic with `x` bound to an interval.
pub fn eval_interval(expr: &ExprNode, t: f64, x: Interval) -> Result<Interval> {
    finish(eval_value(expr, t, Some(x))?)
}

/// Evaluates an expression in `t` only; referencing `x` is an error.
pub fn eval_interval_t(expr: &ExprNode, t: f64) -> Result<Interval> {
    finish(eval_value(expr, t, None)?)
}

fn finish(v: EvalValue) -> Result<Interval> {
    let a = v.into_interval();
    if a.center().is_finite() && a.log_radius().is_finite() {
        Ok(a)
    } else {
        Err(Error::Overflow)
    }
}

/// The general new-arithmetic evaluator; `x` may be unbound.
pub fn eval_value(expr: &ExprNode, t: f64, x: Option<Interval>) -> Result<EvalValue> {
    match expr {
        ExprNode::Real(v) => Ok(EvalValue::Real(*v)),
        ExprNode::IntervalLit { value, .. } => Ok(EvalValue::Interval(*value)),
        ExprNode::Var(Var::T) => Ok(EvalValue::Real(t)),
        ExprNode::Var(Var::X) => x.map(EvalValue::Interval).ok_or_else(|| Error::TypeError {
            message: "variable `x` is not bound in this context".into(),
        }),
        ExprNode::Neg(inner) => Ok(match eval_value(inner, t, x)? {
            EvalValue::Real(v) => EvalValue::Real(-v),
            EvalValue::Interval(a) => EvalValue::Interval(a.neg()),
        }),
        ExprNode::Binary { op, lhs, rhs } => {
            let a = eval_value(lhs, t, x)?;
            let b = eval_value(rhs, t, x)?;
            apply_binary(*op, a, b)
        }
        ExprNode::Power { base, exp } => Ok(match eval_value(base, t, x)? {
            EvalValue::Real(v) => EvalValue::Real(v.powi(*exp as i32)),
            EvalValue::Interval(a) => EvalValue::Interval(a.pow_n(*exp)),
        }),
        ExprNode::Call { func, args } => apply_call(*func, args, t, x),
        ExprNode::Endpoints { lo, hi } => {
            let l = expect_real(eval_value(lo, t, x)?, "interval endpoint")?;
            let h = expect_real(eval_value(hi, t, x)?, "interval endpoint")?;
            Ok(EvalValue::Interval(Interval::from_endpoints(l, h)?))
        }
        ExprNode::CenterRadius { center, radius } => {
            let c = expect_real(eval_value(center, t, x)?, "interval center")?;
            let w = expect_real(eval_value(radius, t, x)?, "interval radius")?;
            Ok(EvalValue::Interval(Interval::from_center_radius(c, w)?))
        }
    }
}

fn apply_binary(op: BinOp, a: EvalValue, b: EvalValue) -> Result<EvalValue> {
    if let (EvalValue::Real(p), EvalValue::Real(q)) = (a, b) {
        let v = match op {
            BinOp::Add => p + q,
            BinOp::Sub => p - q,
            BinOp::Mul => p * q,
            BinOp::Div => {
                if q == 0.0 {
                    return Err(Error::DivisionUndefined);
                }
                p / q
            }
        };
        return Ok(EvalValue::Real(v));
    }
    let ia = a.into_interval();
    let ib = b.into_interval();
    let r = match op {
        BinOp::Add => ia.add(ib)?,
        BinOp::Sub => ia.sub(ib),
        BinOp::Mul => ia.mul(ib),
        BinOp::Div => ia.div(ib)?,
    };
    Ok(EvalValue::Interval(r))
}

fn apply_call(func: Func, args: &[ExprNode], t: f64, x: Option<Interval>) -> Result<EvalValue> {
    match func {
        Func::Sin | Func::Cos | Func::Exp | Func::Ln | Func::Abs => {
            let v = expect_real(
                eval_value(&args[0], t, x)?,
                "a transcendental function argument",
            )?;
            let r = match func {
                Func::Sin => v.sin(),
                Func::Cos => v.cos(),
                Func::Exp => v.exp(),
                Func::Ln => v.ln(),
                Func::Abs => v.abs(),
                _ => unreachable!(),
            };
            if !r.is_finite() {
                return Err(Error::Overflow);
            }
            Ok(EvalValue::Real(r))
        }
        Func::SMul => {
            let a = eval_value(&args[0], t, x)?;
            let b = eval_value(&args[1], t, x)?;
            match (a, b) {
                (EvalValue::Real(k), EvalValue::Real(v)) => Ok(EvalValue::Real(k * v)),
                (EvalValue::Real(k), EvalValue::Interval(iv))
                | (EvalValue::Interval(iv), EvalValue::Real(k)) => {
                    let r = ExtendedInterval::from(iv).moore_scale(k);
                    Ok(EvalValue::Interval(r.to_interval()?))
                }
                _ => Err(Error::TypeError {
                    message: "smul needs one real and one interval operand".into(),
                }),
            }
        }
        _ => {
            // classical endpoint operations; reals act as degenerate pairs
            let a = eval_value(&args[0], t, x)?;
            let b = eval_value(&args[1], t, x)?;
            if let (EvalValue::Real(p), EvalValue::Real(q)) = (a, b) {
                let v = match func {
                    Func::MAdd => p + q,
                    Func::MSub | Func::HSub | Func::GhSub => p - q,
                    Func::MMul => p * q,
                    Func::MDiv => {
                        if q == 0.0 {
                            return Err(Error::MooreDivByZeroSpanning);
                        }
                        p / q
                    }
                    _ => unreachable!(),
                };
                return Ok(EvalValue::Real(v));
            }
            let pa = to_pair(a);
            let pb = to_pair(b);
            let r = match func {
                Func::MAdd => pa.moore_add(pb),
                Func::MSub => pa.moore_sub(pb),
                Func::HSub => pa.h_sub(pb)?,
                Func::GhSub => pa.gh_sub(pb),
                Func::MMul => pa.moore_mul(pb),
                Func::MDiv => pa.moore_div(pb)?,
                _ => unreachable!(),
            };
            Ok(EvalValue::Interval(r.to_interval()?))
        }
    }
}

fn to_pair(v: EvalValue) -> ExtendedInterval {
    match v {
        EvalValue::Real(r) => ExtendedInterval::degenerate(r),
        EvalValue::Interval(a) => a.into(),
    }
}

fn expect_real(v: EvalValue, what: &str) -> Result<f64> {
    match v {
        EvalValue::Real(r) => Ok(r),
        EvalValue::Interval(_) => Err(Error::TypeError {
            message: format!("{what} must be real-valued, got an interval"),
        }),
    }
}

/// Evaluates the parametric real form: the `i`-th interval literal is
/// replaced by `params[i]`, `x` is a real, and every operation is ordinary
/// real arithmetic.
pub fn eval_param(expr: &ExprNode, t: f64, x: f64, params: &[f64]) -> Result<f64> {
    let bounds = expr.literal_bounds();
    if bounds.len() != params.len() {
        return Err(Error::ParamArityMismatch {
            expected: bounds.len(),
            got: params.len(),
        });
    }
    for (i, (p, (lo, hi))) in params.iter().zip(&bounds).enumerate() {
        if !(*lo <= *p && *p <= *hi) {
            return Err(Error::ParamOutOfRange {
                index: i,
                value: *p,
            });
        }
    }
    let v = eval_param_inner(expr, t, x, params)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow)
    }
}

fn eval_param_inner(expr: &ExprNode, t: f64, x: f64, params: &[f64]) -> Result<f64> {
    Ok(match expr {
        ExprNode::Real(v) => *v,
        ExprNode::IntervalLit { param_id, .. } => params[*param_id],
        ExprNode::Var(Var::T) => t,
        ExprNode::Var(Var::X) => x,
        ExprNode::Neg(inner) => -eval_param_inner(inner, t, x, params)?,
        ExprNode::Binary { op, lhs, rhs } => {
            let a = eval_param_inner(lhs, t, x, params)?;
            let b = eval_param_inner(rhs, t, x, params)?;
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b == 0.0 {
                        return Err(Error::DivisionUndefined);
                    }
                    a / b
                }
            }
        }
        ExprNode::Power { base, exp } => {
            eval_param_inner(base, t, x, params)?.powi(*exp as i32)
        }
        ExprNode::Call { func, args } => {
            let a = eval_param_inner(&args[0], t, x, params)?;
            match func {
                Func::Sin => a.sin(),
                Func::Cos => a.cos(),
                Func::Exp => a.exp(),
                Func::Ln => a.ln(),
                Func::Abs => a.abs(),
                // classical operations degenerate to real arithmetic here
                _ => {
                    let b = eval_param_inner(&args[1], t, x, params)?;
                    match func {
                        Func::MAdd => a + b,
                        Func::MSub | Func::HSub | Func::GhSub => a - b,
                        Func::MMul | Func::SMul => a * b,
                        Func::MDiv => {
                            if b == 0.0 {
                                return Err(Error::DivisionUndefined);
                            }
                            a / b
                        }
                        _ => unreachable!(),
                    }
                }
            }
        }
        ExprNode::Endpoints { .. } | ExprNode::CenterRadius { .. } => {
            return Err(Error::TypeError {
                message: "interval constructors have no parametric value".into(),
            });
        }
    })
}

/// Evaluates under classical Moore endpoint arithmetic, returning the
/// resulting `(lo, hi)` pair. Reals are degenerate pairs; `+ - * / ^` mean
/// the endpoint operations here.
pub fn eval_endpoint_pair(expr: &ExprNode, t: f64, x_lo: f64, x_hi: f64) -> Result<(f64, f64)> {
    let r = eval_pair(expr, t, (x_lo, x_hi))?;
    if r.lo().is_finite() && r.hi().is_finite() {
        Ok(r.to_endpoints())
    } else {
        Err(Error::Overflow)
    }
}

fn eval_pair(expr: &ExprNode, t: f64, x: (f64, f64)) -> Result<ExtendedInterval> {
    Ok(match expr {
        ExprNode::Real(v) => ExtendedInterval::degenerate(*v),
        ExprNode::IntervalLit { value, .. } => (*value).into(),
        ExprNode::Var(Var::T) => ExtendedInterval::degenerate(t),
        ExprNode::Var(Var::X) => ExtendedInterval::new(x.0, x.1)?,
        ExprNode::Neg(inner) => eval_pair(inner, t, x)?.moore_scale(-1.0),
        ExprNode::Binary { op, lhs, rhs } => {
            let a = eval_pair(lhs, t, x)?;
            let b = eval_pair(rhs, t, x)?;
            match op {
                BinOp::Add => a.moore_add(b),
                BinOp::Sub => a.moore_sub(b),
                BinOp::Mul => a.moore_mul(b),
                BinOp::Div => a.moore_div(b)?,
            }
        }
        ExprNode::Power { base, exp } => {
            let b = eval_pair(base, t, x)?;
            let mut acc = ExtendedInterval::degenerate(1.0);
            for _ in 0..*exp {
                acc = acc.moore_mul(b);
            }
            acc
        }
        ExprNode::Call { func, args } => match func {
            Func::Sin | Func::Cos | Func::Exp | Func::Ln | Func::Abs => {
                let a = eval_pair(&args[0], t, x)?;
                let v = expect_degenerate(a, "a transcendental function argument")?;
                let r = match func {
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Exp => v.exp(),
                    Func::Ln => v.ln(),
                    Func::Abs => v.abs(),
                    _ => unreachable!(),
                };
                ExtendedInterval::degenerate(r)
            }
            Func::SMul => {
                let a = eval_pair(&args[0], t, x)?;
                let b = eval_pair(&args[1], t, x)?;
                if a.lo() == a.hi() {
                    b.moore_scale(a.lo())
                } else if b.lo() == b.hi() {
                    a.moore_scale(b.lo())
                } else {
                    return Err(Error::TypeError {
                        message: "smul needs one real operand".into(),
                    });
                }
            }
            _ => {
                let a = eval_pair(&args[0], t, x)?;
                let b = eval_pair(&args[1], t, x)?;
                match func {
                    Func::MAdd => a.moore_add(b),
                    Func::MSub => a.moore_sub(b),
                    Func::HSub => a.h_sub(b)?,
                    Func::GhSub => a.gh_sub(b),
                    Func::MMul => a.moore_mul(b),
                    Func::MDiv => a.moore_div(b)?,
                    _ => unreachable!(),
                }
            }
        },
        ExprNode::Endpoints { lo, hi } => {
            let l = expect_degenerate(eval_pair(lo, t, x)?, "interval endpoint")?;
            let h = expect_degenerate(eval_pair(hi, t, x)?, "interval endpoint")?;
            ExtendedInterval::new(l, h)?
        }
        ExprNode::CenterRadius { center, radius } => {
            let c = expect_degenerate(eval_pair(center, t, x)?, "interval center")?;
            let w = expect_degenerate(eval_pair(radius, t, x)?, "interval radius")?;
            if w < 0.0 {
                return Err(Error::DegenerateInterval {
                    lo: c - w,
                    hi: c + w,
                });
            }
            ExtendedInterval::new(c - w, c + w)?
        }
    })
}

fn expect_degenerate(v: ExtendedInterval, what: &str) -> Result<f64> {
    if v.lo() == v.hi() {
        Ok(v.lo())
    } else {
        Err(Error::TypeError {
            message: format!("{what} must be real-valued, got an interval"),
        })
    }
}
