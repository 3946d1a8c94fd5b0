//! A small expression language for interval-valued functions and IDE
//! right-hand sides.
//!
//! The default operators `+ - * /` and `^` carry the linear-space interval
//! arithmetic; the classical endpoint operations are reachable as named
//! functions (`madd`, `msub`, `hsub`, `ghsub`, `mmul`, `mdiv`, `smul`), so
//! the grammar never overloads a symbol across the two families.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := unary ('^' uint)?
//! unary  := '-'? atom
//! atom   := number
//!         | '[' expr ',' expr ']'        endpoint interval
//!         | '<' expr ';' expr '>'        center/radius interval
//!         | 't' | 'x'
//!         | fn '(' expr (',' expr)* ')'
//!         | '(' expr ')'
//! ```
//!
//! An interval whose two components are plain (optionally negated) numbers
//! is a *literal* and receives a `param_id` in parse order; parametric
//! evaluation substitutes one real per literal. Non-constant components
//! make it a constructor evaluated pointwise.
//!
//! Three evaluators share the one AST: [`eval_interval`] (new arithmetic,
//! reals embedded on contact with an interval), [`eval_param`] (plain real
//! arithmetic with literals replaced by parameters), and
//! [`eval_endpoint_pair`] (classical Moore endpoint arithmetic).

mod eval;
mod lexer;
mod parser;

pub use eval::{eval_endpoint_pair, eval_interval, eval_interval_t, eval_param, eval_value, EvalValue};
pub use parser::parse;

use crate::interval::Interval;

/// The two variables an expression may reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    T,
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Named functions: real transcendentals plus the classical interval ops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    Abs,
    MAdd,
    MSub,
    HSub,
    GhSub,
    MMul,
    MDiv,
    SMul,
}

impl Func {
    pub(crate) fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Abs => "abs",
            Func::MAdd => "madd",
            Func::MSub => "msub",
            Func::HSub => "hsub",
            Func::GhSub => "ghsub",
            Func::MMul => "mmul",
            Func::MDiv => "mdiv",
            Func::SMul => "smul",
        }
    }

    pub(crate) fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "abs" => Func::Abs,
            "madd" => Func::MAdd,
            "msub" => Func::MSub,
            "hsub" => Func::HSub,
            "ghsub" => Func::GhSub,
            "mmul" => Func::MMul,
            "mdiv" => Func::MDiv,
            "smul" => Func::SMul,
        _ => return None,
        })
    }

    pub(crate) fn arity(self) -> usize {
        match self {
            Func::Sin | Func::Cos | Func::Exp | Func::Ln | Func::Abs => 1,
            _ => 2,
        }
    }
}

/// Which textual form an interval literal was written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LitForm {
    /// `[lo, hi]` — stored numbers are the endpoints.
    Endpoints,
    /// `<c; w>` — stored numbers are center and radius.
    CenterRadius,
}

/// AST of the expression language.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprNode {
    Real(f64),
    /// A constant interval. `first`/`second` are the two numbers as
    /// written (per `form`), kept exact for rendering and for parameter
    /// bounds; `value` is the derived interval.
    IntervalLit {
        value: Interval,
        first: f64,
        second: f64,
        form: LitForm,
        param_id: usize,
    },
    Var(Var),
    Neg(Box<ExprNode>),
    Binary {
        op: BinOp,
        lhs: Box<ExprNode>,
        rhs: Box<ExprNode>,
    },
    /// `base ^ n` with a nonnegative integer exponent; the arithmetic
    /// defines no other interval powers.
    Power { base: Box<ExprNode>, exp: u32 },
    Call { func: Func, args: Vec<ExprNode> },
    /// `[lo, hi]` with non-constant real-valued components.
    Endpoints {
        lo: Box<ExprNode>,
        hi: Box<ExprNode>,
    },
    /// `<c; w>` with non-constant real-valued components.
    CenterRadius {
        center: Box<ExprNode>,
        radius: Box<ExprNode>,
    },
}

impl ExprNode {
    /// Number of interval literals (= parameters of [`eval_param`]).
    pub fn param_count(&self) -> usize {
        self.literal_bounds().len()
    }

    /// Endpoint bounds of every interval literal, in `param_id` order.
    pub fn literal_bounds(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(usize, f64, f64)> = Vec::new();
        collect_literals(self, &mut out);
        out.sort_by_key(|e| e.0);
        out.into_iter().map(|(_, l, h)| (l, h)).collect()
    }

    /// True when the expression references the variable `x`.
    pub fn uses_x(&self) -> bool {
        self.uses_var(Var::X)
    }

    /// True when the expression references the variable `t`.
    pub fn uses_t(&self) -> bool {
        self.uses_var(Var::T)
    }

    fn uses_var(&self, var: Var) -> bool {
        match self {
            ExprNode::Var(v) => *v == var,
            ExprNode::Real(_) | ExprNode::IntervalLit { .. } => false,
            ExprNode::Neg(e) => e.uses_var(var),
            ExprNode::Binary { lhs, rhs, .. } => lhs.uses_var(var) || rhs.uses_var(var),
            ExprNode::Power { base, .. } => base.uses_var(var),
            ExprNode::Call { args, .. } => args.iter().any(|a| a.uses_var(var)),
            ExprNode::Endpoints { lo, hi } => lo.uses_var(var) || hi.uses_var(var),
            ExprNode::CenterRadius { center, radius } => {
                center.uses_var(var) || radius.uses_var(var)
            }
        }
    }
}

fn collect_literals(e: &ExprNode, out: &mut Vec<(usize, f64, f64)>) {
    match e {
        ExprNode::IntervalLit {
            value, param_id, ..
        } => out.push((*param_id, value.lo(), value.hi())),
        ExprNode::Neg(inner) => collect_literals(inner, out),
        ExprNode::Binary { lhs, rhs, .. } => {
            collect_literals(lhs, out);
            collect_literals(rhs, out);
        }
        ExprNode::Power { base, .. } => collect_literals(base, out),
        ExprNode::Call { args, .. } => args.iter().for_each(|a| collect_literals(a, out)),
        ExprNode::Endpoints { lo, hi } => {
            collect_literals(lo, out);
            collect_literals(hi, out);
        }
        ExprNode::CenterRadius { center, radius } => {
            collect_literals(center, out);
            collect_literals(radius, out);
        }
        ExprNode::Real(_) | ExprNode::Var(_) => {}
    }
}

// Rendering precedence levels, mirroring the grammar.
const PREC_EXPR: u8 = 1;
const PREC_TERM: u8 = 2;
const PREC_UNARY: u8 = 3;
const PREC_POWER: u8 = 4;
const PREC_ATOM: u8 = 5;

fn prec(e: &ExprNode) -> u8 {
    match e {
        ExprNode::Binary {
            op: BinOp::Add | BinOp::Sub,
            ..
        } => PREC_EXPR,
        ExprNode::Binary { .. } => PREC_TERM,
        ExprNode::Neg(_) => PREC_UNARY,
        ExprNode::Power { .. } => PREC_POWER,
        _ => PREC_ATOM,
    }
}

/// Renders an AST back to expression text; `parse(render(e)) == e`.
pub fn render(e: &ExprNode) -> String {
    let mut s = String::new();
    render_into(e, &mut s);
    s
}

fn render_into(e: &ExprNode, out: &mut String) {
    match e {
        ExprNode::Real(v) => out.push_str(&format_number(*v)),
        ExprNode::IntervalLit {
            first,
            second,
            form,
            ..
        } => match form {
            LitForm::Endpoints => {
                out.push('[');
                out.push_str(&format_number(*first));
                out.push(',');
                out.push_str(&format_number(*second));
                out.push(']');
            }
            LitForm::CenterRadius => {
                out.push('<');
                out.push_str(&format_number(*first));
                out.push(';');
                out.push_str(&format_number(*second));
                out.push('>');
            }
        },
        ExprNode::Var(Var::T) => out.push('t'),
        ExprNode::Var(Var::X) => out.push('x'),
        ExprNode::Neg(inner) => {
            out.push('-');
            render_child(inner, PREC_ATOM, out);
        }
        ExprNode::Binary { op, lhs, rhs } => {
            let (sym, lmin, rmin) = match op {
                BinOp::Add => ('+', PREC_EXPR, PREC_TERM),
                BinOp::Sub => ('-', PREC_EXPR, PREC_TERM),
                BinOp::Mul => ('*', PREC_TERM, PREC_UNARY),
                BinOp::Div => ('/', PREC_TERM, PREC_UNARY),
            };
            render_child(lhs, lmin, out);
            out.push(sym);
            render_child(rhs, rmin, out);
        }
        ExprNode::Power { base, exp } => {
            // the grammar does not chain `^`, so a power base needs parens
            if matches!(base.as_ref(), ExprNode::Power { .. }) || prec(base) < PREC_UNARY {
                out.push('(');
                render_into(base, out);
                out.push(')');
            } else {
                render_into(base, out);
            }
            out.push('^');
            out.push_str(&exp.to_string());
        }
        ExprNode::Call { func, args } => {
            out.push_str(func.name());
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                render_into(a, out);
            }
            out.push(')');
        }
        ExprNode::Endpoints { lo, hi } => {
            out.push('[');
            render_into(lo, out);
            out.push(',');
            render_into(hi, out);
            out.push(']');
        }
        ExprNode::CenterRadius { center, radius } => {
            out.push('<');
            render_into(center, out);
            out.push(';');
            render_into(radius, out);
            out.push('>');
        }
    }
}

fn render_child(e: &ExprNode, min: u8, out: &mut String) {
    if prec(e) < min {
        out.push('(');
        render_into(e, out);
        out.push(')');
    } else {
        render_into(e, out);
    }
}

fn format_number(v: f64) -> String {
    // shortest representation that parses back to the same f64
    format!("{v}")
}
