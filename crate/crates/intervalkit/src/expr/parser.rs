//! Recursive-descent parser for the expression grammar.

use super::lexer::{tokenize, Tok, Token};
use super::{BinOp, ExprNode, Func, LitForm, Var};
use crate::error::{Error, Result};
use crate::interval::Interval;

/// Parses expression text into an AST. Interval literals receive
/// `param_id`s in parse order; degenerate literals are rejected here.
pub fn parse(src: &str) -> Result<ExprNode> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: src.len(),
        next_param: 0,
    };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(Error::Syntax {
            offset: t.offset,
            message: "unexpected trailing input".into(),
        });
    }
    Ok(e)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
    next_param: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |t| t.offset)
    }

    fn eat(&mut self, want: Tok, what: &str) -> Result<()> {
        match self.bump() {
            Some(t) if t.tok == want => Ok(()),
            Some(t) => Err(Error::Syntax {
                offset: t.offset,
                message: format!("expected {what}"),
            }),
            None => Err(Error::Syntax {
                offset: self.end,
                message: format!("expected {what}, found end of input"),
            }),
        }
    }

    fn expr(&mut self) -> Result<ExprNode> {
        let mut lhs = self.term()?;
        while let Some(t) = self.peek() {
            let op = match t.tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = ExprNode::Binary {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ExprNode> {
        let mut lhs = self.factor()?;
        while let Some(t) = self.peek() {
            let op = match t.tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.factor()?;
            lhs = ExprNode::Binary {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ExprNode> {
        let base = self.unary()?;
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Caret)) {
            self.bump();
            let off = self.offset();
            let exp = match self.bump() {
                Some(Token {
                    tok: Tok::Number(v),
                    ..
                }) if v.fract() == 0.0 && v >= 0.0 && v <= u32::MAX as f64 => v as u32,
                _ => {
                    return Err(Error::Syntax {
                        offset: off,
                        message: "exponent must be a nonnegative integer".into(),
                    });
                }
            };
            return Ok(ExprNode::Power {
                base: Box::new(base),
                exp,
            });
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<ExprNode> {
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Minus)) {
            self.bump();
            let inner = self.atom()?;
            return Ok(ExprNode::Neg(Box::new(inner)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<ExprNode> {
        let off = self.offset();
        let Some(tok) = self.bump() else {
            return Err(Error::Syntax {
                offset: self.end,
                message: "expected an operand, found end of input".into(),
            });
        };
        match tok.tok {
            Tok::Number(v) => Ok(ExprNode::Real(v)),
            Tok::LParen => {
                let e = self.expr()?;
                self.eat(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::LBracket => {
                let lo = self.expr()?;
                self.eat(Tok::Comma, "`,`")?;
                let hi = self.expr()?;
                self.eat(Tok::RBracket, "`]`")?;
                self.finish_interval(lo, hi, LitForm::Endpoints)
            }
            Tok::LAngle => {
                let center = self.expr()?;
                self.eat(Tok::Semi, "`;`")?;
                let radius = self.expr()?;
                self.eat(Tok::RAngle, "`>`")?;
                self.finish_interval(center, radius, LitForm::CenterRadius)
            }
            Tok::Ident(name) => match name.as_str() {
                "t" => Ok(ExprNode::Var(Var::T)),
                "x" => Ok(ExprNode::Var(Var::X)),
                other => {
                    let Some(func) = Func::from_name(other) else {
                        return Err(Error::Syntax {
                            offset: off,
                            message: format!("unknown function `{other}`"),
                        });
                    };
                    self.eat(Tok::LParen, "`(`")?;
                    let mut args = vec![self.expr()?];
                    while matches!(self.peek().map(|t| &t.tok), Some(Tok::Comma)) {
                        self.bump();
                        args.push(self.expr()?);
                    }
                    self.eat(Tok::RParen, "`)`")?;
                    if args.len() != func.arity() {
                        return Err(Error::Syntax {
                            offset: off,
                            message: format!(
                                "`{other}` takes {} argument(s), got {}",
                                func.arity(),
                                args.len()
                            ),
                        });
                    }
                    Ok(ExprNode::Call { func, args })
                }
            },
            _ => Err(Error::Syntax {
                offset: off,
                message: "expected an operand".into(),
            }),
        }
    }

    /// Folds `[a, b]` / `<c; w>` with constant components into a literal;
    /// anything else stays a pointwise constructor.
    fn finish_interval(&mut self, a: ExprNode, b: ExprNode, form: LitForm) -> Result<ExprNode> {
        match (signed_number(&a), signed_number(&b)) {
            (Some(first), Some(second)) => {
                let value = match form {
                    LitForm::Endpoints => Interval::from_endpoints(first, second)?,
                    LitForm::CenterRadius => Interval::from_center_radius(first, second)?,
                };
                let param_id = self.next_param;
                self.next_param += 1;
                Ok(ExprNode::IntervalLit {
                    value,
                    first,
                    second,
                    form,
                    param_id,
                })
            }
            _ => match form {
                LitForm::Endpoints => Ok(ExprNode::Endpoints {
                    lo: Box::new(a),
                    hi: Box::new(b),
                }),
                LitForm::CenterRadius => Ok(ExprNode::CenterRadius {
                    center: Box::new(a),
                    radius: Box::new(b),
                }),
            },
        }
    }
}

fn signed_number(e: &ExprNode) -> Option<f64> {
    match e {
        ExprNode::Real(v) => Some(*v),
        ExprNode::Neg(inner) => match inner.as_ref() {
            ExprNode::Real(v) => Some(-v),
            _ => None,
        },
        _ => None,
    }
}
