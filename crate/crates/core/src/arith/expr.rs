//! Arithmetic expressions over named symbols.
//!
//! Used for witness entries such as `-t/(1+t)` or `z^(-k)*t^(n-2*k)` and for
//! condition-set equations such as `c'[1,2,3] = alpha*c[1,2,3]`. Integer
//! symbols bound in the environment may appear in exponents.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::{Field, Rational};

/// Values an expression can evaluate to.
pub trait ExprValue:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn lift_rational(q: &Rational) -> Self;
    fn try_div(&self, rhs: &Self) -> Option<Self>;
    fn try_pow(&self, e: i64) -> Option<Self>;
}

impl<F: Field> ExprValue for F {
    fn lift_rational(q: &Rational) -> Self {
        F::from_rational(q)
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs)
    }
    fn try_pow(&self, e: i64) -> Option<Self> {
        self.pow_i(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprError {
    Syntax { input: String, pos: usize, msg: &'static str },
    UnknownSymbol(String),
    DivisionByZero,
    BadExponent(String),
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Syntax { input, pos, msg } => {
                write!(f, "syntax error in `{input}` at byte {pos}: {msg}")
            }
            ExprError::UnknownSymbol(s) => write!(f, "unknown symbol `{s}`"),
            ExprError::DivisionByZero => f.write_str("division by zero"),
            ExprError::BadExponent(s) => write!(f, "exponent `{s}` is not an admissible integer"),
        }
    }
}

impl core::error::Error for ExprError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Sym(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Sym(String),
    Op(u8),
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let err = |pos, msg| ExprError::Syntax {
        input: input.to_string(),
        pos,
        msg,
    };
    let b = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let v: Rational = input[s..i].parse().map_err(|_| err(s, "bad number"))?;
            out.push((s, Tok::Num(v)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            let mut name: String = input[s..i].to_string();
            if i < b.len() && b[i] == b'\'' {
                name.push('\'');
                i += 1;
            }
            if i < b.len() && b[i] == b'[' {
                let close = input[i..].find(']').ok_or_else(|| err(i, "unclosed `[`"))? + i;
                let inner: String = input[i + 1..close].chars().filter(|c| !c.is_whitespace()).collect();
                if inner.is_empty() || !inner.bytes().all(|x| x.is_ascii_digit() || x == b',') {
                    return Err(err(i, "index list must be comma-separated integers"));
                }
                name.push('[');
                name.push_str(&inner);
                name.push(']');
                i = close + 1;
            } else if name.ends_with('\'') {
                return Err(err(i, "expected `[` after prime"));
            }
            out.push((s, Tok::Sym(name)));
        } else if b"+-*/^()".contains(&c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(err(i, "unexpected character"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &'static str) -> ExprError {
        let pos = self.toks.get(self.pos).map_or(self.input.len(), |t| t.0);
        ExprError::Syntax {
            input: self.input.to_string(),
            pos,
            msg,
        }
    }

    fn peek_op(&self) -> Option<u8> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.product()?;
        while let Some(op @ (b'+' | b'-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.product()?;
            lhs = if op == b'+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if op == b'*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        match self.peek_op() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek_op() == Some(b'^') {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let tok = self.toks.get(self.pos).map(|t| t.1.clone());
        match tok {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(Expr::Num(q))
            }
            Some(Tok::Sym(s)) => {
                self.pos += 1;
                Ok(Expr::Sym(s))
            }
            Some(Tok::Op(b'(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek_op() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected a number, symbol or `(`")),
        }
    }
}

impl Expr {
    pub fn parse(input: &str) -> Result<Expr, ExprError> {
        let toks = lex(input)?;
        let mut p = Parser {
            input,
            toks,
            pos: 0,
        };
        let e = p.sum()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    /// Names of all symbols, in first-occurrence order.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Sym(s) => {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
            Expr::Neg(a) => a.collect_symbols(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }

    /// Evaluates with integer bindings `ints` and other symbols from `resolve`.
    pub fn eval<T: ExprValue>(
        &self,
        ints: &BTreeMap<String, i64>,
        resolve: &dyn Fn(&str) -> Option<T>,
    ) -> Result<T, ExprError> {
        match self {
            Expr::Num(q) => Ok(T::lift_rational(q)),
            Expr::Sym(s) => match ints.get(s) {
                Some(v) => Ok(T::lift_rational(&Rational::from(*v))),
                None => resolve(s).ok_or_else(|| ExprError::UnknownSymbol(s.clone())),
            },
            Expr::Add(a, b) => Ok(a.eval(ints, resolve)? + b.eval(ints, resolve)?),
            Expr::Sub(a, b) => Ok(a.eval(ints, resolve)? - b.eval(ints, resolve)?),
            Expr::Mul(a, b) => Ok(a.eval(ints, resolve)? * b.eval(ints, resolve)?),
            Expr::Div(a, b) => a
                .eval(ints, resolve)?
                .try_div(&b.eval(ints, resolve)?)
                .ok_or(ExprError::DivisionByZero),
            Expr::Neg(a) => Ok(-a.eval(ints, resolve)?),
            Expr::Pow(a, e) => {
                let k = e.eval_int(ints)?;
                a.eval(ints, resolve)?
                    .try_pow(k)
                    .ok_or_else(|| ExprError::BadExponent(alloc::format!("{k}")))
            }
        }
    }

    /// Evaluates to an integer using only the integer bindings.
    pub fn eval_int(&self, ints: &BTreeMap<String, i64>) -> Result<i64, ExprError> {
        let q: Rational = self.eval(ints, &|_| None)?;
        q.to_i64()
            .ok_or_else(|| ExprError::BadExponent(alloc::format!("{q}")))
    }
}

/// Parses and evaluates in one step with no integer bindings.
pub fn eval_str<T: ExprValue>(input: &str, resolve: &dyn Fn(&str) -> Option<T>) -> Result<T, ExprError> {
    Expr::parse(input)?.eval(&BTreeMap::new(), resolve)
}
