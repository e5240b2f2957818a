//! Multivariate polynomials with rational coefficients over named variables.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::expr::ExprValue;
use super::{Field, Rational};

pub type Monomial = BTreeMap<String, u32>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MPoly::zero();
        p.add_term(Monomial::new(), c);
        p
    }

    pub fn var(name: &str) -> Self {
        let mut m = Monomial::new();
        m.insert(name.to_string(), 1);
        let mut p = MPoly::zero();
        p.add_term(m, Rational::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.remove(&m) {
            Some(old) => old + c,
            None => c,
        };
        if !next.is_zero() {
            self.terms.insert(m, next);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::new()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.keys().cloned()).collect()
    }

    pub fn degree_in(&self, v: &str) -> u32 {
        self.terms.keys().map(|m| m.get(v).copied().unwrap_or(0)).max().unwrap_or(0)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MPoly::constant(Rational::one());
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Substitutes the assigned variables, leaving the rest symbolic.
    pub fn substitute(&self, assign: &BTreeMap<String, Rational>) -> Self {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Monomial::new();
            for (v, e) in m {
                match assign.get(v) {
                    Some(x) => coef *= x.pow_i(*e as i64).expect("nonnegative power"),
                    None => {
                        rest.insert(v.clone(), *e);
                    }
                }
            }
            out.add_term(rest, coef);
        }
        out
    }

    /// Full evaluation; `None` if some variable is unassigned.
    pub fn eval(&self, assign: &dyn Fn(&str) -> Option<Rational>) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m {
                term *= assign(v)?.pow_i(*e as i64)?;
            }
            acc += term;
        }
        Some(acc)
    }

    /// For a polynomial of degree one in `v` only: the root `-c0/c1`.
    pub fn solve_linear(&self, v: &str) -> Option<Rational> {
        let vars = self.variables();
        if vars.len() != 1 || !vars.contains(v) || self.degree_in(v) != 1 {
            return None;
        }
        let mut c0 = Rational::zero();
        let mut c1 = Rational::zero();
        for (m, c) in &self.terms {
            if m.is_empty() {
                c0 = c.clone();
            } else {
                c1 = c.clone();
            }
        }
        (-c0).checked_div(&c1)
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        self + (-rhs)
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = ma.clone();
                for (v, e) in mb {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                out.add_term(m, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl ExprValue for MPoly {
    fn lift_rational(q: &Rational) -> Self {
        MPoly::constant(q.clone())
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        let inv = rhs.as_constant()?.inv()?;
        Some(self.clone() * MPoly::constant(inv))
    }
    fn try_pow(&self, e: i64) -> Option<Self> {
        if e < 0 {
            let c = self.as_constant()?.pow_i(e)?;
            return Some(MPoly::constant(c));
        }
        Some(self.pow(e as u32))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (m, c) in &self.terms {
            let mut factors: Vec<String> = m
                .iter()
                .map(|(v, e)| if *e == 1 { v.clone() } else { alloc::format!("{v}^{e}") })
                .collect();
            if m.is_empty() || !c.is_one() {
                if c == &-Rational::one() && !m.is_empty() {
                    factors[0] = alloc::format!("-{}", factors[0]);
                } else {
                    factors.insert(0, c.to_string());
                }
            }
            parts.push(factors.join("*"));
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i > 0 && !p.starts_with('-') {
                out.push('+');
            }
            out.push_str(p);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::expr::eval_str;

    #[test]
    fn parse_into_polynomial() {
        let p: MPoly = eval_str("(x + y)^2 - x*x - 2*x*y", &|s| Some(MPoly::var(s))).unwrap();
        assert_eq!(p, MPoly::var("y").pow(2));
        let q: MPoly = eval_str("3*x/2 - 1", &|s| Some(MPoly::var(s))).unwrap();
        assert_eq!(q.solve_linear("x"), Some(Rational::new(2, 3)));
        assert!(eval_str::<MPoly>("1/x", &|s| Some(MPoly::var(s))).is_err());
    }

    #[test]
    fn partial_substitution() {
        let p: MPoly = eval_str("a*b + a - 4", &|s| Some(MPoly::var(s))).unwrap();
        let mut assign = BTreeMap::new();
        assign.insert("a".to_string(), Rational::from(2));
        let r = p.substitute(&assign);
        assert_eq!(r.solve_linear("b"), Some(Rational::from(1)));
    }
}
