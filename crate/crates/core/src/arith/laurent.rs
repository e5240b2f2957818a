use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use super::{Field, Rational};

/// Error for the scalar and Laurent-polynomial text grammar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseScalarError {
    pub input: String,
    pub reason: &'static str,
}

impl ParseScalarError {
    pub fn new(input: &str, reason: &'static str) -> Self {
        ParseScalarError {
            input: input.to_string(),
            reason,
        }
    }
}

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse scalar `{}`: {}", self.input, self.reason)
    }
}

impl core::error::Error for ParseScalarError {}

/// Finite sum of `c * t^e` with integer exponents and no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly<K> {
    terms: BTreeMap<i32, K>,
}

impl<K: Field> LaurentPoly<K> {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: K) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: K, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> K {
        self.terms.get(&e).cloned().unwrap_or_else(K::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &K)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Lowest exponent present; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent present; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn add_term(&mut self, e: i32, c: K) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !next.is_zero() {
            self.terms.insert(e, next);
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::zero();
        for (e, x) in &self.terms {
            out.add_term(*e, x.clone() * c.clone());
        }
        out
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> LaurentPoly<L> {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    /// Value at `t = x`; `None` when a negative power meets `x = 0`.
    pub fn eval(&self, x: &K) -> Option<K> {
        let mut acc = K::zero();
        for (e, c) in &self.terms {
            acc = acc + c.clone() * x.pow_i(*e as i64)?;
        }
        Some(acc)
    }

    /// The value at zero if there is no negative power.
    pub fn limit_at_zero(&self) -> Option<K> {
        match self.valuation() {
            Some(v) if v < 0 => None,
            _ => Some(self.coeff(0)),
        }
    }

    /// Coefficients from exponent 0 upward; requires nonnegative exponents.
    pub(crate) fn to_dense(&self) -> alloc::vec::Vec<K> {
        let deg = match self.degree() {
            Some(d) => d,
            None => return alloc::vec::Vec::new(),
        };
        debug_assert!(self.valuation().unwrap_or(0) >= 0);
        (0..=deg).map(|e| self.coeff(e)).collect()
    }

    pub(crate) fn from_dense(v: &[K]) -> Self {
        let mut out = Self::zero();
        for (e, c) in v.iter().enumerate() {
            out.add_term(e as i32, c.clone());
        }
        out
    }
}

impl<K: Field> Add for LaurentPoly<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<K: Field> Sub for LaurentPoly<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<K: Field> Neg for LaurentPoly<K> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<K: Field> Mul for LaurentPoly<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

fn write_term<K: Field>(out: &mut String, c: &K, e: i32) {
    let power = match e {
        0 => String::new(),
        1 => "t".to_string(),
        _ => alloc::format!("t^{e}"),
    };
    if e == 0 {
        if c.is_compound() {
            out.push('(');
            out.push_str(&c.to_string());
            out.push(')');
        } else {
            out.push_str(&c.to_string());
        }
        return;
    }
    if c.is_one() {
        out.push_str(&power);
    } else if c.is_compound() {
        out.push('(');
        out.push_str(&c.to_string());
        out.push_str(")*");
        out.push_str(&power);
    } else {
        out.push_str(&c.to_string());
        out.push('*');
        out.push_str(&power);
    }
}

impl<K: Field> fmt::Display for LaurentPoly<K> {
    /// Ascending exponents, e.g. `1+t`, `t^-2`, `-1/2*t^3`, `1-t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            if !c.is_compound() && c.to_string().starts_with('-') {
                out.push('-');
                write_term(&mut out, &(-c.clone()), *e);
            } else {
                if idx > 0 {
                    out.push('+');
                }
                write_term(&mut out, c, *e);
            }
        }
        f.write_str(&out)
    }
}

impl<K: Field> fmt::Debug for LaurentPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_monomial(s: &str, whole: &str) -> Result<(Rational, i32), ParseScalarError> {
    let bad = |reason| ParseScalarError::new(whole, reason);
    let (coef, power) = match s.find('t') {
        None => (s, None),
        Some(pos) => {
            let coef = &s[..pos];
            let power = &s[pos + 1..];
            let coef = if coef.is_empty() {
                "1"
            } else if coef == "-" {
                "-"
            } else {
                coef.strip_suffix('*').ok_or_else(|| bad("expected `*` before `t`"))?
            };
            (coef, Some(power))
        }
    };
    let coef = match coef {
        "-" if power.is_some() => Rational::from(-1),
        c => c.parse::<Rational>().map_err(|_| bad("bad coefficient"))?,
    };
    let e = match power {
        None => 0,
        Some("") => 1,
        Some(p) => {
            let digits = p.strip_prefix('^').ok_or_else(|| bad("expected `^` after `t`"))?;
            let body = digits.strip_prefix('-').unwrap_or(digits);
            if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("bad exponent"));
            }
            digits.parse::<i32>().map_err(|_| bad("exponent out of range"))?
        }
    };
    Ok((coef, e))
}

impl FromStr for LaurentPoly<Rational> {
    type Err = ParseScalarError;

    /// Sums of `q`, `t`, `q*t`, `t^e`, `q*t^e` joined by `+` and `-`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ParseScalarError::new(input, "empty"));
        }
        let bytes = s.as_bytes();
        let mut out = LaurentPoly::zero();
        let mut start = 0;
        let mut i = 1;
        while i <= bytes.len() {
            let at_split = i == bytes.len()
                || ((bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'^' | b'*' | b'/'));
            if at_split {
                let piece = &s[start..i];
                let (sign, body) = match piece.as_bytes()[0] {
                    b'+' if start > 0 => (1, &piece[1..]),
                    b'-' if start > 0 => (-1, &piece[1..]),
                    _ => (1, piece),
                };
                if body.is_empty() || body.starts_with('+') {
                    return Err(ParseScalarError::new(input, "dangling sign"));
                }
                let (c, e) = parse_monomial(body, input)?;
                out.add_term(e, if sign < 0 { -c } else { c });
                start = i;
            }
            i += 1;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPoly<Rational> {
        s.parse().unwrap()
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(lp("t^-2").to_string(), "t^-2");
        assert_eq!(lp("1+t").to_string(), "1+t");
        assert_eq!(lp("-1/2*t^3").to_string(), "-1/2*t^3");
        assert_eq!(lp("-1*t^-1").to_string(), "-t^-1");
        assert_eq!(lp("3 - t + 2*t^2").to_string(), "3-t+2*t^2");
        assert_eq!(lp("t - t").to_string(), "0");
        assert_eq!(lp("-5").to_string(), "-5");
        assert!("t^".parse::<LaurentPoly<Rational>>().is_err());
        assert!("2t".parse::<LaurentPoly<Rational>>().is_err());
        assert!("1++t".parse::<LaurentPoly<Rational>>().is_err());
        assert!("x".parse::<LaurentPoly<Rational>>().is_err());
    }

    #[test]
    fn valuation_and_limit() {
        let p = lp("t^-1+3+t");
        assert_eq!(p.valuation(), Some(-1));
        assert_eq!(p.limit_at_zero(), None);
        assert_eq!(lp("3+t").limit_at_zero(), Some(Rational::from(3)));
        assert_eq!(lp("0").valuation(), None);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly<Rational>> {
        proptest::collection::vec((-6i32..7, -9i64..10, 1i64..5), 0..5).prop_map(|ts| {
            let mut p = LaurentPoly::zero();
            for (e, n, d) in ts {
                p.add_term(e, Rational::new(n, d));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in arb_poly()) {
            prop_assert_eq!(p.to_string().parse::<LaurentPoly<Rational>>().unwrap(), p);
        }

        #[test]
        fn valuation_of_product_adds(a in arb_poly(), b in arb_poly()) {
            let prod = a.clone() * b.clone();
            match (a.valuation(), b.valuation()) {
                (Some(x), Some(y)) => prop_assert_eq!(prod.valuation(), Some(x + y)),
                _ => prop_assert!(prod.is_zero()),
            }
        }
    }
}
