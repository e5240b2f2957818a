use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::{upoly, Field, LaurentPoly, Rational};

/// A rational function `num / den` in `t`, kept in lowest terms.
///
/// Both parts have nonnegative exponents and `den` is monic, so equal
/// functions have equal representations.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc<K> {
    num: LaurentPoly<K>,
    den: LaurentPoly<K>,
}

/// Raised when a limit at `t = 0` does not exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleAtZero {
    /// Negative valuation of the offending function.
    pub order: i32,
}

impl fmt::Display for PoleAtZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pole of order {} at t = 0", -self.order)
    }
}

impl core::error::Error for PoleAtZero {}

fn split_t_power<K: Field>(p: &LaurentPoly<K>) -> (i32, LaurentPoly<K>) {
    match p.valuation() {
        Some(v) => (v, p.shift(-v)),
        None => (0, p.clone()),
    }
}

impl<K: Field> RatFunc<K> {
    /// Builds `num / den` from Laurent polynomials; `None` if `den` is zero.
    pub fn new(num: LaurentPoly<K>, den: LaurentPoly<K>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero_fn());
        }
        let (vn, n) = split_t_power(&num);
        let (vd, d) = split_t_power(&den);
        let (n, d) = if d.degree() == Some(0) || n.degree() == Some(0) {
            (n, d)
        } else {
            let g = upoly::gcd(&n.to_dense(), &d.to_dense());
            if g.len() <= 1 {
                (n, d)
            } else {
                (
                    LaurentPoly::from_dense(&upoly::divrem(&n.to_dense(), &g).0),
                    LaurentPoly::from_dense(&upoly::divrem(&d.to_dense(), &g).0),
                )
            }
        };
        let lead = d.coeff(d.degree().unwrap_or(0));
        let li = lead.inv()?;
        let (n, d) = (n.scale(&li), d.scale(&li));
        let v = vn - vd;
        Some(if v >= 0 {
            RatFunc {
                num: n.shift(v),
                den: d,
            }
        } else {
            RatFunc {
                num: n,
                den: d.shift(-v),
            }
        })
    }

    fn zero_fn() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::constant(K::one()),
        }
    }

    pub fn constant(c: K) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn t() -> Self {
        Self::from_laurent(LaurentPoly::t())
    }

    pub fn from_laurent(p: LaurentPoly<K>) -> Self {
        match p.valuation() {
            Some(v) if v < 0 => RatFunc {
                num: p.shift(-v),
                den: LaurentPoly::monomial(K::one(), -v),
            },
            _ => RatFunc {
                num: p,
                den: LaurentPoly::constant(K::one()),
            },
        }
    }

    pub fn numer(&self) -> &LaurentPoly<K> {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly<K> {
        &self.den
    }

    /// The Laurent form when the denominator is a power of `t`.
    pub fn as_laurent(&self) -> Option<LaurentPoly<K>> {
        if self.den.is_monomial() {
            Some(self.num.shift(-self.den.degree().unwrap_or(0)))
        } else {
            None
        }
    }

    /// Order of vanishing at `t = 0`; `None` for the zero function.
    pub fn valuation(&self) -> Option<i32> {
        Some(self.num.valuation()? - self.den.valuation().unwrap_or(0))
    }

    pub fn limit_at_zero(&self) -> Result<K, PoleAtZero> {
        match self.valuation() {
            None => Ok(K::zero()),
            Some(v) if v < 0 => Err(PoleAtZero { order: v }),
            Some(v) if v > 0 => Ok(K::zero()),
            Some(_) => {
                let vd = self.den.valuation().unwrap_or(0);
                let lead_n = self.num.coeff(vd);
                let lead_d = self.den.coeff(vd);
                Ok(lead_n * lead_d.inv().expect("nonzero leading coefficient"))
            }
        }
    }

    /// The first `n` coefficients of the Laurent expansion at zero, with
    /// the exponent of the first one.
    pub fn expansion(&self, n: usize) -> (i32, Vec<K>) {
        let v = match self.valuation() {
            None => return (0, Vec::new()),
            Some(v) => v,
        };
        let (_, num) = split_t_power(&self.num);
        let (_, den) = split_t_power(&self.den);
        let d0 = den.coeff(0).inv().expect("unit constant term");
        let mut q: Vec<K> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = num.coeff(k as i32);
            for j in 1..=k {
                acc = acc - den.coeff(j as i32) * q[k - j].clone();
            }
            q.push(acc * d0.clone());
        }
        (v, q)
    }

    /// Expansion rendered as `c0*t^v + ... + O(t^m)`.
    pub fn expansion_string(&self, n: usize) -> alloc::string::String {
        let (v, cs) = self.expansion(n);
        let mut p = LaurentPoly::zero();
        for (i, c) in cs.into_iter().enumerate() {
            p.add_term(v + i as i32, c);
        }
        format!("{} + O(t^{})", p, v + n as i32)
    }

    /// Value at `t = x`, `None` where the denominator vanishes.
    pub fn eval(&self, x: &K) -> Option<K> {
        let d = self.den.eval(x)?;
        let n = self.num.eval(x)?;
        n.checked_div(&d)
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> RatFunc<L> {
        RatFunc::new(self.num.map(&f), self.den.map(&f)).expect("coefficient map must be a field embedding")
    }
}

impl<K: Field> Add for RatFunc<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.num.is_zero() {
            return rhs;
        }
        if rhs.num.is_zero() {
            return self;
        }
        if self.den == rhs.den {
            return RatFunc::new(self.num + rhs.num, self.den).unwrap();
        }
        let num = self.num * rhs.den.clone() + rhs.num * self.den.clone();
        RatFunc::new(num, self.den * rhs.den).unwrap()
    }
}

impl<K: Field> Sub for RatFunc<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<K: Field> Neg for RatFunc<K> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<K: Field> Mul for RatFunc<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::zero_fn();
        }
        RatFunc::new(self.num * rhs.num, self.den * rhs.den).unwrap()
    }
}

impl<K: Field> Field for RatFunc<K> {
    fn zero() -> Self {
        Self::zero_fn()
    }
    fn one() -> Self {
        Self::constant(K::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(K::from_rational(q))
    }
    fn is_compound(&self) -> bool {
        match self.as_laurent() {
            Some(p) => {
                p.terms().count() > 1 || p.terms().any(|(_, c)| c.is_compound())
            }
            None => true,
        }
    }
}

impl<K: Field> fmt::Display for RatFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_laurent() {
            return write!(f, "{p}");
        }
        let n = if self.num.terms().count() > 1 {
            format!("({})", self.num)
        } else {
            format!("{}", self.num)
        };
        write!(f, "{}/({})", n, self.den)
    }
}

impl<K: Field> fmt::Debug for RatFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<K: Field> From<LaurentPoly<K>> for RatFunc<K> {
    fn from(p: LaurentPoly<K>) -> Self {
        Self::from_laurent(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type R = RatFunc<Rational>;

    fn lp(s: &str) -> R {
        R::from_laurent(s.parse().unwrap())
    }

    #[test]
    fn lowest_terms() {
        // (t^2 - 1) / (t - 1) = t + 1
        let f = R::new("t^2-1".parse().unwrap(), "t-1".parse().unwrap()).unwrap();
        assert_eq!(f, lp("1+t"));
        assert_eq!(f.to_string(), "1+t");
    }

    #[test]
    fn limits_and_poles() {
        let one_plus_t = lp("1+t");
        let f = lp("t") * one_plus_t.inv().unwrap();
        assert_eq!(f.limit_at_zero(), Ok(Rational::zero()));
        assert_eq!(one_plus_t.inv().unwrap().limit_at_zero(), Ok(Rational::one()));
        assert_eq!(lp("t^-2+1").limit_at_zero(), Err(PoleAtZero { order: -2 }));
        assert_eq!(lp("1/2*t^-2+1").expansion_string(3), "1/2*t^-2+1 + O(t^1)");
    }

    #[test]
    fn geometric_expansion() {
        let f = lp("1+t").inv().unwrap();
        let (v, cs) = f.expansion(4);
        assert_eq!(v, 0);
        let want: Vec<Rational> = [1, -1, 1, -1].iter().map(|&x| Rational::from(x)).collect();
        assert_eq!(cs, want);
    }

    fn arb_rf() -> impl Strategy<Value = R> {
        let poly = proptest::collection::vec((0i32..4, -5i64..6), 1..4).prop_map(|ts| {
            let mut p = LaurentPoly::zero();
            for (e, c) in ts {
                p.add_term(e, Rational::from(c));
            }
            p
        });
        (poly.clone(), poly, -3i32..3).prop_filter_map("nonzero denominator", |(n, d, s)| {
            R::new(n.shift(s), d)
        })
    }

    proptest! {
        #[test]
        fn field_axioms_hold(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
            prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
            if let Some(ai) = a.inv() {
                prop_assert!((a.clone() * ai).is_one());
            }
            prop_assert!((a.clone() - a).is_zero());
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_rf(), b in arb_rf(), x in 1i64..7) {
            let x = Rational::from(x);
            if let (Some(va), Some(vb), Some(vp)) = (a.eval(&x), b.eval(&x), (a.clone() * b.clone()).eval(&x)) {
                prop_assert_eq!(va * vb, vp);
            }
        }
    }
}
