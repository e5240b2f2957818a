use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::{upoly, Field, LaurentPoly, Rational};

const CAP: usize = 512;

const fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Integer coefficients of the `m`-th cyclotomic polynomial and its degree,
/// via the product of `(x^d - 1)^mu(m/d)` over divisors `d` of `m`.
const fn cyclotomic(m: usize) -> ([i64; CAP], usize) {
    let mut poly = [0i64; CAP];
    poly[0] = 1;
    let mut deg = 0usize;
    let mut d = 1;
    while d <= m {
        if m.is_multiple_of(d) && mobius(m / d) == 1 {
            // multiply by x^d - 1
            let mut next = [0i64; CAP];
            let mut i = 0;
            while i <= deg {
                next[i + d] += poly[i];
                next[i] -= poly[i];
                i += 1;
            }
            poly = next;
            deg += d;
        }
        d += 1;
    }
    d = 1;
    while d <= m {
        if m.is_multiple_of(d) && mobius(m / d) == -1 {
            // exact division by x^d - 1: q[i] = q[i+d] ... from the top
            let mut q = [0i64; CAP];
            let mut r = poly;
            let mut i = deg;
            while i >= d {
                let c = r[i];
                q[i - d] = c;
                r[i] -= c;
                r[i - d] += c;
                i -= 1;
            }
            poly = q;
            deg -= d;
        }
        d += 1;
    }
    (poly, deg)
}

/// An element of the cyclotomic field `Q(z)` with `z` a primitive `M`-th
/// root of unity, stored as a polynomial in `z` reduced modulo the `M`-th
/// cyclotomic polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclo<const M: usize> {
    coeffs: Vec<Rational>,
}

impl<const M: usize> Cyclo<M> {
    const MODULUS: ([i64; CAP], usize) = cyclotomic(M);

    /// Degree of the field over the rationals.
    pub const DEGREE: usize = Self::MODULUS.1;

    fn modulus() -> Vec<Rational> {
        let (c, d) = Self::MODULUS;
        c[..=d].iter().map(|&x| Rational::from(x)).collect()
    }

    fn reduce(mut p: Vec<Rational>) -> Self {
        upoly::trim(&mut p);
        let d = Self::DEGREE;
        if p.len() > d {
            let (c, _) = Self::MODULUS;
            // The modulus is monic with integer coefficients.
            for top in (d..p.len()).rev() {
                let lead = p[top].clone();
                if lead.is_zero() {
                    continue;
                }
                let shift = top - d;
                for (i, ci) in c[..d].iter().enumerate() {
                    if *ci != 0 {
                        p[shift + i] = p[shift + i].clone() - lead.clone() * Rational::from(*ci);
                    }
                }
                p[top] = Rational::zero();
            }
            upoly::trim(&mut p);
        }
        p.resize(d, Rational::zero());
        Cyclo { coeffs: p }
    }

    /// The distinguished primitive `M`-th root of unity.
    pub fn zeta() -> Self {
        Self::reduce(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(c: Vec<Rational>) -> Self {
        Self::reduce(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The rational value, if the element lies in the prime field.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    fn symbol() -> &'static str {
        if M == 4 {
            "i"
        } else {
            "z"
        }
    }
}

impl<const M: usize> Add for Cyclo<M> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Cyclo {
            coeffs: self
                .coeffs
                .into_iter()
                .zip(rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<const M: usize> Sub for Cyclo<M> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const M: usize> Neg for Cyclo<M> {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclo {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<const M: usize> Mul for Cyclo<M> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::reduce(upoly::mul(&self.coeffs, &rhs.coeffs))
    }
}

impl<const M: usize> Field for Cyclo<M> {
    fn zero() -> Self {
        Cyclo {
            coeffs: vec![Rational::zero(); Self::DEGREE],
        }
    }
    fn one() -> Self {
        Self::from_rational(&Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn inv(&self) -> Option<Self> {
        let mut a = self.coeffs.clone();
        upoly::trim(&mut a);
        if a.is_empty() {
            return None;
        }
        upoly::inverse_mod(&a, &Self::modulus()).map(Self::reduce)
    }
    fn from_rational(q: &Rational) -> Self {
        Self::reduce(vec![q.clone()])
    }
    fn is_compound(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
            || self.coeffs.iter().skip(1).any(|c| !c.is_zero())
    }
}

impl<const M: usize> fmt::Display for Cyclo<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Same layout as a Laurent polynomial, with the root in place of t.
        let mut p = LaurentPoly::<Rational>::zero();
        for (e, c) in self.coeffs.iter().enumerate() {
            p.add_term(e as i32, c.clone());
        }
        let s: String = alloc::format!("{p}")
            .chars()
            .map(|ch| if ch == 't' { Self::symbol().chars().next().unwrap() } else { ch })
            .collect();
        f.write_str(&s)
    }
}

impl<const M: usize> fmt::Debug for Cyclo<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials_match_known_values() {
        let phi = |m: usize| {
            let (c, d) = cyclotomic(m);
            c[..=d].to_vec()
        };
        assert_eq!(phi(1), vec![-1, 1]);
        assert_eq!(phi(2), vec![1, 1]);
        assert_eq!(phi(4), vec![1, 0, 1]);
        assert_eq!(phi(6), vec![1, -1, 1]);
        assert_eq!(phi(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(phi(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(phi(9), vec![1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn cyclotomic_degree_is_totient() {
        fn totient(n: usize) -> usize {
            (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count()
        }
        assert_eq!(Cyclo::<30>::DEGREE, totient(30));
        assert_eq!(Cyclo::<60>::DEGREE, totient(60));
        assert_eq!(Cyclo::<16>::DEGREE, totient(16));
    }

    #[test]
    fn gaussian_unit() {
        let i = Cyclo::<4>::zeta();
        assert_eq!(i.clone() * i.clone(), -Cyclo::<4>::one());
        assert_eq!(i.to_string(), "i");
        assert_eq!((Cyclo::<4>::one() + i.clone()).to_string(), "1+i");
    }

    fn order_of_zeta<const M: usize>() -> usize {
        let z = Cyclo::<M>::zeta();
        let mut acc = z.clone();
        let mut k = 1;
        while !acc.is_one() {
            acc = acc * z.clone();
            k += 1;
        }
        k
    }

    #[test]
    fn zeta_is_primitive() {
        assert_eq!(order_of_zeta::<6>(), 6);
        assert_eq!(order_of_zeta::<8>(), 8);
        assert_eq!(order_of_zeta::<10>(), 10);
        assert_eq!(order_of_zeta::<12>(), 12);
        let z = Cyclo::<12>::zeta();
        assert_eq!(z.pow_i(6).unwrap(), -Cyclo::<12>::one());
    }

    proptest! {
        #[test]
        fn inverses_in_q_zeta8(c in proptest::collection::vec(-6i64..7, 4)) {
            let x = Cyclo::<8>::from_coeffs(c.iter().map(|&v| Rational::from(v)).collect());
            match x.inv() {
                None => prop_assert!(x.is_zero()),
                Some(y) => prop_assert!((x * y).is_one()),
            }
        }
    }
}
