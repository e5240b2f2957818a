//! Dense univariate polynomials, lowest degree first, over a field.

use alloc::vec;
use alloc::vec::Vec;

use super::Field;

pub fn trim<K: Field>(p: &mut Vec<K>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn add<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(K::zero);
        let y = b.get(i).cloned().unwrap_or_else(K::zero);
        out.push(x + y);
    }
    trim(&mut out);
    out
}

pub fn neg<K: Field>(a: &[K]) -> Vec<K> {
    a.iter().map(|c| -c.clone()).collect()
}

pub fn sub<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
    add(a, &neg(b))
}

pub fn mul<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![K::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    trim(&mut out);
    out
}

pub fn scale<K: Field>(a: &[K], c: &K) -> Vec<K> {
    let mut out: Vec<K> = a.iter().map(|x| x.clone() * c.clone()).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero after trimming.
pub fn divrem<K: Field>(a: &[K], b: &[K]) -> (Vec<K>, Vec<K>) {
    let mut b = b.to_vec();
    trim(&mut b);
    let lead_inv = b
        .last()
        .and_then(|c| c.inv())
        .expect("division by the zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![K::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap().clone() * lead_inv.clone();
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].clone() - c.clone() * bc.clone();
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn make_monic<K: Field>(a: &[K]) -> Vec<K> {
    match a.last().and_then(|c| c.inv()) {
        Some(li) => scale(a, &li),
        None => Vec::new(),
    }
}

/// Monic greatest common divisor; zero if both inputs vanish.
pub fn gcd<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(&x)
}

/// Inverse of `a` modulo `m`, when they are coprime.
pub fn inverse_mod<K: Field>(a: &[K], m: &[K]) -> Option<Vec<K>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (_, red) = divrem(&r1, &r0);
    r1 = red;
    let (mut s0, mut s1): (Vec<K>, Vec<K>) = (Vec::new(), vec![K::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].inv()?;
    let (_, out) = divrem(&scale(&s0, &c), m);
    Some(out)
}
