//! Structure constants, the Poisson identities and change of basis.
//!
//! Indices are 0-based in this API and 1-based in every text format.
//! A basis change `g` acts by `(g * mu)(x, y) = g mu(g^-1 x, g^-1 y)`, where
//! `g` is stored column-wise: column `i` holds the coordinates of `g(e_i)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{Field, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

/// Which of the two products of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Dot,
    Bracket,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    /// Index outside `0..dim`.
    IndexOutOfRange { index: usize, dim: usize },
    /// Nonzero `c_ii^k` for an antisymmetric product.
    DiagonalOfAntisymmetric { i: usize, k: usize },
    DimensionMismatch { expected: usize, found: usize },
    SingularMatrix,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::IndexOutOfRange { index, dim } => {
                write!(f, "index {} out of range for dimension {}", index + 1, dim)
            }
            AlgebraError::DiagonalOfAntisymmetric { i, k } => write!(
                f,
                "antisymmetric product cannot have nonzero constant [{},{},{}]",
                i + 1,
                i + 1,
                k + 1
            ),
            AlgebraError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            AlgebraError::SingularMatrix => f.write_str("basis change is singular"),
        }
    }
}

impl core::error::Error for AlgebraError {}

/// A bilinear product on `K^n` given by `e_i * e_j = sum_k c_ij^k e_k`.
///
/// Only canonical index pairs are stored: `i <= j` for symmetric and `i < j`
/// for antisymmetric products. Lookups resolve the sign.
#[derive(Clone, PartialEq, Eq)]
pub struct StructureConstants<K> {
    dim: usize,
    symmetry: Symmetry,
    entries: BTreeMap<(usize, usize, usize), K>,
}

impl<K: Field> StructureConstants<K> {
    pub fn zero(dim: usize, symmetry: Symmetry) -> Self {
        StructureConstants {
            dim,
            symmetry,
            entries: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    fn check(&self, idx: usize) -> Result<(), AlgebraError> {
        if idx < self.dim {
            Ok(())
        } else {
            Err(AlgebraError::IndexOutOfRange {
                index: idx,
                dim: self.dim,
            })
        }
    }

    /// Canonical position and sign for `(i, j)`; `None` when forced to zero.
    fn canonical(&self, i: usize, j: usize) -> Option<(usize, usize, bool)> {
        match self.symmetry {
            Symmetry::Symmetric => Some((i.min(j), i.max(j), false)),
            Symmetry::Antisymmetric => match i.cmp(&j) {
                core::cmp::Ordering::Less => Some((i, j, false)),
                core::cmp::Ordering::Greater => Some((j, i, true)),
                core::cmp::Ordering::Equal => None,
            },
        }
    }

    /// Sets `c_ij^k`, storing the sign-resolved canonical entry.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: K) -> Result<(), AlgebraError> {
        self.check(i)?;
        self.check(j)?;
        self.check(k)?;
        match self.canonical(i, j) {
            None if v.is_zero() => Ok(()),
            None => Err(AlgebraError::DiagonalOfAntisymmetric { i, k }),
            Some((a, b, flip)) => {
                let v = if flip { -v } else { v };
                if v.is_zero() {
                    self.entries.remove(&(a, b, k));
                } else {
                    self.entries.insert((a, b, k), v);
                }
                Ok(())
            }
        }
    }

    /// `c_ij^k` with the symmetry applied; out-of-range indices read as zero.
    pub fn get(&self, i: usize, j: usize, k: usize) -> K {
        match self.canonical(i, j) {
            None => K::zero(),
            Some((a, b, flip)) => match self.entries.get(&(a, b, k)) {
                None => K::zero(),
                Some(v) if flip => -v.clone(),
                Some(v) => v.clone(),
            },
        }
    }

    /// Nonzero canonical entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &K)> {
        self.entries.iter().map(|(idx, v)| (*idx, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Builds from 1-based `(i, j, k, value)` entries.
    pub fn from_entries_1based(
        dim: usize,
        symmetry: Symmetry,
        entries: impl IntoIterator<Item = (usize, usize, usize, K)>,
    ) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(dim, symmetry);
        for (i, j, k, v) in entries {
            if i == 0 || j == 0 || k == 0 {
                return Err(AlgebraError::IndexOutOfRange { index: 0, dim });
            }
            let prev = out.get(i - 1, j - 1, k - 1);
            out.set(i - 1, j - 1, k - 1, prev + v)?;
        }
        Ok(out)
    }

    /// `e_i * e_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<K> {
        (0..self.dim).map(|k| self.get(i, j, k)).collect()
    }

    /// The product of two coordinate vectors.
    pub fn product(&self, x: &[K], y: &[K]) -> Vec<K> {
        let mut out = vec![K::zero(); self.dim];
        for (&(i, j, k), c) in &self.entries {
            // Both orders of a canonical pair contribute unless i == j.
            let mut w = x[i].clone() * y[j].clone();
            if i != j {
                let other = x[j].clone() * y[i].clone();
                w = match self.symmetry {
                    Symmetry::Symmetric => w + other,
                    Symmetry::Antisymmetric => w - other,
                };
            }
            if !w.is_zero() {
                out[k] = out[k].clone() + w * c.clone();
            }
        }
        out
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> StructureConstants<L> {
        let mut out = StructureConstants::zero(self.dim, self.symmetry);
        for (&(i, j, k), v) in &self.entries {
            let w = f(v);
            if !w.is_zero() {
                out.entries.insert((i, j, k), w);
            }
        }
        out
    }

    pub fn try_map<L: Field, E>(
        &self,
        f: impl Fn(&K) -> Result<L, E>,
    ) -> Result<StructureConstants<L>, E> {
        let mut out = StructureConstants::zero(self.dim, self.symmetry);
        for (&(i, j, k), v) in &self.entries {
            let w = f(v)?;
            if !w.is_zero() {
                out.entries.insert((i, j, k), w);
            }
        }
        Ok(out)
    }

    /// All canonical index pairs for this symmetry.
    pub fn canonical_pairs(&self) -> Vec<(usize, usize)> {
        canonical_pairs(self.dim, self.symmetry)
    }

    /// `g * mu` given `g` and its inverse.
    pub fn transform(&self, g: &Matrix<K>, g_inv: &Matrix<K>) -> Self {
        let n = self.dim;
        let cols: Vec<Vec<K>> = (0..n).map(|i| g_inv.column(i)).collect();
        let mut out = Self::zero(n, self.symmetry);
        for (i, j) in self.canonical_pairs() {
            let v = self.product(&cols[i], &cols[j]);
            let w = g.mul_vec(&v);
            for (k, c) in w.into_iter().enumerate() {
                if !c.is_zero() {
                    out.entries.insert((i, j, k), c);
                }
            }
        }
        out
    }
}

pub fn canonical_pairs(dim: usize, symmetry: Symmetry) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            if symmetry == Symmetry::Symmetric || i < j {
                out.push((i, j));
            }
        }
    }
    out
}

impl<K: Field> fmt::Display for StructureConstants<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (open, close) = match self.symmetry {
            Symmetry::Symmetric => ("e", ""),
            Symmetry::Antisymmetric => ("{e", "}"),
        };
        let sep = match self.symmetry {
            Symmetry::Symmetric => "e",
            Symmetry::Antisymmetric => ",e",
        };
        let mut first = true;
        let mut pairs: BTreeMap<(usize, usize), Vec<(usize, &K)>> = BTreeMap::new();
        for (&(i, j, k), v) in &self.entries {
            pairs.entry((i, j)).or_default().push((k, v));
        }
        if pairs.is_empty() {
            return f.write_str("0");
        }
        for ((i, j), terms) in pairs {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{}{}{}{}{} = ", open, i + 1, sep, j + 1, close)?;
            for (n, (k, v)) in terms.iter().enumerate() {
                let neg = !v.is_compound() && alloc::format!("{v}").starts_with('-');
                if n > 0 {
                    f.write_str(if neg { " - " } else { " + " })?;
                } else if neg {
                    f.write_str("-")?;
                }
                let a = if neg { -(*v).clone() } else { (*v).clone() };
                if a.is_one() {
                    write!(f, "e{}", k + 1)?;
                } else if a.is_compound() {
                    write!(f, "({})e{}", a, k + 1)?;
                } else {
                    write!(f, "{}e{}", a, k + 1)?;
                }
            }
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for StructureConstants<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A symmetric product `dot` and an antisymmetric product `bracket` on the
/// same space. It is a Poisson algebra when the identities hold.
#[derive(Clone, PartialEq, Eq)]
pub struct BilinearPair<K> {
    pub dot: StructureConstants<K>,
    pub bracket: StructureConstants<K>,
}

impl<K: Field> BilinearPair<K> {
    pub fn new(dot: StructureConstants<K>, bracket: StructureConstants<K>) -> Result<Self, AlgebraError> {
        if dot.symmetry != Symmetry::Symmetric {
            return Err(AlgebraError::DimensionMismatch {
                expected: dot.dim,
                found: dot.dim,
            });
        }
        if dot.dim != bracket.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dot.dim,
                found: bracket.dim,
            });
        }
        Ok(BilinearPair { dot, bracket })
    }

    pub fn zero(dim: usize) -> Self {
        BilinearPair {
            dot: StructureConstants::zero(dim, Symmetry::Symmetric),
            bracket: StructureConstants::zero(dim, Symmetry::Antisymmetric),
        }
    }

    /// Builds from 1-based entry lists.
    pub fn from_entries(
        dim: usize,
        dot: impl IntoIterator<Item = (usize, usize, usize, K)>,
        bracket: impl IntoIterator<Item = (usize, usize, usize, K)>,
    ) -> Result<Self, AlgebraError> {
        Ok(BilinearPair {
            dot: StructureConstants::from_entries_1based(dim, Symmetry::Symmetric, dot)?,
            bracket: StructureConstants::from_entries_1based(dim, Symmetry::Antisymmetric, bracket)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.dot.dim
    }

    pub fn op(&self, op: Op) -> &StructureConstants<K> {
        match op {
            Op::Dot => &self.dot,
            Op::Bracket => &self.bracket,
        }
    }

    pub fn op_mut(&mut self, op: Op) -> &mut StructureConstants<K> {
        match op {
            Op::Dot => &mut self.dot,
            Op::Bracket => &mut self.bracket,
        }
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> BilinearPair<L> {
        BilinearPair {
            dot: self.dot.map(&f),
            bracket: self.bracket.map(&f),
        }
    }

    pub fn try_map<L: Field, E>(&self, f: impl Fn(&K) -> Result<L, E>) -> Result<BilinearPair<L>, E> {
        Ok(BilinearPair {
            dot: self.dot.try_map(&f)?,
            bracket: self.bracket.try_map(&f)?,
        })
    }

    /// `g * p` with a precomputed inverse.
    pub fn transform(&self, g: &Matrix<K>, g_inv: &Matrix<K>) -> Self {
        BilinearPair {
            dot: self.dot.transform(g, g_inv),
            bracket: self.bracket.transform(g, g_inv),
        }
    }
}

impl<K: Field> fmt::Display for BilinearPair<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dot: {}; bracket: {}", self.dot, self.bracket)
    }
}

impl<K: Field> fmt::Debug for BilinearPair<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `g * p`, the pair in the basis `g^-1(e_1), ..., g^-1(e_n)`.
pub fn apply_basis_change<K: Field>(g: &Matrix<K>, p: &BilinearPair<K>) -> Result<BilinearPair<K>, AlgebraError> {
    if !g.is_square() || g.rows() != p.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: p.dim(),
            found: g.rows(),
        });
    }
    let g_inv = g.inverse().map_err(|_| AlgebraError::SingularMatrix)?;
    Ok(p.transform(g, &g_inv))
}

/// Whether `g * p == q`.
pub fn verify_isomorphism<K: Field>(
    p: &BilinearPair<K>,
    q: &BilinearPair<K>,
    g: &Matrix<K>,
) -> Result<bool, AlgebraError> {
    if p.dim() != q.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    Ok(apply_basis_change(g, p)? == *q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    Commutative,
    Anticommutative,
    Associative,
    Jacobi,
    Leibniz,
    Malcev,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::Commutative,
        Identity::Anticommutative,
        Identity::Associative,
        Identity::Jacobi,
        Identity::Leibniz,
        Identity::Malcev,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Commutative => "commutative",
            Identity::Anticommutative => "anticommutative",
            Identity::Associative => "associative",
            Identity::Jacobi => "jacobi",
            Identity::Leibniz => "leibniz",
            Identity::Malcev => "malcev",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: Identity,
    pub holds: bool,
    /// First failing 0-based index tuple in lexicographic order.
    pub witness: Option<Vec<usize>>,
}

fn unit<K: Field>(n: usize, i: usize) -> Vec<K> {
    let mut v = vec![K::zero(); n];
    v[i] = K::one();
    v
}

fn sub_vec<K: Field>(a: Vec<K>, b: &[K]) -> Vec<K> {
    a.into_iter().zip(b).map(|(x, y)| x - y.clone()).collect()
}

fn add_vec<K: Field>(a: Vec<K>, b: &[K]) -> Vec<K> {
    a.into_iter().zip(b).map(|(x, y)| x + y.clone()).collect()
}

/// `(x y) z - x (y z)` for one product.
pub fn associator<K: Field>(m: &StructureConstants<K>, x: &[K], y: &[K], z: &[K]) -> Vec<K> {
    sub_vec(m.product(&m.product(x, y), z), &m.product(x, &m.product(y, z)))
}

/// `[[x, y], z] + [[y, z], x] + [[z, x], y]`.
pub fn jacobiator<K: Field>(b: &StructureConstants<K>, x: &[K], y: &[K], z: &[K]) -> Vec<K> {
    let a = b.product(&b.product(x, y), z);
    let c = b.product(&b.product(y, z), x);
    let d = b.product(&b.product(z, x), y);
    add_vec(add_vec(a, &c), &d)
}

/// `{x y, z} - {x, z} y - x {y, z}`.
pub fn leibnizator<K: Field>(p: &BilinearPair<K>, x: &[K], y: &[K], z: &[K]) -> Vec<K> {
    let (d, b) = (&p.dot, &p.bracket);
    let lhs = b.product(&d.product(x, y), z);
    let r1 = d.product(&b.product(x, z), y);
    let r2 = d.product(x, &b.product(y, z));
    sub_vec(sub_vec(lhs, &r1), &r2)
}

/// Malcev identity `{{x,y},{x,z}} = {{{x,y},z},x} + {{{y,z},x},x} + {{{z,x},x},y}`
/// polarized in `x`, evaluated at `(x, y, z, w)`.
pub fn malcevator<K: Field>(b: &StructureConstants<K>, x: &[K], y: &[K], z: &[K], w: &[K]) -> Vec<K> {
    let br = |u: &[K], v: &[K]| b.product(u, v);
    let lhs = add_vec(br(&br(x, y), &br(w, z)), &br(&br(w, y), &br(x, z)));
    let terms = [
        br(&br(&br(x, y), z), w),
        br(&br(&br(w, y), z), x),
        br(&br(&br(y, z), x), w),
        br(&br(&br(y, z), w), x),
        br(&br(&br(z, x), w), y),
        br(&br(&br(z, w), x), y),
    ];
    terms.iter().fold(lhs, |acc, t| sub_vec(acc, t))
}

fn first_failure<K: Field>(n: usize, arity: usize, f: impl Fn(&[Vec<K>]) -> Vec<K>) -> Option<Vec<usize>> {
    let units: Vec<Vec<K>> = (0..n).map(|i| unit(n, i)).collect();
    let total = n.pow(arity as u32);
    for code in 0..total {
        let mut idx = vec![0; arity];
        let mut c = code;
        for slot in (0..arity).rev() {
            idx[slot] = c % n;
            c /= n;
        }
        let args: Vec<Vec<K>> = idx.iter().map(|&i| units[i].clone()).collect();
        if f(&args).iter().any(|v| !v.is_zero()) {
            return Some(idx);
        }
    }
    None
}

fn symmetry_witness<K: Field>(m: &StructureConstants<K>, want: Symmetry) -> Option<Vec<usize>> {
    if m.symmetry == want {
        return None;
    }
    // A symmetric table is anticommutative only if zero, and vice versa.
    let n = m.dim;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let a = m.get(i, j, k);
                let b = m.get(j, i, k);
                let bad = match want {
                    Symmetry::Symmetric => a != b,
                    Symmetry::Antisymmetric => a != -b,
                };
                if bad {
                    return Some(vec![i, j]);
                }
            }
        }
    }
    None
}

/// Checks one identity on basis tuples. The symmetry identities refer to the
/// dot (commutative) and bracket (anticommutative); associativity to the
/// dot; Jacobi and Malcev to the bracket; Leibniz couples both.
pub fn check_identity<K: Field>(p: &BilinearPair<K>, id: Identity) -> IdentityReport {
    let n = p.dim();
    let witness = match id {
        Identity::Commutative => symmetry_witness(&p.dot, Symmetry::Symmetric),
        Identity::Anticommutative => symmetry_witness(&p.bracket, Symmetry::Antisymmetric),
        Identity::Associative => first_failure(n, 3, |a| associator(&p.dot, &a[0], &a[1], &a[2])),
        Identity::Jacobi => first_failure(n, 3, |a| jacobiator(&p.bracket, &a[0], &a[1], &a[2])),
        Identity::Leibniz => first_failure(n, 3, |a| leibnizator(p, &a[0], &a[1], &a[2])),
        Identity::Malcev => first_failure(n, 4, |a| malcevator(&p.bracket, &a[0], &a[1], &a[2], &a[3])),
    };
    IdentityReport {
        identity: id,
        holds: witness.is_none(),
        witness,
    }
}

/// Dot commutative and associative, bracket Lie, Leibniz rule.
pub fn is_poisson<K: Field>(p: &BilinearPair<K>) -> bool {
    [
        Identity::Commutative,
        Identity::Anticommutative,
        Identity::Associative,
        Identity::Jacobi,
        Identity::Leibniz,
    ]
    .into_iter()
    .all(|id| check_identity(p, id).holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn pair(dim: usize, dot: &[(usize, usize, usize, i64)], br: &[(usize, usize, usize, i64)]) -> BilinearPair<Rational> {
        BilinearPair::from_entries(
            dim,
            dot.iter().map(|&(i, j, k, v)| (i, j, k, q(v))),
            br.iter().map(|&(i, j, k, v)| (i, j, k, q(v))),
        )
        .unwrap()
    }

    #[test]
    fn sign_resolved_lookup() {
        let mut b = StructureConstants::<Rational>::zero(3, Symmetry::Antisymmetric);
        b.set(2, 0, 1, q(5)).unwrap();
        assert_eq!(b.get(0, 2, 1), q(-5));
        assert_eq!(b.get(2, 0, 1), q(5));
        assert_eq!(b.entries().count(), 1);
        assert!(b.set(1, 1, 0, q(1)).is_err());
        assert!(b.set(3, 1, 0, q(1)).is_err());
    }

    #[test]
    fn zero_pair_satisfies_everything() {
        let p = BilinearPair::<Rational>::zero(3);
        for id in Identity::ALL {
            assert!(check_identity(&p, id).holds);
        }
    }

    #[test]
    fn mixed_pair_fails_leibniz_first_on_e1_e1_e2() {
        // dot e_i e_i = e_i, bracket {e1,e2} = e3
        let p = pair(3, &[(1, 1, 1, 1), (2, 2, 2, 1), (3, 3, 3, 1)], &[(1, 2, 3, 1)]);
        let r = check_identity(&p, Identity::Leibniz);
        assert!(!r.holds);
        assert_eq!(r.witness, Some(vec![0, 0, 1]));
        assert!(!is_poisson(&p));
    }

    #[test]
    fn sl2_is_lie_and_malcev() {
        let p = pair(3, &[], &[(1, 2, 3, 1), (1, 3, 1, -2), (2, 3, 2, 2)]);
        assert!(check_identity(&p, Identity::Jacobi).holds);
        assert!(check_identity(&p, Identity::Malcev).holds);
        assert!(is_poisson(&p));
    }

    #[test]
    fn non_lie_bracket_fails_jacobi_and_malcev() {
        let p = pair(3, &[], &[(1, 2, 3, 1), (1, 3, 1, 1)]);
        assert_eq!(check_identity(&p, Identity::Jacobi).witness, Some(vec![0, 1, 2]));
        assert!(!check_identity(&p, Identity::Malcev).holds);
    }

    #[test]
    fn singular_basis_change_is_rejected() {
        let p = pair(2, &[(1, 1, 2, 1)], &[]);
        let g = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert_eq!(apply_basis_change(&g, &p), Err(AlgebraError::SingularMatrix));
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-3i64..4).prop_map(Rational::from)
    }

    fn arb_pair(n: usize) -> impl Strategy<Value = BilinearPair<Rational>> {
        let sym = n * (n + 1) / 2 * n;
        let anti = n * (n - 1) / 2 * n;
        (
            proptest::collection::vec(prop_oneof![3 => Just(Rational::zero()), 1 => small()], sym),
            proptest::collection::vec(prop_oneof![3 => Just(Rational::zero()), 1 => small()], anti),
        )
            .prop_map(move |(d, b)| {
                let mut p = BilinearPair::zero(n);
                let mut it = d.into_iter();
                for (i, j) in canonical_pairs(n, Symmetry::Symmetric) {
                    for k in 0..n {
                        p.dot.set(i, j, k, it.next().unwrap()).unwrap();
                    }
                }
                let mut it = b.into_iter();
                for (i, j) in canonical_pairs(n, Symmetry::Antisymmetric) {
                    for k in 0..n {
                        p.bracket.set(i, j, k, it.next().unwrap()).unwrap();
                    }
                }
                p
            })
    }

    fn arb_invertible(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
        proptest::collection::vec(-3i64..4, n * n)
            .prop_map(move |v| Matrix::from_fn(n, n, |i, j| q(v[i * n + j])))
            .prop_filter("invertible", |m| !m.determinant().is_zero())
    }

    fn arb_vec(n: usize) -> impl Strategy<Value = Vec<Rational>> {
        proptest::collection::vec(small(), n)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn action_is_a_group_action(p in arb_pair(3), g in arb_invertible(3), h in arb_invertible(3)) {
            let gh = &g * &h;
            let lhs = apply_basis_change(&gh, &p).unwrap();
            let rhs = apply_basis_change(&g, &apply_basis_change(&h, &p).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(apply_basis_change(&Matrix::identity(3), &p).unwrap(), p);
        }

        #[test]
        fn action_matches_pointwise_definition(p in arb_pair(3), g in arb_invertible(3), x in arb_vec(3), y in arb_vec(3)) {
            // (g*mu)(x, y) = g mu(g^-1 x, g^-1 y), computed directly.
            let gi = g.inverse().unwrap();
            let moved = apply_basis_change(&g, &p).unwrap();
            let direct = g.mul_vec(&p.dot.product(&gi.mul_vec(&x), &gi.mul_vec(&y)));
            prop_assert_eq!(moved.dot.product(&x, &y), direct);
            let direct = g.mul_vec(&p.bracket.product(&gi.mul_vec(&x), &gi.mul_vec(&y)));
            prop_assert_eq!(moved.bracket.product(&x, &y), direct);
        }

        #[test]
        fn identities_are_basis_independent(p in arb_pair(3), g in arb_invertible(3)) {
            let moved = apply_basis_change(&g, &p).unwrap();
            for id in Identity::ALL {
                prop_assert_eq!(check_identity(&p, id).holds, check_identity(&moved, id).holds);
            }
        }

        #[test]
        fn basis_check_agrees_with_generic_points(p in arb_pair(3), x in arb_vec(3), y in arb_vec(3), z in arb_vec(3)) {
            // Multilinear identities hold on all vectors iff they hold on basis tuples.
            if check_identity(&p, Identity::Leibniz).holds {
                prop_assert!(leibnizator(&p, &x, &y, &z).iter().all(|c| c.is_zero()));
            }
            if check_identity(&p, Identity::Associative).holds {
                prop_assert!(associator(&p.dot, &x, &y, &z).iter().all(|c| c.is_zero()));
            }
            if check_identity(&p, Identity::Malcev).holds {
                // the unpolarized identity at a generic point
                let b = &p.bracket;
                let br = |u: &[Rational], v: &[Rational]| b.product(u, v);
                let lhs = br(&br(&x, &y), &br(&x, &z));
                let rhs: Vec<Rational> = br(&br(&br(&x, &y), &z), &x)
                    .into_iter()
                    .zip(br(&br(&br(&y, &z), &x), &x))
                    .zip(br(&br(&br(&z, &x), &x), &y))
                    .map(|((a, b), c)| a + b + c)
                    .collect();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
