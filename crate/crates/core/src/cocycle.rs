//! Skew-symmetric bilinear maps `theta` compatible with a commutative
//! associative product, the Jacobi condition on them, and the action of
//! invertible matrices `(theta * phi)(x, y) = phi^-1 theta(phi x, phi y)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    canonical_pairs, jacobiator, leibnizator, BilinearPair, StructureConstants, Symmetry,
};
use crate::arith::{Field, Matrix, SingularMatrix};
use crate::catalog::random_rational;
use crate::Rational;

/// `theta(x, y) = sum_k B_k(x, y) e_k` with every `B_k` alternating.
///
/// Stored as antisymmetric structure constants: `B_k(e_i, e_j) = c_ij^k`.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewBilinearMap<K> {
    map: StructureConstants<K>,
}

impl<K: Field> SkewBilinearMap<K> {
    pub fn zero(dim: usize) -> Self {
        SkewBilinearMap {
            map: StructureConstants::zero(dim, Symmetry::Antisymmetric),
        }
    }

    pub fn from_constants(map: StructureConstants<K>) -> Self {
        assert_eq!(map.symmetry(), Symmetry::Antisymmetric, "skew maps are antisymmetric");
        SkewBilinearMap { map }
    }

    /// `Delta_{i,j}` placed in component `k` (0-based, `i < j`).
    pub fn delta(dim: usize, i: usize, j: usize, k: usize) -> Self {
        let mut m = StructureConstants::zero(dim, Symmetry::Antisymmetric);
        m.set(i, j, k, K::one()).expect("valid delta indices");
        SkewBilinearMap { map: m }
    }

    pub fn dim(&self) -> usize {
        self.map.dim()
    }

    pub fn constants(&self) -> &StructureConstants<K> {
        &self.map
    }

    pub fn into_constants(self) -> StructureConstants<K> {
        self.map
    }

    /// `B_k` as an alternating Gram matrix.
    pub fn gram(&self, k: usize) -> Matrix<K> {
        let n = self.dim();
        Matrix::from_fn(n, n, |i, j| self.map.get(i, j, k))
    }

    /// Coordinates in the ordering used by [`leibniz_space`]: component
    /// major, then pairs `i < j` lexicographically.
    pub fn to_vector(&self) -> Vec<K> {
        let n = self.dim();
        let pairs = canonical_pairs(n, Symmetry::Antisymmetric);
        let mut out = Vec::with_capacity(n * pairs.len());
        for k in 0..n {
            for &(i, j) in &pairs {
                out.push(self.map.get(i, j, k));
            }
        }
        out
    }

    pub fn from_vector(dim: usize, v: &[K]) -> Self {
        let pairs = canonical_pairs(dim, Symmetry::Antisymmetric);
        assert_eq!(v.len(), dim * pairs.len(), "coordinate length");
        let mut m = StructureConstants::zero(dim, Symmetry::Antisymmetric);
        for k in 0..dim {
            for (p, &(i, j)) in pairs.iter().enumerate() {
                m.set(i, j, k, v[k * pairs.len() + p].clone()).expect("in range");
            }
        }
        SkewBilinearMap { map: m }
    }

    pub fn add(&self, other: &Self) -> Self {
        let v: Vec<K> = self
            .to_vector()
            .into_iter()
            .zip(other.to_vector())
            .map(|(a, b)| a + b)
            .collect();
        Self::from_vector(self.dim(), &v)
    }
}

impl<K: Field> fmt::Display for SkewBilinearMap<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.map)
    }
}

impl<K: Field> fmt::Debug for SkewBilinearMap<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn unit<K: Field>(n: usize, i: usize) -> Vec<K> {
    let mut v = vec![K::zero(); n];
    v[i] = K::one();
    v
}

/// Basis of the skew maps satisfying
/// `theta(x y, z) = theta(x, z) y + x theta(y, z)`, in reduced echelon form.
pub fn leibniz_space<K: Field>(dot: &StructureConstants<K>) -> Vec<SkewBilinearMap<K>> {
    assert_eq!(dot.symmetry(), Symmetry::Symmetric, "dot must be symmetric");
    let n = dot.dim();
    let pairs = canonical_pairs(n, Symmetry::Antisymmetric);
    let unknowns = n * pairs.len();
    if unknowns == 0 {
        return Vec::new();
    }
    let units: Vec<Vec<K>> = (0..n).map(|i| unit(n, i)).collect();
    // Columns: the Leibniz defect of each unit skew map on every triple with
    // a <= b (the defect is symmetric in the first two slots).
    let mut columns: Vec<Vec<K>> = Vec::with_capacity(unknowns);
    for k in 0..n {
        for &(i, j) in &pairs {
            let theta = SkewBilinearMap::<K>::delta(n, i, j, k);
            let p = BilinearPair {
                dot: dot.clone(),
                bracket: theta.map,
            };
            let mut col = Vec::new();
            for a in 0..n {
                for b in a..n {
                    for c in 0..n {
                        col.extend(leibnizator(&p, &units[a], &units[b], &units[c]));
                    }
                }
            }
            columns.push(col);
        }
    }
    let rows = columns[0].len();
    let nonzero_rows: Vec<usize> = (0..rows)
        .filter(|&r| columns.iter().any(|c| !c[r].is_zero()))
        .collect();
    let m = Matrix::from_fn(nonzero_rows.len(), unknowns, |r, c| columns[c][nonzero_rows[r]].clone());
    m.nullspace()
        .into_iter()
        .map(|v| SkewBilinearMap::from_vector(n, &v))
        .collect()
}

/// Index triples `i < j < k` (0-based) where the Jacobiator of `theta` is
/// nonzero. Empty exactly when `theta` is a Lie bracket.
pub fn jacobi_residual<K: Field>(theta: &SkewBilinearMap<K>) -> Vec<(usize, usize, usize)> {
    let n = theta.dim();
    let units: Vec<Vec<K>> = (0..n).map(|i| unit(n, i)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if jacobiator(&theta.map, &units[i], &units[j], &units[k])
                    .iter()
                    .any(|c| !c.is_zero())
                {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Z2Report<K: Field> {
    pub basis: Vec<SkewBilinearMap<K>>,
    pub linear_dim: usize,
    /// Exact: the Jacobiator vanishes on every basis element and every
    /// pairwise sum, hence on the whole span.
    pub jacobi_certified: bool,
    /// Random combinations checked as an independent cross-check.
    pub samples_checked: usize,
    pub samples_ok: bool,
}

impl<K: Field> Z2Report<K> {
    pub fn jacobi_automatic(&self) -> bool {
        self.jacobi_certified && self.samples_ok
    }
}

/// Leibniz space of `dot` and whether Jacobi holds on all of it.
pub fn z2_report(dot: &StructureConstants<Rational>, samples: usize, seed: u64) -> Z2Report<Rational> {
    let basis = leibniz_space(dot);
    let lie = |t: &SkewBilinearMap<Rational>| jacobi_residual(t).is_empty();
    let mut certified = basis.iter().all(lie);
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            certified &= lie(&basis[a].add(&basis[b]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples_ok = true;
    let n = dot.dim();
    for _ in 0..samples {
        let mut acc = SkewBilinearMap::zero(n);
        for b in &basis {
            let c = random_rational(&mut rng, false);
            let scaled: Vec<Rational> = b.to_vector().into_iter().map(|x| x * c.clone()).collect();
            acc = acc.add(&SkewBilinearMap::from_vector(n, &scaled));
        }
        samples_ok &= lie(&acc);
    }
    Z2Report {
        linear_dim: basis.len(),
        basis,
        jacobi_certified: certified,
        samples_checked: samples,
        samples_ok,
    }
}

/// `theta * phi` via `B'_i = sum_j b_ij phi^T B_j phi` with `(b_ij) = phi^-1`.
pub fn theta_action<K: Field>(phi: &Matrix<K>, theta: &SkewBilinearMap<K>) -> Result<SkewBilinearMap<K>, SingularMatrix> {
    let n = theta.dim();
    if phi.rows() != n || !phi.is_square() {
        return Err(SingularMatrix);
    }
    let b = phi.inverse()?;
    let pt = phi.transpose();
    let pulled: Vec<Matrix<K>> = (0..n).map(|j| &(&pt * &theta.gram(j)) * phi).collect();
    let mut out = StructureConstants::zero(n, Symmetry::Antisymmetric);
    for i in 0..n {
        for (p, q) in canonical_pairs(n, Symmetry::Antisymmetric) {
            let mut acc = K::zero();
            for (j, m) in pulled.iter().enumerate() {
                if !b[(i, j)].is_zero() && !m[(p, q)].is_zero() {
                    acc = acc + b[(i, j)].clone() * m[(p, q)].clone();
                }
            }
            out.set(p, q, i, acc).expect("in range");
        }
    }
    Ok(SkewBilinearMap { map: out })
}

/// Coordinates of `v` in an echelon basis, if `v` lies in its span.
pub fn coordinates_in<K: Field>(basis: &[SkewBilinearMap<K>], v: &SkewBilinearMap<K>) -> Option<Vec<K>> {
    let target = v.to_vector();
    let rows: Vec<Vec<K>> = basis.iter().map(|b| b.to_vector()).collect();
    let mut coords = Vec::with_capacity(rows.len());
    for r in &rows {
        let pivot = r.iter().position(|c| !c.is_zero())?;
        coords.push(target[pivot].clone() * r[pivot].inv()?);
    }
    let mut rebuilt = vec![K::zero(); target.len()];
    for (c, r) in coords.iter().zip(&rows) {
        for (slot, x) in rebuilt.iter_mut().zip(r) {
            *slot = slot.clone() + c.clone() * x.clone();
        }
    }
    (rebuilt == target).then_some(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{apply_basis_change, is_poisson};
    use crate::catalog::{aut_template, build, build_with, CatalogKey, Family};
    use alloc::collections::BTreeMap;
    use alloc::string::ToString;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn dot_of(key: &str) -> StructureConstants<Rational> {
        build(&key.parse::<CatalogKey>().unwrap()).unwrap().dot
    }

    fn delta(n: usize, i: usize, j: usize, k: usize) -> SkewBilinearMap<Rational> {
        SkewBilinearMap::delta(n, i - 1, j - 1, k - 1)
    }

    #[test]
    fn leibniz_space_of_a2() {
        let basis = leibniz_space(&dot_of("A2"));
        assert_eq!(basis, vec![delta(3, 1, 3, 2), delta(3, 1, 3, 3)]);
    }

    #[test]
    fn leibniz_space_of_trivial_product() {
        assert_eq!(leibniz_space(&dot_of("A1")).len(), 9);
    }

    #[test]
    fn null_filiform_has_no_cocycles() {
        for n in 2..=8 {
            let dot = build_with::<Rational>(Family::Mu0, n, None).unwrap().dot;
            assert!(leibniz_space(&dot).is_empty(), "n = {n}");
        }
    }

    #[test]
    fn filiform_cocycles() {
        for n in 4..=8 {
            let d11 = build_with::<Rational>(Family::Mu11, n, None).unwrap().dot;
            assert_eq!(leibniz_space(&d11), vec![delta(n, 1, n, n - 1), delta(n, 1, n, n)], "n = {n}");
            let d12 = build_with::<Rational>(Family::Mu12, n, None).unwrap().dot;
            assert_eq!(leibniz_space(&d12), vec![delta(n, 1, n, n - 1)], "n = {n}");
        }
    }

    #[test]
    fn jacobi_residual_examples() {
        let l35 = SkewBilinearMap::from_constants(build(&"L3.5".parse().unwrap()).unwrap().bracket);
        assert!(jacobi_residual(&l35).is_empty());
        assert!(jacobi_residual(&SkewBilinearMap::<Rational>::zero(3)).is_empty());
        // {e1,e2} = e3, {e1,e3} = e1: Jacobiator on (e1,e2,e3) is e3.
        let bad = delta(3, 1, 2, 3).add(&delta(3, 1, 3, 1));
        assert_eq!(jacobi_residual(&bad), vec![(0, 1, 2)]);
    }

    #[test]
    fn z2_reports_for_listed_products() {
        let r = z2_report(&dot_of("A3"), 20, 42);
        assert_eq!(r.basis, vec![delta(3, 1, 2, 3)]);
        assert!(r.jacobi_automatic());
        let r = z2_report(&dot_of("A7"), 20, 42);
        assert_eq!(r.basis, vec![delta(3, 2, 3, 2), delta(3, 2, 3, 3)]);
        assert!(r.jacobi_automatic());
        let r = z2_report(&build_with::<Rational>(Family::Mu12, 5, None).unwrap().dot, 20, 42);
        assert_eq!(r.linear_dim, 1);
        for a in ["A4", "A5", "A6", "A8", "A9", "A10", "A12"] {
            assert_eq!(z2_report(&dot_of(a), 5, 42).linear_dim, 0, "{a}");
        }
        assert!(z2_report(&dot_of("A1"), 5, 42).linear_dim == 9);
        assert!(!z2_report(&dot_of("A1"), 5, 42).jacobi_certified);
    }

    #[test]
    fn a2_template_action() {
        let t = aut_template(&"A2".parse().unwrap()).unwrap();
        let mut vals = BTreeMap::new();
        for (s, v) in [("a1_1", 2), ("a2_3", 3), ("a3_3", 1), ("a2_1", 0), ("a3_1", 0)] {
            vals.insert(s.to_string(), Rational::from(v));
        }
        let phi = t.instantiate(&vals).unwrap();
        let theta = delta(3, 1, 3, 3);
        let moved = theta_action(&phi, &theta).unwrap();
        let want = SkewBilinearMap::from_vector(3, &{
            let mut v = vec![Rational::zero(); 9];
            v[3 + 1] = q(-3, 2);
            v[6 + 1] = q(2, 1);
            v
        });
        assert_eq!(moved, want);
    }

    #[test]
    fn filiform_template_action() {
        let n = 5;
        let t = aut_template(&CatalogKey::with_n(Family::Mu11, n)).unwrap();
        let mut vals = BTreeMap::new();
        for s in &t.symbols {
            vals.insert(s.clone(), Rational::zero());
        }
        vals.insert("a1_1".to_string(), Rational::from(2));
        vals.insert("a5_5".to_string(), Rational::from(1));
        let phi = t.instantiate(&vals).unwrap();
        let moved = theta_action(&phi, &delta(n, 1, n, n - 1)).unwrap();
        let scaled: Vec<Rational> = delta(n, 1, n, n - 1).to_vector().into_iter().map(|x| x * q(1, 8)).collect();
        assert_eq!(moved, SkewBilinearMap::from_vector(n, &scaled));
    }

    #[test]
    fn representatives_give_poisson_algebras() {
        for (dot, theta, target) in [
            ("A2", delta(3, 1, 3, 3), "P3.14"),
            ("A2", delta(3, 1, 3, 2), "P3.15"),
            ("A7", delta(3, 2, 3, 2), "P3.18"),
            ("A11", delta(3, 2, 3, 2), "P3.20"),
        ] {
            let p = BilinearPair { dot: dot_of(dot), bracket: theta.into_constants() };
            assert!(is_poisson(&p));
            assert_eq!(p, build(&target.parse().unwrap()).unwrap());
        }
    }

    #[test]
    fn action_agrees_with_basis_change() {
        // theta * phi equals the bracket moved by phi^-1.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let v: Vec<Rational> = (0..9).map(|_| random_rational(&mut rng, false)).collect();
            let theta = SkewBilinearMap::from_vector(3, &v);
            let m: Vec<Rational> = (0..9).map(|_| random_rational(&mut rng, false)).collect();
            let phi = Matrix::from_fn(3, 3, |i, j| m[3 * i + j].clone());
            let Ok(phi_inv) = phi.inverse() else { continue };
            let via_formula = theta_action(&phi, &theta).unwrap();
            let p = BilinearPair { dot: StructureConstants::zero(3, Symmetry::Symmetric), bracket: theta.constants().clone() };
            let via_change = apply_basis_change(&phi_inv, &p).unwrap().bracket;
            assert_eq!(via_formula.into_constants(), via_change);
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]

        #[test]
        fn action_law(seed in 0u64..10_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut mat = || {
                loop {
                    let v: Vec<Rational> = (0..9).map(|_| random_rational(&mut rng, false)).collect();
                    let m = Matrix::from_fn(3, 3, |i, j| v[3 * i + j].clone());
                    if !m.determinant().is_zero() {
                        return m;
                    }
                }
            };
            let (phi, psi) = (mat(), mat());
            let v: Vec<Rational> = (0..9).map(|i| Rational::from((seed as i64 + i) % 5 - 2)).collect();
            let theta = SkewBilinearMap::from_vector(3, &v);
            let lhs = theta_action(&(&phi * &psi), &theta).unwrap();
            let rhs = theta_action(&psi, &theta_action(&phi, &theta).unwrap()).unwrap();
            proptest::prop_assert_eq!(lhs, rhs);
            proptest::prop_assert_eq!(theta_action(&Matrix::identity(3), &theta).unwrap(), theta);
        }

        #[test]
        fn automorphisms_preserve_the_leibniz_space(seed in 0u64..10_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for key in ["A2", "A3", "A7", "A11"] {
                let k: CatalogKey = key.parse().unwrap();
                let basis = leibniz_space(&build(&k).unwrap().dot);
                let phi = aut_template(&k).unwrap().sample(&mut rng);
                for theta in &basis {
                    let moved = theta_action(&phi, theta).unwrap();
                    proptest::prop_assert!(coordinates_in(&basis, &moved).is_some(), "{}", key);
                }
            }
        }
    }
}
