//! Derivations, orbit dimensions and the annihilator/square invariants that
//! must move monotonically along a degeneration.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{AlgebraError, BilinearPair, Op, StructureConstants};
use crate::arith::{Field, Matrix};

const OPS: [Op; 2] = [Op::Dot, Op::Bracket];

/// Basis of the matrices `phi` (column convention, `phi[(a, b)]` is the
/// `e_a` coefficient of `phi(e_b)`) that are derivations of both products.
/// Coordinates are row-major entries; the basis is in reduced echelon form.
pub fn derivation_space<K: Field>(p: &BilinearPair<K>) -> Vec<Matrix<K>> {
    let n = p.dim();
    let mut rows: Vec<Vec<K>> = Vec::new();
    for op in OPS {
        let m = p.op(op);
        let prods: Vec<Vec<Vec<K>>> = (0..n).map(|i| (0..n).map(|j| m.basis_product(i, j)).collect()).collect();
        for (i, j) in m.canonical_pairs() {
            for k in 0..n {
                // Coefficient of e_k in phi(e_i e_j) - phi(e_i) e_j - e_i phi(e_j),
                // as a linear form in the entries phi[(a, b)].
                let mut row = vec![K::zero(); n * n];
                for b in 0..n {
                    let c = &prods[i][j][b];
                    if !c.is_zero() {
                        row[k * n + b] = row[k * n + b].clone() + c.clone();
                    }
                }
                for a in 0..n {
                    let c = &prods[a][j][k];
                    if !c.is_zero() {
                        row[a * n + i] = row[a * n + i].clone() - c.clone();
                    }
                    let c = &prods[i][a][k];
                    if !c.is_zero() {
                        row[a * n + j] = row[a * n + j].clone() - c.clone();
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = Matrix::from_fn(rows.len(), n * n, |r, c| rows[r][c].clone());
    sys.nullspace()
        .into_iter()
        .map(|v| Matrix::from_fn(n, n, |a, b| v[a * n + b].clone()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InvariantProfile {
    pub dim_der: usize,
    pub orbit_dim: usize,
    pub ann_dot: usize,
    pub ann_bracket: usize,
    pub ann_joint: usize,
    pub dim_dot_square: usize,
    pub dim_bracket_square: usize,
    pub dim_p_square: usize,
}

impl InvariantProfile {
    pub fn as_tuple(&self) -> [usize; 8] {
        [
            self.dim_der,
            self.orbit_dim,
            self.ann_dot,
            self.ann_bracket,
            self.ann_joint,
            self.dim_dot_square,
            self.dim_bracket_square,
            self.dim_p_square,
        ]
    }
}

impl fmt::Display for InvariantProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.as_tuple();
        write!(f, "({}, {}, {}, {}, {}, {}, {}, {})", t[0], t[1], t[2], t[3], t[4], t[5], t[6], t[7])
    }
}

/// Rows of `L_x` stacked for all basis `e_j`: `x` annihilates `m` when
/// `sum_i x_i c_ij^k = 0` for all `j, k`.
fn annihilator_rows<K: Field>(m: &StructureConstants<K>) -> Vec<Vec<K>> {
    let n = m.dim();
    let mut rows = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            rows.push((0..n).map(|i| m.get(i, j, k)).collect());
        }
    }
    rows
}

fn kernel_dim<K: Field>(rows: &[Vec<K>], n: usize) -> usize {
    if rows.is_empty() {
        return n;
    }
    n - Matrix::from_fn(rows.len(), n, |r, c| rows[r][c].clone()).rank()
}

fn product_vectors<K: Field>(m: &StructureConstants<K>) -> Vec<Vec<K>> {
    m.canonical_pairs().into_iter().map(|(i, j)| m.basis_product(i, j)).collect()
}

fn span_dim<K: Field>(vs: &[Vec<K>], n: usize) -> usize {
    if vs.is_empty() {
        return 0;
    }
    Matrix::from_fn(vs.len(), n, |r, c| vs[r][c].clone()).rank()
}

pub fn invariant_profile<K: Field>(p: &BilinearPair<K>) -> InvariantProfile {
    let n = p.dim();
    let dim_der = derivation_space(p).len();
    let ad = annihilator_rows(&p.dot);
    let ab = annihilator_rows(&p.bracket);
    let joint: Vec<Vec<K>> = ad.iter().chain(&ab).cloned().collect();
    let sd = product_vectors(&p.dot);
    let sb = product_vectors(&p.bracket);
    let both: Vec<Vec<K>> = sd.iter().chain(&sb).cloned().collect();
    InvariantProfile {
        dim_der,
        orbit_dim: n * n - dim_der,
        ann_dot: kernel_dim(&ad, n),
        ann_bracket: kernel_dim(&ab, n),
        ann_joint: kernel_dim(&joint, n),
        dim_dot_square: span_dim(&sd, n),
        dim_bracket_square: span_dim(&sb, n),
        dim_p_square: span_dim(&both, n),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    AnnDot,
    AnnBracket,
    AnnJoint,
    DotSquare,
    BracketSquare,
    PSquare,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::AnnDot,
        Condition::AnnBracket,
        Condition::AnnJoint,
        Condition::DotSquare,
        Condition::BracketSquare,
        Condition::PSquare,
    ];

    /// 1-based position in the usual list of necessary conditions.
    pub fn number(self) -> usize {
        Condition::ALL.iter().position(|&c| c == self).unwrap() + 1
    }

    pub fn describe(self) -> &'static str {
        match self {
            Condition::AnnDot => "dim Ann(dot) <=",
            Condition::AnnBracket => "dim Ann(bracket) <=",
            Condition::AnnJoint => "dim Ann <=",
            Condition::DotSquare => "dim P.P >=",
            Condition::BracketSquare => "dim {P,P} >=",
            Condition::PSquare => "dim P^2 >=",
        }
    }

    fn values(self, p: &InvariantProfile) -> usize {
        match self {
            Condition::AnnDot => p.ann_dot,
            Condition::AnnBracket => p.ann_bracket,
            Condition::AnnJoint => p.ann_joint,
            Condition::DotSquare => p.dim_dot_square,
            Condition::BracketSquare => p.dim_bracket_square,
            Condition::PSquare => p.dim_p_square,
        }
    }

    fn holds(self, source: usize, target: usize) -> bool {
        match self {
            Condition::AnnDot | Condition::AnnBracket | Condition::AnnJoint => source <= target,
            _ => source >= target,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub condition: Condition,
    pub source: usize,
    pub target: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecessaryReport {
    pub source: InvariantProfile,
    pub target: InvariantProfile,
    pub results: Vec<ConditionResult>,
}

impl NecessaryReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> Vec<Condition> {
        self.results.iter().filter(|r| !r.holds).map(|r| r.condition).collect()
    }
}

/// Evaluates the six inequalities that any degeneration `source -> target`
/// must satisfy. A failure rules the degeneration out.
pub fn check_necessary_conditions<K: Field>(
    source: &BilinearPair<K>,
    target: &BilinearPair<K>,
) -> Result<NecessaryReport, AlgebraError> {
    if source.dim() != target.dim() {
        return Err(AlgebraError::DimensionMismatch { expected: source.dim(), found: target.dim() });
    }
    let s = invariant_profile(source);
    let t = invariant_profile(target);
    let results = Condition::ALL
        .iter()
        .map(|&c| {
            let (a, b) = (c.values(&s), c.values(&t));
            ConditionResult { condition: c, source: a, target: b, holds: c.holds(a, b) }
        })
        .collect();
    Ok(NecessaryReport { source: s, target: t, results })
}
