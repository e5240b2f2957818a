//! Zariski-closed condition sets on structure constants, used as
//! separating sets for non-degenerations: membership, sampled stability
//! under lower-triangular basis changes, and a randomized search for orbit
//! points inside the set.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{apply_basis_change, canonical_pairs, BilinearPair, Op, Symmetry};
use crate::arith::expr::{Expr, ExprError};
use crate::arith::mpoly::MPoly;
use crate::arith::{Field, Matrix};
use crate::catalog::random_rational;
use crate::Rational;

/// A canonical structure constant, 0-based (`i <= j` for dot, `i < j` for
/// bracket).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConstRef {
    pub op: Op,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl ConstRef {
    pub fn value(&self, p: &BilinearPair<Rational>) -> Rational {
        p.op(self.op).get(self.i, self.j, self.k)
    }

    pub fn all(dim: usize) -> Vec<ConstRef> {
        let mut out = Vec::new();
        for (op, sym) in [(Op::Dot, Symmetry::Symmetric), (Op::Bracket, Symmetry::Antisymmetric)] {
            for (i, j) in canonical_pairs(dim, sym) {
                for k in 0..dim {
                    out.push(ConstRef { op, i, j, k });
                }
            }
        }
        out
    }
}

impl fmt::Display for ConstRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.op {
            Op::Dot => "c",
            Op::Bracket => "c'",
        };
        write!(f, "{c}[{},{},{}]", self.i + 1, self.j + 1, self.k + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionError {
    Expr(ExprError),
    /// A constant reference with a bad index list.
    BadIndex(String),
    /// An equation without `=`.
    NotAnEquation(String),
    /// A parameter such as `alpha` still unbound at evaluation time.
    UnboundParam(String),
    DimensionMismatch { expected: usize, found: usize },
}

impl fmt::Display for ConditionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionError::Expr(e) => write!(f, "{e}"),
            ConditionError::BadIndex(s) => write!(f, "bad constant reference `{s}`"),
            ConditionError::NotAnEquation(s) => write!(f, "`{s}` is not an equation"),
            ConditionError::UnboundParam(s) => write!(f, "parameter `{s}` is unbound"),
            ConditionError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
        }
    }
}

impl core::error::Error for ConditionError {}

impl From<ExprError> for ConditionError {
    fn from(e: ExprError) -> Self {
        ConditionError::Expr(e)
    }
}

/// Resolves `c[i,j,k]` / `c'[i,j,k]` (1-based, any order) to a canonical
/// constant and a sign; `None` as the constant when it is forced to zero.
fn parse_ref(sym: &str, dim: usize) -> Result<Option<(Option<ConstRef>, i64)>, ConditionError> {
    let (op, rest) = if let Some(r) = sym.strip_prefix("c'[") {
        (Op::Bracket, r)
    } else if let Some(r) = sym.strip_prefix("c[") {
        (Op::Dot, r)
    } else {
        return Ok(None);
    };
    let bad = || ConditionError::BadIndex(sym.to_string());
    let idx: Vec<usize> = rest
        .strip_suffix(']')
        .ok_or_else(bad)?
        .split(',')
        .map(|s| s.parse::<usize>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    if idx.len() != 3 || idx.iter().any(|&x| x == 0 || x > dim) {
        return Err(bad());
    }
    let (mut i, mut j, k) = (idx[0] - 1, idx[1] - 1, idx[2] - 1);
    let mut sign = 1;
    if i > j {
        core::mem::swap(&mut i, &mut j);
        if op == Op::Bracket {
            sign = -1;
        }
    }
    if op == Op::Bracket && i == j {
        return Ok(Some((None, 0)));
    }
    Ok(Some((Some(ConstRef { op, i, j, k }), sign)))
}

/// Polynomial conditions on the canonical constants of an `n`-dimensional
/// pair. With `zero_otherwise`, every constant not mentioned in an equation
/// or in `free` must vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedConditionSet {
    dim: usize,
    equations: Vec<MPoly>,
    text: Vec<String>,
    mentioned: BTreeSet<ConstRef>,
    free: BTreeSet<ConstRef>,
    params: BTreeSet<String>,
    zero_otherwise: bool,
}

impl ClosedConditionSet {
    /// Parses equations such as `c'[3,1,3] = -c'[1,3,3] = c'[1,2,2]` (chains
    /// give one equation per adjacent pair). Non-canonical references are
    /// normalized by symmetry; other identifiers become parameters.
    pub fn parse<S: AsRef<str>>(dim: usize, eqs: &[S], free: &[S], zero_otherwise: bool) -> Result<Self, ConditionError> {
        let mut set = ClosedConditionSet {
            dim,
            equations: Vec::new(),
            text: Vec::new(),
            mentioned: BTreeSet::new(),
            free: BTreeSet::new(),
            params: BTreeSet::new(),
            zero_otherwise,
        };
        for f in free {
            let f = f.as_ref().trim();
            match parse_ref(f, dim)? {
                Some((Some(r), _)) => {
                    set.free.insert(r);
                    set.mentioned.insert(r);
                }
                Some((None, _)) => {}
                None => return Err(ConditionError::BadIndex(f.to_string())),
            }
        }
        for e in eqs {
            let e = e.as_ref();
            set.text.push(e.to_string());
            let sides: Vec<&str> = e.split('=').collect();
            if sides.len() < 2 {
                return Err(ConditionError::NotAnEquation(e.to_string()));
            }
            let mut polys = Vec::with_capacity(sides.len());
            for side in sides {
                let expr = Expr::parse(side.trim())?;
                for s in expr.symbols() {
                    match parse_ref(&s, dim)? {
                        Some((Some(r), _)) => {
                            set.mentioned.insert(r);
                        }
                        Some((None, _)) => {}
                        None => {
                            set.params.insert(s);
                        }
                    }
                }
                let poly: MPoly = expr.eval(&BTreeMap::new(), &|s: &str| match parse_ref(s, dim) {
                    Ok(Some((Some(r), sign))) => Some(MPoly::var(&r.to_string()) * MPoly::constant(Rational::from(sign))),
                    Ok(Some((None, _))) => Some(MPoly::zero()),
                    Ok(None) => Some(MPoly::var(s)),
                    Err(_) => None,
                })?;
                polys.push(poly);
            }
            for w in polys.windows(2) {
                let d = w[0].clone() - w[1].clone();
                if !d.is_zero() {
                    set.equations.push(d);
                }
            }
        }
        Ok(set)
    }

    /// The whole space: no equations, no vanishing clause.
    pub fn whole_space(dim: usize) -> Self {
        Self::parse::<&str>(dim, &[], &[], false).expect("empty set parses")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equations(&self) -> &[MPoly] {
        &self.equations
    }

    pub fn text(&self) -> &[String] {
        &self.text
    }

    pub fn params(&self) -> &BTreeSet<String> {
        &self.params
    }

    pub fn zero_otherwise(&self) -> bool {
        self.zero_otherwise
    }

    pub fn mentioned(&self) -> &BTreeSet<ConstRef> {
        &self.mentioned
    }

    /// Substitutes a value for a parameter.
    pub fn bind(&self, name: &str, value: &Rational) -> Self {
        let mut assign = BTreeMap::new();
        assign.insert(name.to_string(), value.clone());
        let mut out = self.clone();
        out.equations = self
            .equations
            .iter()
            .map(|e| e.substitute(&assign))
            .filter(|e| !e.is_zero())
            .collect();
        out.params.remove(name);
        out
    }

    /// The constants that may be nonzero on the set.
    fn unknowns(&self) -> Vec<ConstRef> {
        if self.zero_otherwise {
            self.mentioned.iter().copied().collect()
        } else {
            ConstRef::all(self.dim)
        }
    }

    pub fn satisfies(&self, p: &BilinearPair<Rational>) -> Result<bool, ConditionError> {
        if p.dim() != self.dim {
            return Err(ConditionError::DimensionMismatch { expected: self.dim, found: p.dim() });
        }
        if let Some(s) = self.params.iter().next() {
            return Err(ConditionError::UnboundParam(s.clone()));
        }
        if self.zero_otherwise {
            for r in ConstRef::all(self.dim) {
                if !self.mentioned.contains(&r) && !r.value(p).is_zero() {
                    return Ok(false);
                }
            }
        }
        let values: BTreeMap<String, Rational> = ConstRef::all(self.dim)
            .into_iter()
            .map(|r| (r.to_string(), r.value(p)))
            .collect();
        for e in &self.equations {
            let v = e.eval(&|s| values.get(s).cloned()).expect("all constants bound");
            if !v.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A random point of the set: free choices are drawn at random and any
    /// equation left with a single linear unknown is solved for it.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Option<BilinearPair<Rational>> {
        if !self.params.is_empty() {
            return None;
        }
        let unknowns = self.unknowns();
        'attempt: for _ in 0..50 {
            let mut assign: BTreeMap<String, Rational> = BTreeMap::new();
            let mut order: Vec<ConstRef> = unknowns.iter().filter(|r| self.free.contains(r)).copied().collect();
            order.extend(unknowns.iter().filter(|r| !self.free.contains(r)));
            loop {
                let reduced: Vec<MPoly> = self.equations.iter().map(|e| e.substitute(&assign)).collect();
                if reduced.iter().any(|e| e.as_constant().is_some_and(|c| !c.is_zero())) {
                    continue 'attempt;
                }
                let solvable = reduced.iter().find_map(|e| {
                    let vars = e.variables();
                    let v = vars.iter().next()?;
                    (vars.len() == 1).then(|| e.solve_linear(v).map(|x| (v.clone(), x)))?
                });
                if let Some((v, x)) = solvable {
                    assign.insert(v, x);
                    continue;
                }
                match order.iter().find(|r| !assign.contains_key(&r.to_string())) {
                    Some(r) => {
                        assign.insert(r.to_string(), random_rational(rng, false));
                    }
                    None => break,
                }
            }
            let mut p = BilinearPair::zero(self.dim);
            for r in &unknowns {
                let v = assign.get(&r.to_string()).cloned().unwrap_or_else(Rational::zero);
                p.op_mut(r.op).set(r.i, r.j, r.k, v).expect("canonical");
            }
            if self.satisfies(&p) == Ok(true) {
                return Some(p);
            }
        }
        None
    }
}

impl fmt::Display for ClosedConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, e) in self.text.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        if !self.free.is_empty() {
            let names: Vec<String> = self.free.iter().map(|r| r.to_string()).collect();
            write!(f, "; free {}", names.join(", "))?;
        }
        if self.zero_otherwise {
            write!(f, "; zero otherwise")?;
        }
        write!(f, "}}")
    }
}

/// Random invertible lower-triangular matrix in the column convention
/// (`g(e_i)` only involves `e_i, ..., e_n`).
pub fn random_lower_triangular<R: Rng>(rng: &mut R, n: usize) -> Matrix<Rational> {
    let vals: Vec<Rational> = (0..n * n).map(|x| random_rational(rng, x % (n + 1) == 0)).collect();
    Matrix::from_fn(n, n, |r, c| if r >= c { vals[r * n + c].clone() } else { Rational::zero() })
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix<Rational> {
    loop {
        let vals: Vec<Rational> = (0..n * n).map(|_| random_rational(rng, false)).collect();
        let m = Matrix::from_fn(n, n, |r, c| vals[r * n + c].clone());
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub point: BilinearPair<Rational>,
    pub g: Matrix<Rational>,
    pub image: BilinearPair<Rational>,
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub trials: usize,
    /// Trials for which a point of the set could be drawn.
    pub sampled: usize,
    pub violations: Vec<Violation>,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.sampled == self.trials
    }
}

/// Draws points of `set`, moves them by random lower-triangular matrices
/// and re-tests membership.
pub fn sampled_stability(set: &ClosedConditionSet, trials: usize, seed: u64) -> StabilityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = StabilityReport { trials, sampled: 0, violations: Vec::new() };
    for _ in 0..trials {
        let Some(point) = set.sample(&mut rng) else { continue };
        report.sampled += 1;
        let g = random_lower_triangular(&mut rng, set.dim);
        let image = apply_basis_change(&g, &point).expect("invertible");
        if set.satisfies(&image) != Ok(true) {
            report.violations.push(Violation { point, g, image });
        }
    }
    report
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Looks for an invertible `g` with `g * target` in `set`: identity,
/// permutations, then `trials` random lower-triangular, upper-triangular
/// and dense matrices. A hit refutes the separation; `None` is only
/// heuristic evidence.
pub fn heuristic_orbit_search(
    set: &ClosedConditionSet,
    target: &BilinearPair<Rational>,
    trials: usize,
    seed: u64,
) -> Option<Matrix<Rational>> {
    let n = target.dim();
    let hit = |g: &Matrix<Rational>| {
        let image = apply_basis_change(g, target).ok()?;
        (set.satisfies(&image) == Ok(true)).then(|| g.clone())
    };
    if n <= 6 {
        for p in permutations(n) {
            let g = Matrix::from_fn(n, n, |r, c| if p[c] == r { Rational::one() } else { Rational::zero() });
            if let Some(g) = hit(&g) {
                return Some(g);
            }
        }
    } else if let Some(g) = hit(&Matrix::identity(n)) {
        return Some(g);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let g = match t % 3 {
            0 => random_lower_triangular(&mut rng, n),
            1 => random_lower_triangular(&mut rng, n).transpose(),
            _ => random_invertible(&mut rng, n),
        };
        if let Some(g) = hit(&g) {
            return Some(g);
        }
    }
    None
}

/// Whether every listed source lies in the set.
pub fn self_consistency(set: &ClosedConditionSet, sources: &[BilinearPair<Rational>]) -> bool {
    sources.iter().all(|p| set.satisfies(p) == Ok(true))
}

/// Compact rendering of a violation for reports.
pub fn describe_violation(v: &Violation) -> String {
    format!("point {} moved by {} to {}", v.point, v.g, v.image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, CatalogKey, Family};

    fn pair(key: &str) -> BilinearPair<Rational> {
        build(&key.parse::<CatalogKey>().unwrap()).unwrap()
    }

    fn p39_row() -> ClosedConditionSet {
        ClosedConditionSet::parse(
            3,
            &["c[2,1,2] = c[1,2,2] = c[1,3,3] = c[3,1,3] = c[1,1,1]", "c[2,1,3] = c[1,2,3]", "c[1,1,1]*c[1,2,3] = c[2,2,3]*c[1,1,2]"],
            &["c[1,1,1]", "c[1,1,2]", "c[1,1,3]", "c[2,2,3]"],
            true,
        )
        .unwrap()
    }

    fn p35_row() -> ClosedConditionSet {
        ClosedConditionSet::parse(
            3,
            &[
                "c'[2,1,1] = -c'[1,2,1]",
                "c'[2,1,2] = -c'[1,2,2]",
                "c'[2,1,3] = -c'[1,2,3]",
                "c'[3,1,1] = -c'[1,3,1]",
                "c'[3,1,2] = -c'[1,3,2]",
                "c'[3,1,3] = -c'[1,3,3] = c'[1,2,2]",
                "c'[3,2,2] = -c'[2,3,2] = c'[1,3,1]",
                "c'[3,2,3] = -c'[2,3,3] = -c'[1,2,1]",
            ],
            &[],
            true,
        )
        .unwrap()
    }

    fn p316_row() -> ClosedConditionSet {
        ClosedConditionSet::parse(
            3,
            &["c[2,1,3] = c[1,2,3]", "c'[2,1,3] = -c'[1,2,3] = -alpha*c[1,2,3]"],
            &["c[1,1,3]"],
            true,
        )
        .unwrap()
    }

    #[test]
    fn membership() {
        let r = p39_row();
        assert_eq!(r.satisfies(&pair("P3.9")), Ok(true));
        assert_eq!(r.satisfies(&pair("P3.19")), Ok(false));
        assert_eq!(r.satisfies(&BilinearPair::zero(3)), Ok(true));
        assert_eq!(p35_row().satisfies(&pair("P3.5")), Ok(true));
        assert!(matches!(r.satisfies(&BilinearPair::zero(4)), Err(ConditionError::DimensionMismatch { .. })));
        assert!(matches!(p316_row().satisfies(&pair("P3.2")), Err(ConditionError::UnboundParam(_))));
    }

    #[test]
    fn mentioned_partners_stay_free() {
        // `c'[2,1,3] = -c'[1,2,3]` is trivial but frees c'[1,2,3].
        let r = p35_row();
        assert_eq!(r.equations().len(), 3);
        assert!(r.mentioned().contains(&ConstRef { op: Op::Bracket, i: 0, j: 1, k: 2 }));
    }

    #[test]
    fn stability() {
        let rep = sampled_stability(&p35_row(), 200, 42);
        assert!(rep.passed(), "{:?}", rep.violations.first().map(describe_violation));
        let rep = sampled_stability(&ClosedConditionSet::whole_space(3), 20, 42);
        assert!(rep.passed());
        let rep = sampled_stability(&p39_row(), 200, 42);
        assert!(rep.passed(), "{:?}", rep.violations.first().map(describe_violation));
    }

    #[test]
    fn mutated_set_is_not_stable() {
        // Without its partner c[1,3,3] = c[1,1,1], c[1,3,3] is forced to zero
        // while lower-triangular moves make it nonzero.
        let r = ClosedConditionSet::parse(
            3,
            &["c[2,1,2] = c[1,2,2] = c[1,1,1]", "c[2,1,3] = c[1,2,3]", "c[1,1,1]*c[1,2,3] = c[2,2,3]*c[1,1,2]"],
            &["c[1,1,1]", "c[1,1,2]", "c[1,1,3]", "c[2,2,3]"],
            true,
        )
        .unwrap();
        assert!(!sampled_stability(&r, 200, 42).violations.is_empty());
    }

    #[test]
    fn orbit_search() {
        for a in [0, 1, -1, 2] {
            let r = p316_row().bind("alpha", &Rational::from(a));
            assert!(self_consistency(&r, &[build(&CatalogKey::with_alpha(Family::P3(16), Rational::from(a))).unwrap()]));
            assert_eq!(heuristic_orbit_search(&r, &pair("P3.2"), 1000, 42), None);
            assert_eq!(heuristic_orbit_search(&r, &pair("P3.4(alpha=1)"), 1000, 42), None);
        }
        let r = p39_row();
        assert_eq!(heuristic_orbit_search(&r, &pair("P3.9"), 10, 42), Some(Matrix::identity(3)));
        assert_eq!(heuristic_orbit_search(&r, &pair("P3.19"), 1000, 42), None);
    }

    #[test]
    fn consistency_examples() {
        let r = ClosedConditionSet::parse(
            3,
            &["c[2,1,2] = c[1,2,2] = c[1,1,1]", "c[2,1,3] = c[1,2,3]"],
            &["c[1,1,2]", "c[1,1,3]"],
            true,
        )
        .unwrap();
        assert!(self_consistency(&r, &[pair("P3.11")]));
        assert!(self_consistency(&r, &[]));
        assert!(!self_consistency(&r, &[pair("P3.7")]));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(ClosedConditionSet::parse(3, &["c[1,2] = 0"], &[], true), Err(ConditionError::BadIndex(_))));
        assert!(matches!(ClosedConditionSet::parse(3, &["c[1,2,4] = 0"], &[], true), Err(ConditionError::BadIndex(_))));
        assert!(matches!(ClosedConditionSet::parse(3, &["c[1,2,3]"], &[], true), Err(ConditionError::NotAnEquation(_))));
        assert!(matches!(ClosedConditionSet::parse(3, &["c[1,2,3] = +"], &[], true), Err(ConditionError::Expr(_))));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        #[test]
        fn index_order_does_not_matter(vals in proptest::collection::vec(-3i64..3, 18)) {
            // Writing each constant through its symmetric partner gives the same pair.
            let mut a = BilinearPair::zero(3);
            let mut b = BilinearPair::zero(3);
            let mut n = 0;
            for (i, j) in canonical_pairs(3, Symmetry::Symmetric) {
                for k in 0..3 {
                    if n < vals.len() {
                        a.dot.set(i, j, k, Rational::from(vals[n])).unwrap();
                        b.dot.set(j, i, k, Rational::from(vals[n])).unwrap();
                    }
                    n += 1;
                }
            }
            for (i, j) in canonical_pairs(3, Symmetry::Antisymmetric) {
                for k in 0..3 {
                    let v = Rational::from(vals[(n * 7) % vals.len()]);
                    a.bracket.set(i, j, k, v.clone()).unwrap();
                    b.bracket.set(j, i, k, -v).unwrap();
                    n += 1;
                }
            }
            for r in [p39_row(), p35_row()] {
                proptest::prop_assert_eq!(r.satisfies(&a), r.satisfies(&b));
            }
        }
    }
}
