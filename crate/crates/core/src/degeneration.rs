//! Degenerations `lim_{t -> 0} g(t) * p = q` checked exactly over the field
//! of rational functions in `t`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{apply_basis_change, is_poisson, AlgebraError, BilinearPair, Op};
use crate::arith::{Field, Matrix, RatFunc};
use crate::catalog::{build_with, random_rational, CatalogError, Family};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegenerationError {
    /// `det g(t)` is the zero function.
    SingularFamily,
    /// A supplied inverse does not invert `g`.
    BadInverse,
    DimensionMismatch { expected: usize, found: usize },
    Catalog(CatalogError),
}

impl fmt::Display for DegenerationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenerationError::SingularFamily => write!(f, "basis change is singular over the function field"),
            DegenerationError::BadInverse => write!(f, "supplied inverse does not invert the basis change"),
            DegenerationError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            DegenerationError::Catalog(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for DegenerationError {}

impl From<CatalogError> for DegenerationError {
    fn from(e: CatalogError) -> Self {
        DegenerationError::Catalog(e)
    }
}

/// An invertible matrix over `K(t)` in the column convention: column `i`
/// holds `g(t)(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamBasisChange<K: Field> {
    g: Matrix<RatFunc<K>>,
    g_inv: Matrix<RatFunc<K>>,
}

impl<K: Field> ParamBasisChange<K> {
    pub fn from_columns(g: Matrix<RatFunc<K>>) -> Result<Self, DegenerationError> {
        if !g.is_square() {
            return Err(DegenerationError::DimensionMismatch { expected: g.rows(), found: g.cols() });
        }
        let g_inv = g.inverse().map_err(|_| DegenerationError::SingularFamily)?;
        Ok(ParamBasisChange { g, g_inv })
    }

    /// From the images `g_i(t) = g(t)(e_i)` listed as rows.
    pub fn from_images(rows: Vec<Vec<RatFunc<K>>>) -> Result<Self, DegenerationError> {
        Self::from_columns(Matrix::from_rows(rows).transpose())
    }

    /// From images of `g` and of `g^-1`; the pair must be mutually inverse.
    pub fn from_images_with_inverse(
        rows: Vec<Vec<RatFunc<K>>>,
        inv_rows: Vec<Vec<RatFunc<K>>>,
    ) -> Result<Self, DegenerationError> {
        let g = Matrix::from_rows(rows).transpose();
        let g_inv = Matrix::from_rows(inv_rows).transpose();
        if !g.is_square() || g.rows() != g_inv.rows() || !g_inv.is_square() {
            return Err(DegenerationError::DimensionMismatch { expected: g.rows(), found: g_inv.rows() });
        }
        let prod: Matrix<RatFunc<K>> = &g * &g_inv;
        if prod != Matrix::identity(g.rows()) {
            return Err(DegenerationError::BadInverse);
        }
        Ok(ParamBasisChange { g, g_inv })
    }

    pub fn identity(n: usize) -> Self {
        ParamBasisChange { g: Matrix::identity(n), g_inv: Matrix::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    pub fn matrix(&self) -> &Matrix<RatFunc<K>> {
        &self.g
    }

    pub fn inverse(&self) -> &Matrix<RatFunc<K>> {
        &self.g_inv
    }

    /// `g(t0)`, or `None` if an entry is undefined there or the value is singular.
    pub fn eval(&self, t0: &K) -> Option<Matrix<K>> {
        let m = self.g.try_map(|x| x.eval(t0).ok_or(())).ok()?;
        (!m.determinant().is_zero()).then_some(m)
    }
}

/// `g(t) * p` with exact rational-function constants.
pub fn transform<K: Field>(
    g: &ParamBasisChange<K>,
    p: &BilinearPair<RatFunc<K>>,
) -> Result<BilinearPair<RatFunc<K>>, DegenerationError> {
    if g.dim() != p.dim() {
        return Err(DegenerationError::DimensionMismatch { expected: p.dim(), found: g.dim() });
    }
    Ok(p.transform(&g.g, &g.g_inv))
}

pub fn lift<K: Field>(p: &BilinearPair<K>) -> BilinearPair<RatFunc<K>> {
    p.map(|c| RatFunc::constant(c.clone()))
}

/// A structure constant without a limit at `t = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitPole {
    pub op: Op,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// Valuation of the constant (negative).
    pub order: i32,
    pub expansion: String,
}

impl fmt::Display for LimitPole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} constant ({},{},{}) has a pole of order {}: {}",
            op_name(self.op),
            self.i + 1,
            self.j + 1,
            self.k + 1,
            -self.order,
            self.expansion
        )
    }
}

fn op_name(op: Op) -> &'static str {
    match op {
        Op::Dot => "dot",
        Op::Bracket => "bracket",
    }
}

const OPS: [Op; 2] = [Op::Dot, Op::Bracket];

/// Entrywise limit at `t = 0`.
pub fn limit_pair<K: Field>(q: &BilinearPair<RatFunc<K>>) -> Result<BilinearPair<K>, LimitPole> {
    let mut out = BilinearPair::zero(q.dim());
    for op in OPS {
        for ((i, j, k), c) in q.op(op).entries() {
            let v = c.limit_at_zero().map_err(|e| LimitPole {
                op,
                i,
                j,
                k,
                order: e.order,
                expansion: c.expansion_string(3),
            })?;
            out.op_mut(op).set(i, j, k, v).expect("canonical index");
        }
    }
    Ok(out)
}

/// A limit constant that differs from the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch<K: Field> {
    pub op: Op,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub got: K,
    pub want: K,
    pub expansion: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<K: Field> {
    Verified,
    Pole(LimitPole),
    WrongLimit { limit: BilinearPair<K>, mismatches: Vec<Mismatch<K>> },
    /// At `t0` the symbolic transform disagrees with the direct action, or
    /// the image is not Poisson although the source is.
    SanityFailed { t0: K },
}

impl<K: Field> Outcome<K> {
    pub fn is_verified(&self) -> bool {
        matches!(self, Outcome::Verified)
    }
}

impl<K: Field> fmt::Display for Outcome<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Verified => write!(f, "verified"),
            Outcome::Pole(p) => write!(f, "{p}"),
            Outcome::WrongLimit { limit, mismatches } => {
                write!(f, "limit {limit} differs from target")?;
                for m in mismatches {
                    write!(
                        f,
                        "; {} ({},{},{}) got {} want {} [{}]",
                        op_name(m.op),
                        m.i + 1,
                        m.j + 1,
                        m.k + 1,
                        m.got,
                        m.want,
                        m.expansion
                    )?;
                }
                Ok(())
            }
            Outcome::SanityFailed { t0 } => write!(f, "evaluation check failed at t = {t0}"),
        }
    }
}

/// Whether evaluating `g(t) * p(t)` at `t0` equals `g(t0) * p(t0)`, and the
/// image stays Poisson when `p(t0)` is. `None` when `t0` is not admissible.
pub fn evaluation_agrees<K: Field>(
    g: &ParamBasisChange<K>,
    p: &BilinearPair<RatFunc<K>>,
    image: &BilinearPair<RatFunc<K>>,
    t0: &K,
) -> Option<bool> {
    let g0 = g.eval(t0)?;
    let p0 = p.try_map(|c| c.eval(t0).ok_or(())).ok()?;
    let img0 = image.try_map(|c| c.eval(t0).ok_or(())).ok()?;
    let direct = apply_basis_change(&g0, &p0).ok()?;
    Some(direct == img0 && (!is_poisson(&p0) || is_poisson(&img0)))
}

fn compare<K: Field>(
    image: &BilinearPair<RatFunc<K>>,
    target: &BilinearPair<K>,
) -> Outcome<K> {
    let limit = match limit_pair(image) {
        Ok(l) => l,
        Err(p) => return Outcome::Pole(p),
    };
    if limit == *target {
        return Outcome::Verified;
    }
    let mut mismatches = Vec::new();
    for op in OPS {
        for (i, j) in limit.op(op).canonical_pairs() {
            for k in 0..limit.dim() {
                let (got, want) = (limit.op(op).get(i, j, k), target.op(op).get(i, j, k));
                if got != want {
                    let expansion = image.op(op).get(i, j, k).expansion_string(3);
                    mismatches.push(Mismatch { op, i, j, k, got, want, expansion });
                }
            }
        }
    }
    Outcome::WrongLimit { limit, mismatches }
}

const SANITY_POINTS: usize = 3;
const SANITY_SEED: u64 = 0x5eed;

fn sanity<K: Field>(
    g: &ParamBasisChange<K>,
    p: &BilinearPair<RatFunc<K>>,
    image: &BilinearPair<RatFunc<K>>,
) -> Option<K> {
    let mut rng = ChaCha8Rng::seed_from_u64(SANITY_SEED);
    let mut checked = 0;
    for _ in 0..100 {
        if checked == SANITY_POINTS {
            break;
        }
        let t0 = K::from_rational(&random_rational(&mut rng, true));
        match evaluation_agrees(g, p, image, &t0) {
            Some(true) => checked += 1,
            Some(false) => return Some(t0),
            None => {}
        }
    }
    None
}

/// Checks `lim_{t -> 0} g(t) * source = target` exactly, plus an evaluation
/// cross-check at a few rational points.
pub fn verify_degeneration<K: Field>(
    source: &BilinearPair<K>,
    g: &ParamBasisChange<K>,
    target: &BilinearPair<K>,
) -> Result<Outcome<K>, DegenerationError> {
    verify_parametrized(&lift(source), g, target)
}

/// Same as [`verify_degeneration`] for a source whose constants already
/// depend on `t`.
pub fn verify_parametrized<K: Field>(
    source: &BilinearPair<RatFunc<K>>,
    g: &ParamBasisChange<K>,
    target: &BilinearPair<K>,
) -> Result<Outcome<K>, DegenerationError> {
    if source.dim() != target.dim() {
        return Err(DegenerationError::DimensionMismatch { expected: source.dim(), found: target.dim() });
    }
    let image = transform(g, source)?;
    if let Some(t0) = sanity(g, source, &image) {
        return Ok(Outcome::SanityFailed { t0 });
    }
    Ok(compare(&image, target))
}

/// `lim_{t -> 0} g(t) * P(f(t)) = target` for a one-parameter family `P`.
#[derive(Clone, Debug)]
pub struct FamilyWitness<K: Field> {
    pub family: Family,
    pub n: usize,
    pub f: RatFunc<K>,
    pub g: ParamBasisChange<K>,
    pub target: BilinearPair<K>,
}

pub fn verify_family_degeneration<K: Field>(w: &FamilyWitness<K>) -> Result<Outcome<K>, DegenerationError> {
    let source = build_with(w.family, w.n, Some(w.f.clone()))?;
    verify_parametrized(&source, &w.g, &w.target)
}

impl From<AlgebraError> for DegenerationError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::DimensionMismatch { expected, found } => DegenerationError::DimensionMismatch { expected, found },
            _ => DegenerationError::SingularFamily,
        }
    }
}
