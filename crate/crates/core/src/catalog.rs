//! Named algebras: the three-dimensional commutative associative, Lie and
//! Poisson lists, the null-filiform and filiform families in dimension `n`,
//! automorphism templates and the dimension-three coincidences.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::algebra::{BilinearPair, StructureConstants, Symmetry};
use crate::arith::mpoly::MPoly;
use crate::arith::{Cyclo, Field, Matrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Commutative associative, `A1..A12`.
    A(u8),
    /// Lie, `L3.1..L3.5`.
    L3(u8),
    /// Poisson, `P3.1..P3.20`.
    P3(u8),
    /// Null-filiform associative `e_i e_j = e_{i+j}`, `i + j <= n`.
    Mu0,
    Mu11,
    Mu12,
    /// Poisson with null-filiform dot.
    P0,
    /// Poisson with filiform dot, `P1.1..P1.5`.
    P1(u8),
}

impl Family {
    /// Whether the family carries the parameter `alpha`.
    pub fn has_alpha(self) -> bool {
        matches!(self, Family::L3(4) | Family::P3(4) | Family::P3(16))
    }

    pub fn is_parametric_dim(self) -> bool {
        matches!(self, Family::Mu0 | Family::Mu11 | Family::Mu12 | Family::P0 | Family::P1(_))
    }

    fn min_dim(self) -> usize {
        match self {
            Family::Mu0 | Family::P0 => 1,
            Family::Mu11 | Family::Mu12 | Family::P1(_) => 4,
            _ => 3,
        }
    }

    pub fn all_three_dim() -> Vec<Family> {
        let mut out: Vec<Family> = (1..=12).map(Family::A).collect();
        out.extend((1..=5).map(Family::L3));
        out.extend((1..=20).map(Family::P3));
        out
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A(i) => write!(f, "A{i}"),
            Family::L3(i) => write!(f, "L3.{i}"),
            Family::P3(i) => write!(f, "P3.{i}"),
            Family::Mu0 => f.write_str("mu0"),
            Family::Mu11 => f.write_str("mu11"),
            Family::Mu12 => f.write_str("mu12"),
            Family::P0 => f.write_str("P0"),
            Family::P1(i) => write!(f, "P1.{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogError {
    UnknownKey(String),
    MissingParam { key: String, param: &'static str },
    BadDimension { key: String, n: usize, min: usize },
    BadParam { key: String, param: String },
    NoTemplate(String),
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::UnknownKey(k) => write!(f, "unknown catalog key `{k}`"),
            CatalogError::MissingParam { key, param } => write!(f, "`{key}` needs parameter `{param}`"),
            CatalogError::BadDimension { key, n, min } => {
                write!(f, "`{key}` needs n >= {min}, got n = {n}")
            }
            CatalogError::BadParam { key, param } => write!(f, "`{key}` does not take parameter `{param}`"),
            CatalogError::NoTemplate(k) => write!(f, "no automorphism template recorded for `{k}`"),
        }
    }
}

impl core::error::Error for CatalogError {}

/// A family name with its dimension and scalar parameters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CatalogKey {
    pub family: Family,
    pub n: usize,
    pub params: BTreeMap<String, Rational>,
}

impl CatalogKey {
    pub fn new(family: Family) -> Self {
        CatalogKey {
            family,
            n: 3,
            params: BTreeMap::new(),
        }
    }

    pub fn with_n(family: Family, n: usize) -> Self {
        CatalogKey {
            family,
            n,
            params: BTreeMap::new(),
        }
    }

    pub fn with_alpha(family: Family, alpha: Rational) -> Self {
        let mut k = Self::new(family);
        k.params.insert("alpha".to_string(), alpha);
        k
    }

    pub fn alpha(&self) -> Option<&Rational> {
        self.params.get("alpha")
    }

    fn validate(&self) -> Result<(), CatalogError> {
        let name = self.to_string();
        if self.family.is_parametric_dim() {
            let min = self.family.min_dim();
            if self.n < min {
                return Err(CatalogError::BadDimension { key: name, n: self.n, min });
            }
        } else if self.n != 3 {
            return Err(CatalogError::BadDimension { key: name, n: self.n, min: 3 });
        }
        for p in self.params.keys() {
            if !(p == "alpha" && self.family.has_alpha()) {
                return Err(CatalogError::BadParam { key: name, param: p.clone() });
            }
        }
        if self.family.has_alpha() && self.alpha().is_none() {
            return Err(CatalogError::MissingParam { key: name, param: "alpha" });
        }
        Ok(())
    }
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        let mut args: Vec<String> = Vec::new();
        if self.family.is_parametric_dim() {
            args.push(format!("n={}", self.n));
        }
        for (k, v) in &self.params {
            args.push(format!("{k}={v}"));
        }
        if !args.is_empty() {
            write!(f, "({})", args.join(","))?;
        }
        Ok(())
    }
}

fn parse_family(name: &str) -> Option<Family> {
    let norm: String = name.replace('_', ".");
    let idx = |s: &str, max: u8| s.parse::<u8>().ok().filter(|i| (1..=max).contains(i));
    match norm.as_str() {
        "mu0" => return Some(Family::Mu0),
        "mu11" | "mu1.1" => return Some(Family::Mu11),
        "mu12" | "mu1.2" => return Some(Family::Mu12),
        "P0" => return Some(Family::P0),
        _ => {}
    }
    if let Some(r) = norm.strip_prefix("P3.") {
        return idx(r, 20).map(Family::P3);
    }
    if let Some(r) = norm.strip_prefix("L3.") {
        return idx(r, 5).map(Family::L3);
    }
    if let Some(r) = norm.strip_prefix("P1.") {
        return idx(r, 5).map(Family::P1);
    }
    if let Some(r) = norm.strip_prefix("P1") {
        return idx(r, 5).map(Family::P1);
    }
    if let Some(r) = norm.strip_prefix('A') {
        return idx(r, 12).map(Family::A);
    }
    None
}

impl FromStr for Family {
    type Err = CatalogError;

    /// A bare family name such as `P3.16`, `P1.4`, `mu11` or `A7`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_family(s.trim()).ok_or_else(|| CatalogError::UnknownKey(s.to_string()))
    }
}

impl FromStr for CatalogKey {
    type Err = CatalogError;

    /// `P3.16(alpha=5)`, `P0(n=7)`, `mu12(n=5)`, `A7`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let unknown = || CatalogError::UnknownKey(s.to_string());
        let (name, args) = match s.find('(') {
            None => (s, ""),
            Some(p) => {
                let inner = s[p + 1..].strip_suffix(')').ok_or_else(unknown)?;
                (&s[..p], inner)
            }
        };
        let family = parse_family(name.trim()).ok_or_else(unknown)?;
        let mut key = CatalogKey::new(family);
        let mut saw_n = false;
        for arg in args.split(',').map(str::trim).filter(|a| !a.is_empty()) {
            let (k, v) = arg.split_once('=').ok_or_else(unknown)?;
            match k.trim() {
                "n" => {
                    key.n = v.trim().parse().map_err(|_| unknown())?;
                    saw_n = true;
                }
                other => {
                    let q: Rational = v.trim().parse().map_err(|_| unknown())?;
                    let name = if other == "a" || other == "beta" { "alpha" } else { other };
                    key.params.insert(name.to_string(), q);
                }
            }
        }
        if family.is_parametric_dim() && !saw_n {
            return Err(CatalogError::MissingParam { key: s.to_string(), param: "n" });
        }
        key.validate()?;
        Ok(key)
    }
}

type Entry = (usize, usize, usize, i64);

fn three_dim_tables(family: Family) -> Option<(&'static [Entry], &'static [Entry])> {
    const A2: &[Entry] = &[(1, 1, 2, 1)];
    const A3: &[Entry] = &[(1, 2, 3, 1)];
    const A4: &[Entry] = &[(1, 1, 2, 1), (1, 2, 3, 1)];
    const A5: &[Entry] = &[(1, 1, 1, 1), (2, 2, 2, 1), (3, 3, 3, 1)];
    const A6: &[Entry] = &[(1, 1, 1, 1), (2, 2, 2, 1), (2, 3, 3, 1)];
    const A7: &[Entry] = &[(1, 1, 1, 1), (1, 2, 2, 1), (1, 3, 3, 1)];
    const A8: &[Entry] = &[(1, 1, 1, 1), (1, 2, 2, 1), (1, 3, 3, 1), (2, 2, 3, 1)];
    const A9: &[Entry] = &[(1, 1, 1, 1), (2, 2, 2, 1)];
    const A10: &[Entry] = &[(1, 1, 1, 1), (1, 2, 2, 1)];
    const A11: &[Entry] = &[(1, 1, 1, 1)];
    const A12: &[Entry] = &[(1, 1, 1, 1), (2, 2, 3, 1)];
    const L2: &[Entry] = &[(1, 2, 3, 1)];
    const L3: &[Entry] = &[(1, 2, 2, 1), (1, 3, 2, 1), (1, 3, 3, 1)];
    const L5: &[Entry] = &[(1, 2, 3, 1), (1, 3, 1, -2), (2, 3, 2, 2)];
    const E: &[Entry] = &[];
    Some(match family {
        Family::A(1) => (E, E),
        Family::A(2) => (A2, E),
        Family::A(3) => (A3, E),
        Family::A(4) => (A4, E),
        Family::A(5) => (A5, E),
        Family::A(6) => (A6, E),
        Family::A(7) => (A7, E),
        Family::A(8) => (A8, E),
        Family::A(9) => (A9, E),
        Family::A(10) => (A10, E),
        Family::A(11) => (A11, E),
        Family::A(12) => (A12, E),
        Family::L3(1) | Family::P3(1) => (E, E),
        Family::L3(2) | Family::P3(2) => (E, L2),
        Family::L3(3) | Family::P3(3) => (E, L3),
        Family::L3(5) | Family::P3(5) => (E, L5),
        Family::P3(6) => (A4, E),
        Family::P3(7) => (A5, E),
        Family::P3(8) => (A6, E),
        Family::P3(9) => (A8, E),
        Family::P3(10) => (A9, E),
        Family::P3(11) => (A10, E),
        Family::P3(12) => (A12, E),
        Family::P3(13) => (A2, E),
        Family::P3(14) => (A2, &[(1, 3, 3, 1)]),
        Family::P3(15) => (A2, &[(1, 3, 2, 1)]),
        Family::P3(17) => (A7, E),
        Family::P3(18) => (A7, &[(2, 3, 2, 1)]),
        Family::P3(19) => (A11, E),
        Family::P3(20) => (A11, &[(2, 3, 2, 1)]),
        _ => return None,
    })
}

fn lift<K: Field>(entries: &[Entry]) -> impl Iterator<Item = (usize, usize, usize, K)> + '_ {
    entries.iter().map(|&(i, j, k, v)| (i, j, k, K::from_i64(v)))
}

/// `e_i e_j = e_{i+j}` for `i + j <= top`, plus optionally `e_n e_n = e_{n-1}`.
fn filiform_dot<K: Field>(n: usize, top: usize, square_last: bool) -> StructureConstants<K> {
    let mut dot = StructureConstants::zero(n, Symmetry::Symmetric);
    for i in 1..=n {
        for j in i..=n {
            if i + j <= top {
                dot.set(i - 1, j - 1, i + j - 1, K::one()).expect("in range");
            }
        }
    }
    if square_last {
        dot.set(n - 1, n - 1, n - 2, K::one()).expect("in range");
    }
    dot
}

/// The pair for `family` at dimension `n` with parameter `alpha`, over any
/// field. This skips the `n > 3` restriction on filiform families so that
/// dimension-three coincidences can be checked.
pub fn build_with<K: Field>(family: Family, n: usize, alpha: Option<K>) -> Result<BilinearPair<K>, CatalogError> {
    let name = family.to_string();
    let need_alpha = || {
        alpha.clone().ok_or(CatalogError::MissingParam {
            key: name.clone(),
            param: "alpha",
        })
    };
    let pair = match family {
        Family::L3(4) | Family::P3(4) => {
            let a = need_alpha()?;
            BilinearPair::from_entries(
                3,
                core::iter::empty(),
                [(1, 2, 2, K::one()), (1, 3, 3, a)],
            )
        }
        Family::P3(16) => {
            let a = need_alpha()?;
            BilinearPair::from_entries(3, [(1, 2, 3, K::one())], [(1, 2, 3, a)])
        }
        Family::Mu0 | Family::P0 => Ok(BilinearPair {
            dot: filiform_dot(n, n, false),
            bracket: StructureConstants::zero(n, Symmetry::Antisymmetric),
        }),
        Family::Mu11 | Family::Mu12 | Family::P1(_) => {
            let square_last = matches!(family, Family::Mu12 | Family::P1(4) | Family::P1(5));
            let mut bracket = StructureConstants::zero(n, Symmetry::Antisymmetric);
            match family {
                Family::P1(2) => bracket.set(0, n - 1, n - 1, K::one()).expect("in range"),
                Family::P1(3) | Family::P1(5) => bracket.set(0, n - 1, n - 2, K::one()).expect("in range"),
                _ => {}
            }
            Ok(BilinearPair {
                dot: filiform_dot(n, n - 1, square_last),
                bracket,
            })
        }
        other => {
            let (d, b) = three_dim_tables(other).ok_or(CatalogError::UnknownKey(name.clone()))?;
            BilinearPair::from_entries(3, lift::<K>(d), lift::<K>(b))
        }
    };
    Ok(pair.expect("catalog tables are well formed"))
}

/// The exact table of a catalog entry.
pub fn build(key: &CatalogKey) -> Result<BilinearPair<Rational>, CatalogError> {
    key.validate()?;
    build_with(key.family, key.n, key.alpha().cloned())
}

/// An entry of an automorphism template.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TemplateEntry {
    Poly(MPoly),
    /// `coeff * base^(twice_exp / 2)` with `twice_exp` odd.
    HalfPower { coeff: MPoly, base: String, twice_exp: i64 },
}

impl fmt::Display for TemplateEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TemplateEntry::Poly(p) => write!(f, "{p}"),
            TemplateEntry::HalfPower { coeff, base, twice_exp } => {
                if coeff.as_constant() == Some(Rational::one()) {
                    write!(f, "{base}^({twice_exp}/2)")
                } else {
                    write!(f, "({coeff})*{base}^({twice_exp}/2)")
                }
            }
        }
    }
}

/// A matrix pattern whose admissible instantiations are automorphisms.
///
/// The pattern is in the column convention: column `i` is `phi(e_i)`.
#[derive(Clone, Debug)]
pub struct AutTemplate {
    pub key: CatalogKey,
    pub pattern: Vec<Vec<TemplateEntry>>,
    pub symbols: Vec<String>,
    /// Alternative sets of symbols forced to vanish; empty when unconstrained.
    pub branches: Vec<Vec<String>>,
}

fn sym(i: usize, j: usize) -> String {
    format!("a{i}_{j}")
}

fn poly_product(sc: &StructureConstants<Rational>, x: &[MPoly], y: &[MPoly]) -> Vec<MPoly> {
    let n = sc.dim();
    let mut out = vec![MPoly::zero(); n];
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            if xi.is_zero() || yj.is_zero() {
                continue;
            }
            for (k, slot) in out.iter_mut().enumerate() {
                let c = sc.get(i, j, k);
                if !c.is_zero() {
                    *slot = slot.clone() + xi.clone() * yj.clone() * MPoly::constant(c);
                }
            }
        }
    }
    out
}

impl AutTemplate {
    fn from_polys(key: CatalogKey, pattern: Vec<Vec<MPoly>>, branches: Vec<Vec<String>>) -> Self {
        let mut symbols: Vec<String> = Vec::new();
        for row in &pattern {
            for e in row {
                for v in e.variables() {
                    if !symbols.contains(&v) {
                        symbols.push(v);
                    }
                }
            }
        }
        symbols.sort();
        AutTemplate {
            key,
            pattern: pattern
                .into_iter()
                .map(|r| r.into_iter().map(TemplateEntry::Poly).collect())
                .collect(),
            symbols,
            branches,
        }
    }

    /// Symbols that must be perfect squares for an exact instantiation.
    pub fn square_symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        for row in &self.pattern {
            for e in row {
                if let TemplateEntry::HalfPower { base, .. } = e {
                    if !out.contains(base) {
                        out.push(base.clone());
                    }
                }
            }
        }
        out
    }

    /// Evaluates the pattern; `None` if a half power has no rational root.
    pub fn instantiate(&self, values: &BTreeMap<String, Rational>) -> Option<Matrix<Rational>> {
        let get = |v: &str| values.get(v).cloned();
        let n = self.pattern.len();
        let mut m = Matrix::zeros(n, n);
        for (i, row) in self.pattern.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                m[(i, j)] = match e {
                    TemplateEntry::Poly(p) => p.eval(&get)?,
                    TemplateEntry::HalfPower { coeff, base, twice_exp } => {
                        let root = get(base)?.sqrt_exact()?;
                        coeff.eval(&get)? * root.pow_i(*twice_exp)?
                    }
                };
            }
        }
        Some(m)
    }

    /// A random admissible invertible instantiation.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Matrix<Rational> {
        let squares = self.square_symbols();
        loop {
            let zeroed: &[String] = if self.branches.is_empty() {
                &[]
            } else {
                &self.branches[rng.gen_range(0..self.branches.len())]
            };
            let mut values = BTreeMap::new();
            for s in &self.symbols {
                let v = if zeroed.contains(s) {
                    Rational::zero()
                } else if squares.contains(s) {
                    let r = random_rational(rng, true);
                    r.clone() * r
                } else {
                    random_rational(rng, false)
                };
                values.insert(s.clone(), v);
            }
            for s in &squares {
                if !values.contains_key(s) {
                    let r = random_rational(rng, true);
                    values.insert(s.clone(), r.clone() * r);
                }
            }
            if let Some(m) = self.instantiate(&values) {
                if !m.determinant().is_zero() {
                    return m;
                }
            }
        }
    }
}

/// Numerator in `-5..=5`, denominator in `{1, 2, 3}`.
pub fn random_rational<R: Rng>(rng: &mut R, nonzero: bool) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-5..=5);
        let d: i64 = rng.gen_range(1..=3);
        if nonzero && n == 0 {
            continue;
        }
        return Rational::new(n, d);
    }
}

/// Automorphism template for `A2`, `A3`, `A7`, `A11`, `mu11` or `mu12`.
pub fn aut_template(key: &CatalogKey) -> Result<AutTemplate, CatalogError> {
    key.validate()?;
    let v = |i, j| MPoly::var(&sym(i, j));
    let c = |x: i64| MPoly::constant(Rational::from(x));
    let z = MPoly::zero;
    match key.family {
        Family::A(2) => Ok(AutTemplate::from_polys(
            key.clone(),
            vec![
                vec![v(1, 1), z(), z()],
                vec![v(2, 1), v(1, 1).pow(2), v(2, 3)],
                vec![v(3, 1), z(), v(3, 3)],
            ],
            Vec::new(),
        )),
        Family::A(3) => Ok(AutTemplate::from_polys(
            key.clone(),
            vec![
                vec![v(1, 1), v(1, 2), z()],
                vec![v(2, 1), v(2, 2), z()],
                vec![v(3, 1), v(3, 2), v(1, 1) * v(2, 2) + v(1, 2) * v(2, 1)],
            ],
            vec![vec![sym(1, 2), sym(2, 1)], vec![sym(1, 1), sym(2, 2)]],
        )),
        Family::A(7) | Family::A(11) => Ok(AutTemplate::from_polys(
            key.clone(),
            vec![
                vec![c(1), z(), z()],
                vec![z(), v(2, 2), v(2, 3)],
                vec![z(), v(3, 2), v(3, 3)],
            ],
            Vec::new(),
        )),
        Family::Mu11 | Family::Mu12 => {
            let n = key.n;
            let mu12 = key.family == Family::Mu12;
            let dot: StructureConstants<Rational> = filiform_dot(n, n - 1, mu12);
            let phi1: Vec<MPoly> = (1..=n).map(|k| v(k, 1)).collect();
            let mut cols: Vec<Vec<TemplateEntry>> = Vec::new();
            let mut power = phi1.clone();
            cols.push(phi1.iter().cloned().map(TemplateEntry::Poly).collect());
            for _ in 2..n {
                power = poly_product(&dot, &power, &phi1);
                cols.push(power.iter().cloned().map(TemplateEntry::Poly).collect());
            }
            let mut last = vec![TemplateEntry::Poly(MPoly::zero()); n];
            last[n - 2] = TemplateEntry::Poly(v(n - 1, n));
            if mu12 {
                let half = |coeff: MPoly, twice: i64| {
                    if twice % 2 == 0 {
                        TemplateEntry::Poly(coeff * v(1, 1).pow((twice / 2) as u32))
                    } else {
                        TemplateEntry::HalfPower { coeff, base: sym(1, 1), twice_exp: twice }
                    }
                };
                last[n - 3] = half(-v(n, 1), n as i64 - 3);
                last[n - 1] = half(c(1), n as i64 - 1);
            } else {
                last[n - 1] = TemplateEntry::Poly(v(n, n));
            }
            cols.push(last);
            let pattern: Vec<Vec<TemplateEntry>> =
                (0..n).map(|r| (0..n).map(|col| cols[col][r].clone()).collect()).collect();
            let mut symbols: Vec<String> = (1..=n).map(|k| sym(k, 1)).collect();
            symbols.push(sym(n - 1, n));
            if !mu12 {
                symbols.push(sym(n, n));
            }
            Ok(AutTemplate {
                key: key.clone(),
                pattern,
                symbols,
                branches: Vec::new(),
            })
        }
        _ => Err(CatalogError::NoTemplate(key.to_string())),
    }
}

/// One coincidence between a three-dimensional entry and a filiform family
/// at `n = 3`, with a witness over the Gaussian rationals.
#[derive(Clone, Debug)]
pub struct CrossRef {
    pub three_dim: String,
    pub filiform: String,
    pub source: BilinearPair<Cyclo<4>>,
    pub target: BilinearPair<Cyclo<4>>,
    /// Column-convention matrix `g` with `g * source = target`.
    pub g: Matrix<Cyclo<4>>,
}

/// The six coincidences at dimension three. `n` must be 3.
pub fn crossref_table(n: usize) -> Result<Vec<CrossRef>, CatalogError> {
    if n != 3 {
        return Err(CatalogError::BadDimension {
            key: "crossref".to_string(),
            n,
            min: 3,
        });
    }
    type G = Cyclo<4>;
    let q = |a: i64, b: i64| G::from_rational(&Rational::new(a, b));
    let i = G::zeta();
    let id = Matrix::<G>::identity(3);
    // Rows are images g(e_1), g(e_2), g(e_3); transposed to columns below.
    let isotropic = Matrix::from_rows(vec![
        vec![q(1, 2), G::zero(), -(i.clone() * q(1, 2))],
        vec![G::one(), G::zero(), i.clone()],
        vec![G::zero(), G::one(), G::zero()],
    ])
    .transpose();
    let row = |three: Family, alpha: Option<G>, fil: Family, g: Matrix<G>| -> Result<CrossRef, CatalogError> {
        Ok(CrossRef {
            three_dim: match &alpha {
                Some(a) => format!("{three}(alpha={a})"),
                None => three.to_string(),
            },
            filiform: format!("{fil}(n=3)"),
            source: build_with(three, 3, alpha)?,
            target: build_with(fil, 3, None)?,
            g,
        })
    };
    Ok(vec![
        row(Family::P3(6), None, Family::P0, id.clone())?,
        row(Family::P3(13), None, Family::P1(1), id.clone())?,
        row(Family::P3(14), None, Family::P1(2), id.clone())?,
        row(Family::P3(15), None, Family::P1(3), id)?,
        row(Family::P3(16), Some(G::zero()), Family::P1(4), isotropic.clone())?,
        row(Family::P3(16), Some(i), Family::P1(5), isotropic)?,
    ])
}

/// Lifts a rational pair into any field.
pub fn lift_pair<K: Field>(p: &BilinearPair<Rational>) -> BilinearPair<K> {
    p.map(|q| K::from_rational(q))
}
