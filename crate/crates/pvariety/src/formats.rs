//! JSON file formats. All indices in files are 1-based.

use std::collections::BTreeMap;
use std::path::Path;

use pvariety_core::arith::expr::Expr;
use pvariety_core::cocycle::SkewBilinearMap;
use pvariety_core::separating::ClosedConditionSet;
use pvariety_core::{BilinearPair, Field, RatFunc, Rational, StructureConstants, Symmetry};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{context}: {source}")]
    Json { context: String, source: serde_json::Error },
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::Io { path: path.display().to_string(), source: e })?;
    serde_json::from_str(&text).map_err(|e| FormatError::Json { context: path.display().to_string(), source: e })
}

/// A scalar written as a JSON number or string.
fn scalar(v: &Value) -> Result<Rational, FormatError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Rational::from)
            .ok_or_else(|| invalid(format!("non-integer number {n}; write fractions as strings"))),
        Value::String(s) => s.trim().parse().map_err(|e| invalid(format!("{e}"))),
        other => Err(invalid(format!("expected a scalar, found {other}"))),
    }
}

fn index(v: &Value) -> Result<usize, FormatError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| invalid(format!("expected an index, found {v}")))
}

fn parse_entries(dim: usize, rows: &[Value], sym: Symmetry) -> Result<StructureConstants<Rational>, FormatError> {
    let mut sc = StructureConstants::zero(dim, sym);
    for row in rows {
        let a = row.as_array().filter(|a| a.len() == 4).ok_or_else(|| invalid(format!("entry {row} is not [i,j,k,q]")))?;
        let (i, j, k) = (index(&a[0])?, index(&a[1])?, index(&a[2])?);
        if i == 0 || j == 0 || k == 0 || i > dim || j > dim || k > dim {
            return Err(invalid(format!("index out of range in {row}")));
        }
        sc.set(i - 1, j - 1, k - 1, scalar(&a[3])?).map_err(|e| invalid(e.to_string()))?;
    }
    Ok(sc)
}

fn write_entries(sc: &StructureConstants<Rational>) -> Vec<Value> {
    sc.entries()
        .map(|((i, j, k), c)| serde_json::json!([i + 1, j + 1, k + 1, c.to_string()]))
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default)]
    pub dot: Vec<Value>,
    #[serde(default)]
    pub bracket: Vec<Value>,
}

impl AlgebraFile {
    pub fn to_pair(&self) -> Result<BilinearPair<Rational>, FormatError> {
        Ok(BilinearPair {
            dot: parse_entries(self.dim, &self.dot, Symmetry::Symmetric)?,
            bracket: parse_entries(self.dim, &self.bracket, Symmetry::Antisymmetric)?,
        })
    }

    pub fn from_pair(p: &BilinearPair<Rational>) -> Self {
        AlgebraFile { dim: p.dim(), dot: write_entries(&p.dot), bracket: write_entries(&p.bracket) }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SkewMapFile {
    pub dim: usize,
    #[serde(default)]
    pub components: Vec<Value>,
}

impl SkewMapFile {
    pub fn to_map(&self) -> Result<SkewBilinearMap<Rational>, FormatError> {
        Ok(SkewBilinearMap::from_constants(parse_entries(self.dim, &self.components, Symmetry::Antisymmetric)?))
    }

    pub fn from_map(m: &SkewBilinearMap<Rational>) -> Self {
        SkewMapFile { dim: m.dim(), components: write_entries(m.constants()) }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionFile {
    pub dim: usize,
    #[serde(default)]
    pub eq: Vec<String>,
    #[serde(default)]
    pub free: Vec<String>,
    #[serde(default)]
    pub zero_otherwise: bool,
}

impl ConditionFile {
    pub fn to_set(&self) -> Result<ClosedConditionSet, FormatError> {
        ClosedConditionSet::parse(self.dim, &self.eq, &self.free, self.zero_otherwise).map_err(|e| invalid(e.to_string()))
    }
}

/// One rule of a parametric basis change: entry `(row, col)` of the image
/// list is `value`, for every integer in the `for` range.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermRule {
    #[serde(rename = "for", default)]
    pub range: Option<String>,
    pub row: String,
    pub col: String,
    pub value: String,
}

/// The version of a witness as printed in the source table, kept when the
/// shipped version is a correction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Printed {
    pub g: Vec<Vec<Value>>,
    pub note: String,
}

/// A degeneration witness. `g` (or `g_terms`) lists the images
/// `g_i(t) = g(t)(e_i)` as rows.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessFile {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub g: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    pub g_terms: Option<Vec<TermRule>>,
    #[serde(default)]
    pub g_inv: Option<Vec<TermRule>>,
    /// Parametrized index for a family source.
    #[serde(default)]
    pub f: Option<String>,
    /// Parameter values at which an `alpha`-dependent row is checked.
    #[serde(default)]
    pub alpha: Option<Vec<String>>,
    /// Dimensions at which a parametric-dimension row is checked.
    #[serde(default)]
    pub n: Option<Vec<usize>>,
    /// Order of the adjoined root of unity `z`, as an expression in `n`.
    #[serde(default)]
    pub zeta: Option<String>,
    #[serde(default)]
    pub printed: Option<Printed>,
}

fn parse_range(spec: &str, ints: &BTreeMap<String, i64>) -> Result<(String, i64, i64), FormatError> {
    let (var, rest) = spec.split_once('=').ok_or_else(|| invalid(format!("bad range `{spec}`")))?;
    let (lo, hi) = rest.split_once("..").ok_or_else(|| invalid(format!("bad range `{spec}`")))?;
    let ev = |s: &str| -> Result<i64, FormatError> {
        Expr::parse(s.trim()).and_then(|e| e.eval_int(ints)).map_err(|e| invalid(e.to_string()))
    };
    Ok((var.trim().to_string(), ev(lo)?, ev(hi)?))
}

/// Values bound while evaluating witness entries.
#[derive(Clone, Debug)]
pub struct Bindings<K> {
    pub n: usize,
    pub alpha: Option<K>,
    pub zeta: Option<K>,
}

fn eval_entry<K: Field>(text: &str, ints: &BTreeMap<String, i64>, b: &Bindings<K>) -> Result<RatFunc<K>, FormatError> {
    let expr = Expr::parse(text).map_err(|e| invalid(e.to_string()))?;
    let resolve = |s: &str| -> Option<RatFunc<K>> {
        match s {
            "t" => Some(RatFunc::t()),
            "alpha" | "a" => b.alpha.clone().map(RatFunc::constant),
            "z" => b.zeta.clone().map(RatFunc::constant),
            _ => None,
        }
    };
    expr.eval(ints, &resolve).map_err(|e| invalid(format!("`{text}`: {e}")))
}

fn value_text(v: &Value) -> Result<String, FormatError> {
    match v {
        Value::Number(n) => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        other => Err(invalid(format!("expected a scalar expression, found {other}"))),
    }
}

/// Evaluates a plain image matrix.
pub fn eval_rows<K: Field>(rows: &[Vec<Value>], b: &Bindings<K>) -> Result<Vec<Vec<RatFunc<K>>>, FormatError> {
    let ints = base_ints(b.n);
    if rows.len() != b.n || rows.iter().any(|r| r.len() != b.n) {
        return Err(invalid(format!("basis change must be {0}x{0}", b.n)));
    }
    rows.iter()
        .map(|r| r.iter().map(|v| eval_entry(&value_text(v)?, &ints, b)).collect())
        .collect()
}

/// Evaluates a single expression in `t`, `n`, `alpha` and `z`.
pub fn eval_scalar<K: Field>(text: &str, b: &Bindings<K>) -> Result<RatFunc<K>, FormatError> {
    eval_entry(text, &base_ints(b.n), b)
}

fn base_ints(n: usize) -> BTreeMap<String, i64> {
    let mut ints = BTreeMap::new();
    ints.insert("n".to_string(), n as i64);
    ints
}

/// Evaluates rule-based entries on top of a zero matrix.
pub fn eval_terms<K: Field>(rules: &[TermRule], b: &Bindings<K>) -> Result<Vec<Vec<RatFunc<K>>>, FormatError> {
    let n = b.n;
    let mut m = vec![vec![RatFunc::<K>::zero(); n]; n];
    for rule in rules {
        let base = base_ints(n);
        let iterations: Vec<BTreeMap<String, i64>> = match &rule.range {
            None => vec![base],
            Some(r) => {
                let (var, lo, hi) = parse_range(r, &base)?;
                (lo..=hi)
                    .map(|x| {
                        let mut ints = base.clone();
                        ints.insert(var.clone(), x);
                        ints
                    })
                    .collect()
            }
        };
        for ints in iterations {
            let pos = |s: &str| -> Result<usize, FormatError> {
                let v = Expr::parse(s).and_then(|e| e.eval_int(&ints)).map_err(|e| invalid(e.to_string()))?;
                if v < 1 || v as usize > n {
                    return Err(invalid(format!("position `{s}` = {v} outside 1..{n}")));
                }
                Ok(v as usize - 1)
            };
            let (r, c) = (pos(&rule.row)?, pos(&rule.col)?);
            m[r][c] = m[r][c].clone() + eval_entry(&rule.value, &ints, b)?;
        }
    }
    Ok(m)
}

impl WitnessFile {
    pub fn image_rows<K: Field>(&self, b: &Bindings<K>) -> Result<Vec<Vec<RatFunc<K>>>, FormatError> {
        match (&self.g, &self.g_terms) {
            (Some(g), None) => eval_rows(g, b),
            (None, Some(t)) => eval_terms(t, b),
            _ => Err(invalid("a witness needs exactly one of `g` and `g_terms`")),
        }
    }

    pub fn inverse_rows<K: Field>(&self, b: &Bindings<K>) -> Result<Option<Vec<Vec<RatFunc<K>>>>, FormatError> {
        self.g_inv.as_ref().map(|t| eval_terms(t, b)).transpose()
    }

    pub fn printed_rows<K: Field>(&self, b: &Bindings<K>) -> Result<Option<Vec<Vec<RatFunc<K>>>>, FormatError> {
        self.printed.as_ref().map(|p| eval_rows(&p.g, b)).transpose()
    }

    pub fn alphas(&self) -> Result<Vec<Rational>, FormatError> {
        self.alpha
            .iter()
            .flatten()
            .map(|s| s.parse::<Rational>().map_err(|e| invalid(e.to_string())))
            .collect()
    }

    pub fn zeta_order(&self, n: usize) -> Result<Option<usize>, FormatError> {
        self.zeta
            .as_ref()
            .map(|s| {
                let v = Expr::parse(s).and_then(|e| e.eval_int(&base_ints(n))).map_err(|e| invalid(e.to_string()))?;
                usize::try_from(v).map_err(|_| invalid(format!("bad root-of-unity order {v}")))
            })
            .transpose()
    }
}
