//! The shipped dataset: witnesses, separating rows, reference tables and
//! the graphs assembled from them.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use pvariety_core::catalog::{build, build_with, lift_pair, CatalogError, CatalogKey, Family};
use pvariety_core::degeneration::{
    verify_degeneration, verify_family_degeneration, DegenerationError, FamilyWitness, ParamBasisChange,
};
use pvariety_core::graph::{build_graph, DegenerationGraph, Evidence, GraphError, Node, NodeKind};
use pvariety_core::invariants::invariant_profile;
use pvariety_core::separating::{
    describe_violation, heuristic_orbit_search, sampled_stability, self_consistency, ClosedConditionSet,
};
use pvariety_core::{BilinearPair, Cyclo, Field, Matrix, Rational};
use serde::{Deserialize, Serialize};

use crate::formats::{eval_scalar, read_json, Bindings, ConditionFile, FormatError, WitnessFile};

pub fn default_data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Catalog(#[from] CatalogError),
    #[error("{0}")]
    Degeneration(#[from] DegenerationError),
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> DatasetError {
    DatasetError::Invalid(msg.into())
}

/// Catalog key for `name` at dimension `n`. Names with arguments are parsed
/// as they stand; otherwise `n` and `alpha` are filled in where the family
/// takes them.
pub fn resolve_key(name: &str, n: usize, alpha: Option<&Rational>) -> Result<CatalogKey, DatasetError> {
    if name.contains('(') {
        return Ok(name.parse()?);
    }
    let family: Family = name.parse()?;
    let mut key = if family.is_parametric_dim() { CatalogKey::with_n(family, n) } else { CatalogKey::new(family) };
    if family.has_alpha() {
        let a = alpha.ok_or_else(|| invalid(format!("`{name}` needs a parameter value")))?;
        key.params.insert("alpha".to_string(), a.clone());
    }
    build(&key)?;
    Ok(key)
}

/// Reads an algebra either from a JSON file or from a catalog key.
pub fn load_algebra(spec: &str) -> Result<BilinearPair<Rational>, DatasetError> {
    let path = Path::new(spec);
    if spec.ends_with(".json") || path.is_file() {
        let f: crate::formats::AlgebraFile = read_json(path)?;
        return Ok(f.to_pair()?);
    }
    Ok(build(&spec.parse()?)?)
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub group: String,
    pub name: String,
    pub path: PathBuf,
    pub file: WitnessFile,
}

pub fn load_witness(path: &Path) -> Result<Witness, DatasetError> {
    let file: WitnessFile = read_json(path)?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let group = path
        .parent()
        .and_then(|p| p.file_name())
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(Witness { group, name, path: path.to_path_buf(), file })
}

fn json_files(dir: &Path) -> Result<Vec<PathBuf>, DatasetError> {
    let rd = std::fs::read_dir(dir)
        .map_err(|e| FormatError::Io { path: dir.display().to_string(), source: e })?;
    let mut out: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    Ok(out)
}

/// All witnesses of `data/witnesses/<group>`, sorted by file name.
pub fn load_group(data: &Path, group: &str) -> Result<Vec<Witness>, DatasetError> {
    json_files(&data.join("witnesses").join(group))?.iter().map(|p| load_witness(p)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceCheck {
    pub n: usize,
    pub alpha: Option<String>,
    pub verified: bool,
    pub outcome: String,
}

impl InstanceCheck {
    pub fn label(&self) -> String {
        match &self.alpha {
            Some(a) => format!("alpha={a}"),
            None => format!("n={}", self.n),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessCheck {
    pub group: String,
    pub name: String,
    pub source: String,
    pub target: String,
    pub family: bool,
    pub instances: Vec<InstanceCheck>,
    /// Results for the printed version when the shipped one is a correction.
    pub printed: Option<Vec<InstanceCheck>>,
    pub printed_note: Option<String>,
}

impl WitnessCheck {
    pub fn verified(&self) -> bool {
        !self.instances.is_empty() && self.instances.iter().all(|i| i.verified)
    }

    pub fn label(&self) -> String {
        let s = if self.family { format!("{}*", self.source) } else { self.source.clone() };
        format!("{s} -> {}", self.target)
    }
}

fn check_instance<K: Field>(
    w: &WitnessFile,
    n: usize,
    alpha: Option<&Rational>,
    zeta: Option<K>,
    printed: bool,
) -> Result<(bool, String), DatasetError> {
    let b = Bindings { n, alpha: alpha.map(K::from_rational), zeta };
    let rows = if printed {
        w.printed_rows(&b)?.ok_or_else(|| invalid("no printed version recorded"))?
    } else {
        w.image_rows(&b)?
    };
    let inverse = if printed { None } else { w.inverse_rows(&b)? };
    let g = match inverse {
        Some(inv) => ParamBasisChange::from_images_with_inverse(rows, inv),
        None => ParamBasisChange::from_images(rows),
    };
    let g = match g {
        Ok(g) => g,
        Err(e) => return Ok((false, e.to_string())),
    };
    let target = lift_pair::<K>(&build(&resolve_key(&w.target, n, None)?)?);
    let outcome = match &w.f {
        Some(f) => {
            let family: Family = w.source.parse()?;
            let f = eval_scalar::<K>(f, &b)?;
            verify_family_degeneration(&FamilyWitness { family, n, f, g, target })?
        }
        None => {
            let key = resolve_key(&w.source, n, alpha)?;
            let src = build_with::<K>(key.family, key.n, key.alpha().map(K::from_rational))?;
            verify_degeneration(&src, &g, &target)?
        }
    };
    Ok((outcome.is_verified(), outcome.to_string()))
}

macro_rules! cyclo_dispatch {
    ($m:expr, $w:expr, $n:expr, $alpha:expr, $printed:expr; $($k:literal)*) => {
        match $m {
            $($k => check_instance::<Cyclo<$k>>($w, $n, $alpha, Some(Cyclo::<$k>::zeta()), $printed),)*
            other => Err(invalid(format!("roots of unity of order {other} are not supported"))),
        }
    };
}

fn run_instance(w: &WitnessFile, n: usize, alpha: Option<&Rational>, printed: bool) -> Result<InstanceCheck, DatasetError> {
    let (verified, outcome) = match w.zeta_order(n)? {
        Some(m) => cyclo_dispatch!(m, w, n, alpha, printed; 4 6 8 10 12 14 16 18 20),
        None => check_instance::<Rational>(w, n, alpha, None, printed),
    }?;
    Ok(InstanceCheck { n, alpha: alpha.map(|a| a.to_string()), verified, outcome })
}

/// Verifies every instance of a witness: each listed dimension (or those in
/// `ns`) and each listed parameter value.
pub fn verify_witness(w: &Witness, ns: Option<&[usize]>) -> Result<WitnessCheck, DatasetError> {
    let f = &w.file;
    let dims: Vec<usize> = match (ns, &f.n) {
        (Some(ns), Some(_)) => ns.to_vec(),
        (_, Some(ns)) => ns.clone(),
        (_, None) => vec![3],
    };
    let alphas = f.alphas()?;
    let alphas: Vec<Option<&Rational>> = if alphas.is_empty() { vec![None] } else { alphas.iter().map(Some).collect() };
    let mut instances = Vec::new();
    let mut printed = f.printed.as_ref().map(|_| Vec::new());
    for &n in &dims {
        for a in &alphas {
            instances.push(run_instance(f, n, *a, false)?);
            if let Some(p) = printed.as_mut() {
                p.push(run_instance(f, n, *a, true)?);
            }
        }
    }
    Ok(WitnessCheck {
        group: w.group.clone(),
        name: w.name.clone(),
        source: f.source.clone(),
        target: f.target.clone(),
        family: f.f.is_some(),
        instances,
        printed,
        printed_note: f.printed.as_ref().map(|p| p.note.clone()),
    })
}

pub fn verify_group(data: &Path, group: &str, ns: Option<&[usize]>) -> Result<Vec<WitnessCheck>, DatasetError> {
    load_group(data, group)?.iter().map(|w| verify_witness(w, ns)).collect()
}

// Graph nodes of the three-dimensional variety.

/// Ids of the distinguished family members and their catalog keys. `^a` and
/// `^b` stand for generic members of the two families.
const SPECIAL_MEMBERS: [(&str, &str); 6] = [
    ("P3.4^1", "P3.4(alpha=1)"),
    ("P3.4^0", "P3.4(alpha=0)"),
    ("P3.4^-1", "P3.4(alpha=-1)"),
    ("P3.4^a", "P3.4(alpha=2)"),
    ("P3.16^0", "P3.16(alpha=0)"),
    ("P3.16^b", "P3.16(alpha=1)"),
];

/// Parameter value standing for a generic member of a family.
pub fn generic_alpha(family: Family) -> Option<Rational> {
    match family {
        Family::P3(4) => Some(Rational::from(2)),
        Family::P3(16) => Some(Rational::from(1)),
        _ => None,
    }
}

/// Member id to family id in the family graph.
const GENERIC_TO_FAMILY: [(&str, &str); 2] = [("P3.4^a", "P3.4*"), ("P3.16^b", "P3.16*")];

/// Node id of a three-dimensional catalog key, if the graph has one.
pub fn node_id(key: &CatalogKey) -> Option<String> {
    match (key.family, key.alpha()) {
        (Family::P3(4 | 16), Some(_)) => {
            SPECIAL_MEMBERS.iter().find(|(_, k)| k.parse::<CatalogKey>().ok().as_ref() == Some(key)).map(|(id, _)| id.to_string())
        }
        (Family::P3(_), None) => Some(key.family.to_string()),
        _ => None,
    }
}

/// `(id, key)` for the member graph.
pub fn member_nodes() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = (1..=20u8)
        .filter(|i| *i != 4 && *i != 16)
        .map(|i| (format!("P3.{i}"), format!("P3.{i}")))
        .collect();
    out.extend(SPECIAL_MEMBERS.iter().map(|(a, b)| (a.to_string(), b.to_string())));
    out
}

fn make_node(id: &str, key: &str, family: bool) -> Result<Node, DatasetError> {
    let p = build(&key.parse()?)?;
    let profile = invariant_profile(&p);
    Ok(Node {
        key: id.to_string(),
        orbit_dim: profile.orbit_dim + usize::from(family),
        kind: if family { NodeKind::Family } else { NodeKind::of(&p) },
        profile: Some(profile),
    })
}

/// Verified edges `(from, to, witness)` in member ids.
pub fn member_edges(checks: &[WitnessCheck]) -> Result<Vec<(String, String, String)>, DatasetError> {
    let mut out = Vec::new();
    for c in checks.iter().filter(|c| !c.family) {
        let target = node_id(&resolve_key(&c.target, 3, None)?);
        for inst in c.instances.iter().filter(|i| i.verified) {
            let alpha = inst.alpha.as_ref().map(|a| a.parse::<Rational>()).transpose().map_err(|e| invalid(e.to_string()))?;
            let source = node_id(&resolve_key(&c.source, 3, alpha.as_ref())?);
            if let (Some(s), Some(t)) = (source, &target) {
                out.push((s, t.clone(), c.name.clone()));
            }
        }
    }
    Ok(out)
}

/// Verified edges of the family witnesses, in family-graph ids.
pub fn family_edges(checks: &[WitnessCheck]) -> Result<Vec<(String, String, String)>, DatasetError> {
    let mut out = Vec::new();
    for c in checks.iter().filter(|c| c.family && c.verified()) {
        let target = node_id(&resolve_key(&c.target, 3, None)?).ok_or_else(|| invalid(format!("no node for {}", c.target)))?;
        out.push((format!("{}*", c.source), target, c.name.clone()));
    }
    Ok(out)
}

fn to_family_id(id: &str) -> String {
    GENERIC_TO_FAMILY.iter().find(|(m, _)| *m == id).map(|(_, f)| f.to_string()).unwrap_or_else(|| id.to_string())
}

fn dedup_pairs(edges: &[(String, String, String)]) -> Vec<(String, String)> {
    let s: BTreeSet<(String, String)> = edges.iter().map(|(a, b, _)| (a.clone(), b.clone())).collect();
    s.into_iter().collect()
}

fn restrict(non_edges: &[(String, String, Evidence)], ids: &BTreeSet<String>) -> Vec<(String, String, Evidence)> {
    non_edges.iter().filter(|(a, b, _)| ids.contains(a) && ids.contains(b)).cloned().collect()
}

/// The graph on individual algebras (generic members stand for the
/// families), from every verified ordinary witness.
pub fn member_graph(checks: &[WitnessCheck], non_edges: &[(String, String, Evidence)]) -> Result<DegenerationGraph, DatasetError> {
    let nodes: Vec<Node> = member_nodes().iter().map(|(id, k)| make_node(id, k, false)).collect::<Result<_, _>>()?;
    let ids: BTreeSet<String> = nodes.iter().map(|n| n.key.clone()).collect();
    let edges = dedup_pairs(&member_edges(checks)?);
    Ok(build_graph(nodes, &edges, &restrict(non_edges, &ids))?)
}

/// The graph with the two families as single nodes next to their special
/// members, adding the family witnesses.
pub fn family_graph(checks: &[WitnessCheck], non_edges: &[(String, String, Evidence)]) -> Result<DegenerationGraph, DatasetError> {
    let mut nodes = Vec::new();
    for (id, key) in member_nodes() {
        match GENERIC_TO_FAMILY.iter().find(|(m, _)| *m == id) {
            Some((_, fam)) => nodes.push(make_node(fam, &key, true)?),
            None => nodes.push(make_node(&id, &key, false)?),
        }
    }
    let ids: BTreeSet<String> = nodes.iter().map(|n| n.key.clone()).collect();
    let mut edges: Vec<(String, String, String)> = member_edges(checks)?
        .into_iter()
        .map(|(a, b, w)| (to_family_id(&a), to_family_id(&b), w))
        .collect();
    edges.extend(family_edges(checks)?);
    Ok(build_graph(nodes, &dedup_pairs(&edges), &restrict(non_edges, &ids))?)
}

pub const FILIFORM_FAMILIES: [&str; 6] = ["P0", "P1.1", "P1.2", "P1.3", "P1.4", "P1.5"];

/// The graph of the null-filiform and filiform families at dimension `n`.
pub fn filiform_graph(checks: &[WitnessCheck], n: usize) -> Result<DegenerationGraph, DatasetError> {
    let nodes: Vec<Node> = FILIFORM_FAMILIES
        .iter()
        .map(|f| make_node(f, &format!("{f}(n={n})"), false))
        .collect::<Result<_, _>>()?;
    let edges: Vec<(String, String)> = checks
        .iter()
        .filter(|c| c.instances.iter().any(|i| i.n == n && i.verified))
        .map(|c| (c.source.clone(), c.target.clone()))
        .collect();
    Ok(build_graph(nodes, &edges, &[])?)
}

// Separating rows.

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeparatingFile {
    pub table: u8,
    pub sources: Vec<String>,
    pub targets: Vec<String>,
    pub condition: ConditionFile,
    #[serde(default)]
    pub non_edges: Vec<[String; 2]>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SeparatingRow {
    pub name: String,
    pub file: SeparatingFile,
}

impl SeparatingRow {
    pub fn title(&self) -> String {
        format!("{} -/-> {}", self.file.sources.join(", "), self.file.targets.join(", "))
    }
}

pub fn load_separating(data: &Path) -> Result<Vec<SeparatingRow>, DatasetError> {
    json_files(&data.join("separating"))?
        .iter()
        .map(|p| {
            Ok(SeparatingRow {
                name: p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
                file: read_json(p)?,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityCheck {
    /// Parameter binding, if the set has one.
    pub binding: Option<String>,
    pub trials: usize,
    pub sampled: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchCheck {
    pub binding: Option<String>,
    pub target: String,
    pub trials: usize,
    /// A basis change moving the target into the set, which refutes the row.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparatingCheck {
    pub name: String,
    pub table: u8,
    pub title: String,
    pub consistent: bool,
    pub inconsistent_sources: Vec<String>,
    pub stability: Vec<StabilityCheck>,
    pub searches: Vec<SearchCheck>,
    pub non_edges: Vec<(String, String)>,
}

impl SeparatingCheck {
    pub fn passed(&self) -> bool {
        self.consistent
            && self.stability.iter().all(|s| s.violations.is_empty() && s.sampled == s.trials)
            && self.searches.iter().all(|s| s.witness.is_none())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SeparatingOptions {
    pub stability_trials: usize,
    pub search_trials: usize,
    pub seed: u64,
}

impl Default for SeparatingOptions {
    fn default() -> Self {
        SeparatingOptions { stability_trials: 200, search_trials: 1000, seed: 42 }
    }
}

fn matrix_text(m: &Matrix<Rational>) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

/// Self-consistency, sampled stability and orbit search for one row. A set
/// with a parameter is bound to each source's parameter value in turn.
pub fn check_separating(row: &SeparatingRow, opts: &SeparatingOptions) -> Result<SeparatingCheck, DatasetError> {
    let f = &row.file;
    let set = f.condition.to_set()?;
    let sources: Vec<(CatalogKey, BilinearPair<Rational>)> = f
        .sources
        .iter()
        .map(|s| {
            let k: CatalogKey = s.parse()?;
            let p = build(&k)?;
            Ok((k, p))
        })
        .collect::<Result<_, DatasetError>>()?;
    let targets: Vec<(String, BilinearPair<Rational>)> =
        f.targets.iter().map(|t| Ok((t.clone(), build(&t.parse()?)?))).collect::<Result<_, DatasetError>>()?;
    let params: Vec<String> = set.params().iter().cloned().collect();
    if params.len() > 1 {
        return Err(invalid(format!("row {} has more than one parameter", row.name)));
    }
    // One instance per distinct binding.
    let mut instances: BTreeMap<Option<String>, (ClosedConditionSet, Vec<String>)> = BTreeMap::new();
    for (k, _) in &sources {
        let (binding, inst) = match params.first() {
            Some(name) => {
                let a = k.alpha().ok_or_else(|| invalid(format!("source {k} does not fix `{name}`")))?;
                (Some(format!("{name}={a}")), set.bind(name, a))
            }
            None => (None, set.clone()),
        };
        instances.entry(binding).or_insert_with(|| (inst, Vec::new())).1.push(k.to_string());
    }
    let mut inconsistent = Vec::new();
    for (k, p) in &sources {
        let inst = match params.first() {
            Some(name) => set.bind(name, k.alpha().expect("checked above")),
            None => set.clone(),
        };
        if !self_consistency(&inst, std::slice::from_ref(p)) {
            inconsistent.push(k.to_string());
        }
    }
    let mut stability = Vec::new();
    let mut searches = Vec::new();
    for (binding, (inst, _)) in &instances {
        let rep = sampled_stability(inst, opts.stability_trials, opts.seed);
        stability.push(StabilityCheck {
            binding: binding.clone(),
            trials: rep.trials,
            sampled: rep.sampled,
            violations: rep.violations.iter().take(3).map(describe_violation).collect(),
        });
        for (name, t) in &targets {
            let w = heuristic_orbit_search(inst, t, opts.search_trials, opts.seed);
            searches.push(SearchCheck {
                binding: binding.clone(),
                target: name.clone(),
                trials: opts.search_trials,
                witness: w.as_ref().map(matrix_text),
            });
        }
    }
    Ok(SeparatingCheck {
        name: row.name.clone(),
        table: f.table,
        title: row.title(),
        consistent: inconsistent.is_empty(),
        inconsistent_sources: inconsistent,
        stability,
        searches,
        non_edges: f.non_edges.iter().map(|[a, b]| (a.clone(), b.clone())).collect(),
    })
}

/// Heuristic non-edges from the rows that passed.
pub fn heuristic_non_edges(checks: &[SeparatingCheck]) -> Vec<(String, String, Evidence)> {
    checks
        .iter()
        .filter(|c| c.passed())
        .flat_map(|c| c.non_edges.iter().map(move |(a, b)| (a.clone(), b.clone(), Evidence::SeparatingHeuristic(c.name.clone()))))
        .collect()
}

/// Heuristic non-edges that the verified edges contradict.
pub fn heuristic_conflicts(g: &DegenerationGraph) -> Vec<(String, String, Evidence)> {
    g.non_edges().into_iter().filter(|(a, b, _)| g.reaches(a, b)).collect()
}

// Reference data.

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table1Row {
    pub label: String,
    pub members: Vec<String>,
    pub dim_der: usize,
    pub dot: String,
    pub bracket: String,
    #[serde(default)]
    pub bracket_iso: Option<Vec<Vec<serde_json::Value>>>,
    #[serde(default)]
    pub bracket_note: Option<String>,
}

pub fn load_table1(data: &Path) -> Result<Vec<Table1Row>, DatasetError> {
    Ok(read_json(&data.join("table1.json"))?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FigureSpec {
    /// Orbit dimension per label; for the filiform figure an expression in `n`.
    pub levels: BTreeMap<String, serde_json::Value>,
    pub edges: Vec<[String; 2]>,
    pub maximal: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Figures {
    pub figure1: FigureSpec,
    pub figure2: FigureSpec,
    pub figure3: FigureSpec,
}

pub fn load_figures(data: &Path) -> Result<Figures, DatasetError> {
    Ok(read_json(&data.join("figures.json"))?)
}

/// Label of a member-graph node in the figure that merges the family members.
pub fn figure1_label(id: &str) -> String {
    match id {
        "P3.4^0" | "P3.4^-1" | "P3.4^a" => "P3.4^{α≠1}".to_string(),
        "P3.16^b" => "P3.16^{β≠0}".to_string(),
        other => other.to_string(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsoFile {
    pub name: String,
    pub source: String,
    pub target: String,
    pub target_alpha: String,
    pub alpha: Vec<String>,
    pub g: Vec<Vec<serde_json::Value>>,
}

pub fn load_isomorphisms(data: &Path) -> Result<Vec<IsoFile>, DatasetError> {
    Ok(read_json(&data.join("isomorphisms.json"))?)
}

/// Evaluates a constant image matrix (rows `g(e_i)`) into the column convention.
pub fn constant_matrix(rows: &[Vec<serde_json::Value>], alpha: Option<&Rational>) -> Result<Matrix<Rational>, DatasetError> {
    let b = Bindings { n: rows.len(), alpha: alpha.cloned(), zeta: None };
    let m = crate::formats::eval_rows(rows, &b)?;
    let vals: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| match x.as_laurent() {
                    Some(p) if p.valuation().unwrap_or(0) >= 0 && p.degree().unwrap_or(0) <= 0 => Ok(p.coeff(0)),
                    _ => Err(invalid(format!("entry `{x}` is not constant"))),
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    Ok(Matrix::from_rows(vals).transpose())
}

/// Parameter value given by an expression in `alpha`.
pub fn eval_alpha(expr: &str, alpha: &Rational) -> Result<Rational, DatasetError> {
    let b = Bindings { n: 3, alpha: Some(alpha.clone()), zeta: None };
    let v = eval_scalar::<Rational>(expr, &b)?;
    v.as_laurent()
        .filter(|p| p.degree().unwrap_or(0) <= 0 && p.valuation().unwrap_or(0) >= 0)
        .map(|p| p.coeff(0))
        .ok_or_else(|| invalid(format!("`{expr}` is not a constant")))
}
