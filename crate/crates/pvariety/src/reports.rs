//! `reproduce` suites: each re-runs one table or figure against the shipped
//! dataset and renders a diff-style report.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use pvariety_core::algebra::{verify_isomorphism, Symmetry};
use pvariety_core::catalog::{build, crossref_table, CatalogKey};
use pvariety_core::graph::{build_graph, DegenerationGraph, Evidence, Node, NodeKind};
use pvariety_core::invariants::{check_necessary_conditions, invariant_profile};
use pvariety_core::{BilinearPair, Matrix, Rational, StructureConstants};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dataset::{
    check_separating, constant_matrix, eval_alpha, family_graph, generic_alpha, figure1_label, filiform_graph, heuristic_conflicts,
    heuristic_non_edges, load_figures, load_isomorphisms, load_separating, load_table1, member_graph, resolve_key,
    verify_group, DatasetError, FigureSpec, SeparatingCheck, SeparatingOptions, WitnessCheck,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Table1,
    Table2,
    Table3,
    Table5,
    Table6,
    Figure1,
    Figure2,
    Figure3,
    Crossref,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Table1,
        Suite::Table2,
        Suite::Table3,
        Suite::Table5,
        Suite::Table6,
        Suite::Figure1,
        Suite::Figure2,
        Suite::Figure3,
        Suite::Crossref,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Table2 => "table2",
            Suite::Table3 => "table3",
            Suite::Table5 => "table5",
            Suite::Table6 => "table6",
            Suite::Figure1 => "figure1",
            Suite::Figure2 => "figure2",
            Suite::Figure3 => "figure3",
            Suite::Crossref => "crossref",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Context {
    pub data: PathBuf,
    pub seed: u64,
    /// Overrides both the stability and the search trial counts.
    pub trials: Option<usize>,
    pub ns: Option<Vec<usize>>,
}

impl Context {
    pub fn new(data: PathBuf) -> Self {
        Context { data, seed: 42, trials: None, ns: None }
    }

    pub fn separating_options(&self) -> SeparatingOptions {
        let d = SeparatingOptions::default();
        SeparatingOptions {
            stability_trials: self.trials.unwrap_or(d.stability_trials),
            search_trials: self.trials.unwrap_or(d.search_trials),
            seed: self.seed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    /// Names of the failed rows.
    pub failures: Vec<String>,
    pub lines: Vec<String>,
    pub data: Value,
}

impl Report {
    fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), passed: true, failures: Vec::new(), lines: Vec::new(), data: Value::Null }
    }

    fn row(&mut self, ok: bool, name: &str, detail: impl AsRef<str>) {
        let tag = if ok { "ok  " } else { "FAIL" };
        self.lines.push(format!("{tag}  {name}  {}", detail.as_ref()));
        if !ok {
            self.passed = false;
            self.failures.push(name.to_string());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn text(&self) -> String {
        let mut s = format!("== {} ==\n", self.suite);
        for l in &self.lines {
            s.push_str(l);
            s.push('\n');
        }
        if self.passed {
            s.push_str(&format!("{}: PASS\n", self.suite));
        } else {
            s.push_str(&format!("{}: FAIL ({})\n", self.suite, self.failures.join("; ")));
        }
        s
    }
}

/// Column-aligned rendering.
pub fn align(rows: &[Vec<String>]) -> Vec<String> {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    rows.iter()
        .map(|r| {
            let cells: Vec<String> =
                r.iter().enumerate().map(|(i, s)| format!("{s}{}", " ".repeat(widths[i] - s.chars().count()))).collect();
            cells.join("  ").trim_end().to_string()
        })
        .collect()
}

pub fn run(suite: Suite, ctx: &Context) -> Result<Vec<Report>, DatasetError> {
    let one = |r: Result<Report, DatasetError>| r.map(|r| vec![r]);
    match suite {
        Suite::Table1 => one(table1(ctx)),
        Suite::Table2 => one(witness_table(ctx, "table2", "table2")),
        Suite::Table5 => one(witness_table(ctx, "table5", "table5")),
        Suite::Table3 => one(separating_table(ctx, 3)),
        Suite::Table6 => one(separating_table(ctx, 6)),
        Suite::Figure1 => one(figure1(ctx)),
        Suite::Figure2 => one(figure2(ctx)),
        Suite::Figure3 => one(figure3(ctx)),
        Suite::Crossref => one(crossref(ctx)),
        Suite::All => Suite::EACH.iter().map(|s| run(*s, ctx).map(|mut v| v.remove(0))).collect(),
    }
}

// Table 1: derivation dimensions and the dot/bracket columns.

fn lie_part(p: &BilinearPair<Rational>) -> BilinearPair<Rational> {
    BilinearPair { dot: StructureConstants::zero(p.dim(), Symmetry::Symmetric), bracket: p.bracket.clone() }
}

pub fn table1(ctx: &Context) -> Result<Report, DatasetError> {
    let rows = load_table1(&ctx.data)?;
    let mut rep = Report::new("table1");
    let mut table = vec![vec!["class".to_string(), "member".into(), "dim Der".into(), "expected".into(), "dot".into(), "bracket".into()]];
    let mut data = Vec::new();
    for row in &rows {
        for m in &row.members {
            let key: CatalogKey = m.parse()?;
            let p = build(&key)?;
            let der = invariant_profile(&p).dim_der;
            let dot_ref = build(&row.dot.parse()?)?;
            let dot_ok = dot_ref.dot == p.dot;
            let alpha_text = key.alpha().map(|a| a.to_string()).unwrap_or_default();
            let lie_key = row.bracket.replace("alpha=alpha", &format!("alpha={alpha_text}"));
            let lie = build(&lie_key.parse()?)?;
            let bracket = if p.bracket.is_zero() && !lie.bracket.is_zero() && row.bracket_note.is_some() {
                None
            } else {
                let g = match &row.bracket_iso {
                    Some(iso) => constant_matrix(iso, key.alpha())?,
                    None => Matrix::identity(3),
                };
                Some(verify_isomorphism(&lie_part(&p), &lie, &g).unwrap_or(false))
            };
            let ok = der == row.dim_der && dot_ok && bracket != Some(false);
            let bracket_text = match bracket {
                Some(true) => lie_key.clone(),
                Some(false) => format!("{lie_key} MISMATCH"),
                None => format!("n/a ({})", row.bracket_note.clone().unwrap_or_default()),
            };
            table.push(vec![
                row.label.clone(),
                key.to_string(),
                der.to_string(),
                row.dim_der.to_string(),
                if dot_ok { row.dot.clone() } else { format!("{} MISMATCH", row.dot) },
                bracket_text,
            ]);
            if !ok {
                rep.passed = false;
                rep.failures.push(format!("{} [{}]", row.label, key));
            }
            data.push(json!({"class": row.label, "member": key.to_string(), "dim_der": der, "expected": row.dim_der,
                "dot_ok": dot_ok, "bracket_ok": bracket}));
        }
    }
    for (i, l) in align(&table).into_iter().enumerate() {
        let bad = i > 0 && {
            let r = &table[i];
            r[2] != r[3] || r[4].contains("MISMATCH") || r[5].contains("MISMATCH")
        };
        rep.note(format!("{} {l}", if i == 0 { "    " } else if bad { "FAIL" } else { "ok  " }));
    }
    rep.data = Value::Array(data);
    Ok(rep)
}

// Witness tables.

/// Necessary conditions and the derivation count along one verified instance.
fn edge_consistency(c: &WitnessCheck, alpha: Option<&str>, n: usize) -> Result<Option<String>, DatasetError> {
    let mut alpha = alpha.map(|a| a.parse::<Rational>()).transpose().map_err(|e| DatasetError::Invalid(e.to_string()))?;
    if c.family {
        alpha = generic_alpha(c.source.parse()?);
    }
    let s = build(&resolve_key(&c.source, n, alpha.as_ref())?)?;
    let t = build(&resolve_key(&c.target, n, None)?)?;
    let rep = check_necessary_conditions(&s, &t).map_err(|e| DatasetError::Invalid(e.to_string()))?;
    let (ds, dt) = (invariant_profile(&s).dim_der, invariant_profile(&t).dim_der);
    let mut problems = Vec::new();
    if !rep.all_pass() {
        problems.push(format!("conditions {:?} fail", rep.failures().iter().map(|c| c.number()).collect::<Vec<_>>()));
    }
    // A family witness may end at a member of the same orbit dimension.
    if ds >= dt && !(c.family && ds == dt) {
        problems.push(format!("dim Der does not increase ({ds} -> {dt})"));
    }
    Ok((!problems.is_empty()).then(|| problems.join(", ")))
}

pub fn witness_lines(rep: &mut Report, checks: &[WitnessCheck]) -> Result<(), DatasetError> {
    for c in checks {
        for inst in &c.instances {
            let name = if c.instances.len() > 1 { format!("{} [{}]", c.label(), inst.label()) } else { c.label() };
            let mut ok = inst.verified;
            let mut detail = inst.outcome.clone();
            if inst.verified {
                if let Some(p) = edge_consistency(c, inst.alpha.as_deref(), inst.n)? {
                    ok = false;
                    detail = format!("verified, but {p}");
                }
            }
            rep.row(ok, &name, detail);
        }
        if let (Some(printed), Some(note)) = (&c.printed, &c.printed_note) {
            let fails = printed.iter().filter(|i| !i.verified).count();
            let first = printed.iter().find(|i| !i.verified).map(|i| i.outcome.clone()).unwrap_or_default();
            rep.note(format!(
                "      printed version of {}: {} of {} instances fail{}; {note}",
                c.label(),
                fails,
                printed.len(),
                if first.is_empty() { String::new() } else { format!(" ({first})") }
            ));
        }
    }
    Ok(())
}

pub fn witness_table(ctx: &Context, suite: &str, group: &str) -> Result<Report, DatasetError> {
    let checks = verify_group(&ctx.data, group, None)?;
    let mut rep = Report::new(suite);
    witness_lines(&mut rep, &checks)?;
    rep.note(format!("{} witness files, {} instances", checks.len(), checks.iter().map(|c| c.instances.len()).sum::<usize>()));
    rep.data = serde_json::to_value(&checks).unwrap_or(Value::Null);
    Ok(rep)
}

// Separating sets.

fn separating_lines(rep: &mut Report, c: &SeparatingCheck) {
    let stab: usize = c.stability.iter().map(|s| s.sampled).sum();
    let viol: usize = c.stability.iter().map(|s| s.violations.len()).sum();
    let found: Vec<&str> = c.searches.iter().filter(|s| s.witness.is_some()).map(|s| s.target.as_str()).collect();
    let detail = format!(
        "sources {}; stability {} samples, {} violations; orbit search over {} targets, {} hits",
        if c.consistent { "in set".to_string() } else { format!("NOT in set: {}", c.inconsistent_sources.join(", ")) },
        stab,
        viol,
        c.searches.len(),
        found.len()
    );
    rep.row(c.passed(), &format!("{} ({})", c.title, c.name), detail);
    for s in &c.stability {
        for v in &s.violations {
            rep.note(format!("      violation{}: {v}", s.binding.as_ref().map(|b| format!(" [{b}]")).unwrap_or_default()));
        }
        if s.sampled < s.trials {
            rep.note(format!("      only {} of {} points could be sampled", s.sampled, s.trials));
        }
    }
    for s in c.searches.iter().filter(|s| s.witness.is_some()) {
        rep.note(format!("      {} reaches the set via {}", s.target, s.witness.as_deref().unwrap_or("")));
    }
}

pub fn separating_checks(ctx: &Context, table: Option<u8>) -> Result<Vec<SeparatingCheck>, DatasetError> {
    let opts = ctx.separating_options();
    load_separating(&ctx.data)?
        .iter()
        .filter(|r| table.is_none_or(|t| r.file.table == t))
        .map(|r| check_separating(r, &opts))
        .collect()
}

pub fn separating_table(ctx: &Context, table: u8) -> Result<Report, DatasetError> {
    let checks = separating_checks(ctx, Some(table))?;
    let mut rep = Report::new(&format!("table{table}"));
    let opts = ctx.separating_options();
    rep.note(format!(
        "heuristic tier: {} stability trials, {} search trials per target, seed {}",
        opts.stability_trials, opts.search_trials, opts.seed
    ));
    for c in &checks {
        separating_lines(&mut rep, c);
    }
    rep.data = serde_json::to_value(&checks).unwrap_or(Value::Null);
    Ok(rep)
}

// Figures.

/// Set comparison rendered as `-` (figure only) and `+` (computed only).
fn diff_sets(rep: &mut Report, what: &str, figure: &BTreeSet<(String, String)>, computed: &BTreeSet<(String, String)>) {
    let missing: Vec<_> = figure.difference(computed).collect();
    let extra: Vec<_> = computed.difference(figure).collect();
    let ok = missing.is_empty() && extra.is_empty();
    rep.row(ok, what, format!("{} in figure, {} computed", figure.len(), computed.len()));
    for (a, b) in missing {
        rep.note(format!("    - {a} -> {b}"));
    }
    for (a, b) in extra {
        rep.note(format!("    + {a} -> {b}"));
    }
}

fn figure_edges(f: &FigureSpec) -> BTreeSet<(String, String)> {
    f.edges.iter().map(|[a, b]| (a.clone(), b.clone())).collect()
}

fn as_set(v: Vec<(String, String)>) -> BTreeSet<(String, String)> {
    v.into_iter().collect()
}

/// The figure's own graph, for its closure and reduction.
fn figure_graph(f: &FigureSpec, level: impl Fn(&Value) -> Option<usize>) -> Result<DegenerationGraph, DatasetError> {
    let nodes: Vec<Node> = f
        .levels
        .iter()
        .map(|(k, v)| {
            let orbit_dim = level(v).ok_or_else(|| DatasetError::Invalid(format!("bad level for {k}")))?;
            Ok(Node { key: k.clone(), orbit_dim, kind: NodeKind::Mixed, profile: None })
        })
        .collect::<Result<_, DatasetError>>()?;
    let edges: Vec<(String, String)> = figure_edges(f).into_iter().collect();
    Ok(build_graph(nodes, &edges, &[])?)
}

fn compare_levels(rep: &mut Report, figure: &BTreeMap<String, usize>, computed: &BTreeMap<String, BTreeSet<usize>>) {
    let mut bad = Vec::new();
    for (k, want) in figure {
        match computed.get(k) {
            Some(got) if got.len() == 1 && got.contains(want) => {}
            Some(got) => bad.push(format!("{k}: figure {want}, computed {got:?}")),
            None => bad.push(format!("{k}: not computed")),
        }
    }
    for k in computed.keys().filter(|k| !figure.contains_key(*k)) {
        bad.push(format!("{k}: not in figure"));
    }
    let levels: BTreeSet<usize> = figure.values().copied().collect();
    let levels: Vec<String> = levels.iter().rev().map(|l| l.to_string()).collect();
    rep.row(bad.is_empty(), "orbit levels", format!("{} nodes on levels {{{}}}", figure.len(), levels.join(",")));
    for b in bad {
        rep.note(format!("    {b}"));
    }
}

fn compare_maximal(rep: &mut Report, figure: &[String], computed: &[String]) {
    let f: BTreeSet<&String> = figure.iter().collect();
    let c: BTreeSet<&String> = computed.iter().collect();
    rep.row(f == c, "maximal nodes", format!("computed {{{}}}", computed.join(", ")));
}

pub struct ThreeDim {
    pub witnesses: Vec<WitnessCheck>,
    pub separating: Vec<SeparatingCheck>,
}

pub fn three_dim_data(ctx: &Context) -> Result<ThreeDim, DatasetError> {
    let mut witnesses = Vec::new();
    for g in ["table2", "zero", "table5", "membership"] {
        witnesses.extend(verify_group(&ctx.data, g, None)?);
    }
    Ok(ThreeDim { witnesses, separating: separating_checks(ctx, None)? })
}

fn failed_witnesses(rep: &mut Report, d: &ThreeDim) {
    for c in d.witnesses.iter().filter(|c| !c.verified()) {
        rep.row(false, &c.label(), "witness does not verify; edge left out");
    }
    for c in d.separating.iter().filter(|c| !c.passed()) {
        rep.row(false, &c.title, "separating row fails; non-edges left out");
    }
}

pub fn figure1(ctx: &Context) -> Result<Report, DatasetError> {
    let figs = load_figures(&ctx.data)?;
    let d = three_dim_data(ctx)?;
    let mut rep = Report::new("figure1");
    failed_witnesses(&mut rep, &d);
    let g = member_graph(&d.witnesses, &heuristic_non_edges(&d.separating))?;
    let fig_levels: BTreeMap<String, usize> =
        figs.figure1.levels.iter().filter_map(|(k, v)| v.as_u64().map(|x| (k.clone(), x as usize))).collect();
    let mut computed: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    for n in g.nodes() {
        computed.entry(figure1_label(&n.key)).or_default().insert(n.orbit_dim);
    }
    compare_levels(&mut rep, &fig_levels, &computed);
    let mapped: BTreeSet<(String, String)> = g
        .transitive_reduction()
        .into_iter()
        .map(|(a, b)| (figure1_label(&a), figure1_label(&b)))
        .filter(|(a, b)| a != b)
        .collect();
    diff_sets(&mut rep, "primary degenerations", &figure_edges(&figs.figure1), &mapped);
    let maximal: BTreeSet<String> = g.maximal_nodes().iter().map(|k| figure1_label(k)).collect();
    compare_maximal(&mut rep, &figs.figure1.maximal, &maximal.into_iter().collect::<Vec<_>>());
    for (a, b, ev) in heuristic_conflicts(&g) {
        rep.row(false, &format!("{a} -/-> {b}"), format!("contradicted by verified edges ({ev})"));
    }
    rep.data = graph_json(&g);
    Ok(rep)
}

pub fn figure2(ctx: &Context) -> Result<Report, DatasetError> {
    let figs = load_figures(&ctx.data)?;
    let d = three_dim_data(ctx)?;
    let mut rep = Report::new("figure2");
    failed_witnesses(&mut rep, &d);
    let mut g = family_graph(&d.witnesses, &heuristic_non_edges(&d.separating))?;
    let fig_levels: BTreeMap<String, usize> =
        figs.figure2.levels.iter().filter_map(|(k, v)| v.as_u64().map(|x| (k.clone(), x as usize))).collect();
    let computed: BTreeMap<String, BTreeSet<usize>> =
        g.nodes().iter().map(|n| (n.key.clone(), BTreeSet::from([n.orbit_dim]))).collect();
    compare_levels(&mut rep, &fig_levels, &computed);
    let fg = figure_graph(&figs.figure2, |v| v.as_u64().map(|x| x as usize))?;
    diff_sets(&mut rep, "orbit closure containments", &as_set(fg.closure()), &as_set(g.closure()));
    diff_sets(&mut rep, "primary degenerations", &as_set(fg.transitive_reduction()), &as_set(g.transitive_reduction()));
    let redundant: Vec<String> = figure_edges(&figs.figure2)
        .difference(&as_set(fg.transitive_reduction()))
        .map(|(a, b)| format!("{a} -> {b}"))
        .collect();
    if !redundant.is_empty() {
        rep.note(format!("      figure edges implied by others: {}", redundant.join(", ")));
    }
    compare_maximal(&mut rep, &figs.figure2.maximal, &g.maximal_nodes());
    for (a, b, ev) in heuristic_conflicts(&g) {
        rep.row(false, &format!("{a} -/-> {b}"), format!("contradicted by verified edges ({ev})"));
    }
    g.complete_non_edges();
    for (k, excluded) in g.component_claims() {
        let doms: Vec<String> = g
            .nodes()
            .iter()
            .filter(|n| n.orbit_dim > g.node(&k).map(|m| m.orbit_dim).unwrap_or(0))
            .map(|n| format!("{}: {}", n.key, g.non_edge(&n.key, &k).map(|e| e.tier()).unwrap_or("none")))
            .collect();
        rep.note(format!(
            "      component {k}: {}{}",
            if excluded { "every larger orbit excluded" } else { "some larger orbit unexplained" },
            if doms.is_empty() { String::new() } else { format!(" [{}]", doms.join("; ")) }
        ));
    }
    let tiers = tier_counts(&g);
    rep.note(format!("      non-edges by evidence: {tiers:?}"));
    rep.data = graph_json(&g);
    Ok(rep)
}

pub fn tier_counts(g: &DegenerationGraph) -> BTreeMap<&'static str, usize> {
    let mut m = BTreeMap::new();
    for (_, _, e) in g.non_edges() {
        *m.entry(e.tier()).or_insert(0) += 1;
    }
    m
}

pub fn graph_json(g: &DegenerationGraph) -> Value {
    let nodes: Vec<Value> = g
        .nodes()
        .iter()
        .map(|n| json!({"id": n.key, "orbit_dim": n.orbit_dim, "kind": n.kind.name(),
            "profile": n.profile.map(|p| p.as_tuple().to_vec())}))
        .collect();
    let edges: Vec<Value> = g.edges().into_iter().map(|(a, b)| json!([a, b])).collect();
    let non_edges: Vec<Value> = g
        .non_edges()
        .into_iter()
        .map(|(a, b, e)| {
            let detail = match &e {
                Evidence::Corollary(c) => json!(c),
                Evidence::SeparatingHeuristic(r) => json!(r),
                _ => Value::Null,
            };
            json!({"from": a, "to": b, "tier": e.tier(), "detail": detail})
        })
        .collect();
    json!({"nodes": nodes, "edges": edges, "non_edges": non_edges})
}

fn level_at(v: &Value, n: usize) -> Option<usize> {
    let s = v.as_str()?;
    let e = pvariety_core::arith::expr::Expr::parse(s).ok()?;
    let ints = BTreeMap::from([("n".to_string(), n as i64)]);
    usize::try_from(e.eval_int(&ints).ok()?).ok()
}

pub const DEFAULT_FILIFORM_DIMS: [usize; 4] = [4, 5, 6, 7];

pub fn figure3(ctx: &Context) -> Result<Report, DatasetError> {
    let figs = load_figures(&ctx.data)?;
    let ns = ctx.ns.clone().unwrap_or_else(|| DEFAULT_FILIFORM_DIMS.to_vec());
    let checks = verify_group(&ctx.data, "filiform", Some(&ns))?;
    let mut rep = Report::new("figure3");
    witness_lines(&mut rep, &checks)?;
    let mut per_n = Vec::new();
    for &n in &ns {
        rep.note(format!("-- n = {n}"));
        let mut g = filiform_graph(&checks, n)?;
        let fig_levels: BTreeMap<String, usize> =
            figs.figure3.levels.iter().filter_map(|(k, v)| level_at(v, n).map(|x| (k.clone(), x))).collect();
        let computed: BTreeMap<String, BTreeSet<usize>> =
            g.nodes().iter().map(|x| (x.key.clone(), BTreeSet::from([x.orbit_dim]))).collect();
        compare_levels(&mut rep, &fig_levels, &computed);
        let fg = figure_graph(&figs.figure3, |v| level_at(v, n))?;
        diff_sets(&mut rep, "primary degenerations", &as_set(fg.transitive_reduction()), &as_set(g.transitive_reduction()));
        compare_maximal(&mut rep, &figs.figure3.maximal, &g.maximal_nodes());
        g.complete_non_edges();
        for (a, b) in [("P0", "P1.3"), ("P1.2", "P1.4")] {
            let ev = g.non_edge(a, b).cloned();
            let ok = ev.as_ref().is_some_and(|e| e.is_rigorous());
            rep.row(ok, &format!("{a} -/-> {b} (n={n})"), ev.map(|e| e.to_string()).unwrap_or_else(|| "no evidence".into()));
        }
        per_n.push(json!({"n": n, "graph": graph_json(&g)}));
    }
    rep.data = Value::Array(per_n);
    Ok(rep)
}

// Coincidences with the filiform families and isomorphisms inside families.

pub fn crossref(ctx: &Context) -> Result<Report, DatasetError> {
    let mut rep = Report::new("crossref");
    for c in crossref_table(3)? {
        let ok = verify_isomorphism(&c.source, &c.target, &c.g).unwrap_or(false);
        rep.row(ok, &format!("{} ~ {}", c.three_dim, c.filiform), "isomorphism over Q(i)");
    }
    for iso in load_isomorphisms(&ctx.data)? {
        for a in &iso.alpha {
            let a: Rational = a.parse().map_err(|e: pvariety_core::arith::ParseScalarError| DatasetError::Invalid(e.to_string()))?;
            let b = eval_alpha(&iso.target_alpha, &a)?;
            let s = build(&resolve_key(&iso.source, 3, Some(&a))?)?;
            let t = build(&resolve_key(&iso.target, 3, Some(&b))?)?;
            let g = constant_matrix(&iso.g, Some(&a))?;
            let ok = verify_isomorphism(&s, &t, &g).unwrap_or(false);
            rep.row(ok, &format!("{}(alpha={a}) ~ {}(alpha={b})", iso.source, iso.target), &iso.name);
        }
    }
    Ok(rep)
}
