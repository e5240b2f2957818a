//! Command-line front end. Exit codes: 0 pass, 1 mathematical failure,
//! 2 malformed input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use pvariety_core::algebra::{check_identity, Identity};
use pvariety_core::catalog::{build, CatalogKey, Family};
use pvariety_core::cocycle::{z2_report, SkewBilinearMap};
use pvariety_core::{BilinearPair, Rational};
use pvariety_core::graph::{emit_dot, DotOptions};
use pvariety_core::invariants::{check_necessary_conditions, invariant_profile};
use pvariety_core::separating::{heuristic_orbit_search, sampled_stability};
use serde_json::json;

use crate::dataset::{
    check_separating, default_data_dir, family_graph, filiform_graph, heuristic_non_edges, load_algebra, load_witness,
    member_graph, resolve_key, verify_group, verify_witness, DatasetError, SeparatingFile, SeparatingRow,
};
use crate::formats::{read_json, AlgebraFile, ConditionFile, SkewMapFile};
use crate::reports::{self, align, graph_json, Context, Suite};

#[derive(Debug, Parser)]
#[command(name = "pvariety", version, about = "Exact checks for low-dimensional Poisson algebras and their degenerations")]
pub struct Cli {
    /// Dataset directory (witnesses, separating rows, reference tables).
    #[arg(long, global = true)]
    pub data: Option<PathBuf>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Trial count for sampled stability and orbit search.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Dimension(s) for the filiform suites; repeat or separate with commas.
    #[arg(long, global = true, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Output path for DOT text.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List catalog keys, or print one entry.
    Catalog { key: Option<String> },
    /// Identity report for an algebra (JSON file or catalog key).
    Check { algebra: String },
    /// Skew maps compatible with a commutative associative product.
    Z2 {
        algebra: String,
        /// Random elements used for the sampled Jacobi check.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Invariant profiles; with `--against`, the necessary conditions.
    Invariants {
        algebras: Vec<String>,
        #[arg(long)]
        against: Option<String>,
    },
    /// Verify witness files.
    VerifyDegeneration { witnesses: Vec<PathBuf> },
    /// Evidence that SOURCE does not degenerate to TARGET, or check a
    /// separating row file with `--row`.
    VerifyNondegeneration {
        source: Option<String>,
        target: Option<String>,
        /// Condition-set file used for the heuristic tier.
        #[arg(long)]
        set: Option<PathBuf>,
        #[arg(long)]
        row: Option<PathBuf>,
    },
    /// Emit the degeneration graph as DOT (or JSON with `--json`).
    Graph {
        /// Individual algebras instead of family nodes.
        #[arg(long)]
        members: bool,
        /// The filiform graph at the first `--n` (default 5).
        #[arg(long)]
        filiform: bool,
        /// Draw recorded edges instead of the transitive reduction.
        #[arg(long)]
        all_edges: bool,
    },
    /// Re-run a table or figure and report differences.
    Reproduce {
        #[arg(value_enum)]
        suite: Suite,
    },
}

enum Exit {
    Pass,
    Fail,
}

/// Parses `args`, runs the command and writes the report to `out`.
pub fn run<I, T>(args: I, out: &mut String) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match execute(&cli, out) {
        Ok(Exit::Pass) => 0,
        Ok(Exit::Fail) => 1,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            2
        }
    }
}

fn data_dir(cli: &Cli) -> PathBuf {
    cli.data.clone().unwrap_or_else(default_data_dir)
}

fn exit(ok: bool) -> Exit {
    if ok {
        Exit::Pass
    } else {
        Exit::Fail
    }
}

fn execute(cli: &Cli, out: &mut String) -> Result<Exit, DatasetError> {
    match &cli.command {
        Command::Catalog { key } => catalog(cli, key.as_deref(), out),
        Command::Check { algebra } => check(cli, algebra, out),
        Command::Z2 { algebra, samples } => z2(cli, algebra, *samples, out),
        Command::Invariants { algebras, against } => invariants(cli, algebras, against.as_deref(), out),
        Command::VerifyDegeneration { witnesses } => verify_degeneration(cli, witnesses, out),
        Command::VerifyNondegeneration { source, target, set, row } => {
            verify_nondegeneration(cli, source.as_deref(), target.as_deref(), set.as_deref(), row.as_deref(), out)
        }
        Command::Graph { members, filiform, all_edges } => graph(cli, *members, *filiform, *all_edges, out),
        Command::Reproduce { suite } => reproduce(cli, *suite, out),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).unwrap_or_default()
}

fn catalog(cli: &Cli, key: Option<&str>, out: &mut String) -> Result<Exit, DatasetError> {
    let Some(key) = key else {
        let mut names: Vec<String> = Family::all_three_dim()
            .into_iter()
            .map(|f| if f.has_alpha() { format!("{f}(alpha=<q>)") } else { f.to_string() })
            .collect();
        names.extend(["mu0", "mu11", "mu12", "P0"].iter().map(|s| format!("{s}(n=<n>)")));
        names.extend((1..=5).map(|i| format!("P1.{i}(n=<n>)")));
        if cli.json {
            let _ = writeln!(out, "{}", pretty(&json!(names)));
        } else {
            for n in names {
                let _ = writeln!(out, "{n}");
            }
        }
        return Ok(Exit::Pass);
    };
    let k: CatalogKey = key.parse()?;
    let p = build(&k)?;
    if cli.json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&AlgebraFile::from_pair(&p)).unwrap_or_default());
    } else {
        let prof = invariant_profile(&p);
        let _ = writeln!(out, "{k}: {p}");
        let _ = writeln!(out, "dim Der = {}, orbit dimension = {}", prof.dim_der, prof.orbit_dim);
    }
    Ok(Exit::Pass)
}

fn check(cli: &Cli, algebra: &str, out: &mut String) -> Result<Exit, DatasetError> {
    let p = self::algebra(cli, algebra)?;
    let reports: Vec<_> = Identity::ALL.iter().map(|id| check_identity(&p, *id)).collect();
    let ok = reports.iter().all(|r| r.holds);
    if cli.json {
        let v: Vec<_> = reports
            .iter()
            .map(|r| json!({"identity": r.identity.name(), "holds": r.holds,
                "witness": r.witness.as_ref().map(|w| w.iter().map(|i| i + 1).collect::<Vec<_>>())}))
            .collect();
        let _ = writeln!(out, "{}", pretty(&json!({"dim": p.dim(), "identities": v, "all_hold": ok})));
    } else {
        let rows: Vec<Vec<String>> = reports
            .iter()
            .map(|r| {
                let w = r.witness.as_ref().map(|w| {
                    let s: Vec<String> = w.iter().map(|i| format!("e{}", i + 1)).collect();
                    format!("fails at ({})", s.join(", "))
                });
                vec![r.identity.name().to_string(), w.unwrap_or_else(|| "holds".into())]
            })
            .collect();
        for l in align(&rows) {
            let _ = writeln!(out, "{l}");
        }
        let _ = writeln!(out, "{}", if ok { "all identities hold" } else { "some identities fail" });
    }
    Ok(exit(ok))
}

fn z2(cli: &Cli, algebra: &str, samples: usize, out: &mut String) -> Result<Exit, DatasetError> {
    let p = self::algebra(cli, algebra)?;
    let rep = z2_report(&p.dot, samples, cli.seed);
    let ok = rep.jacobi_automatic();
    if cli.json {
        let basis: Vec<_> = rep.basis.iter().map(SkewMapFile::from_map).collect();
        let _ = writeln!(
            out,
            "{}",
            pretty(&json!({"linear_dim": rep.linear_dim, "basis": basis, "jacobi_certified": rep.jacobi_certified,
                "samples_checked": rep.samples_checked, "samples_ok": rep.samples_ok}))
        );
    } else {
        let _ = writeln!(out, "Leibniz-compatible skew maps: dimension {}", rep.linear_dim);
        for (i, b) in rep.basis.iter().enumerate() {
            let _ = writeln!(out, "  theta_{} = {}   ({b})", i + 1, delta_form(b));
        }
        let _ = writeln!(
            out,
            "Jacobi: {} on the space; random combinations {} ({} sampled)",
            if rep.jacobi_certified { "holds identically" } else { "not automatic" },
            if rep.samples_ok { "all pass" } else { "fail" },
            rep.samples_checked
        );
    }
    Ok(exit(ok))
}

/// `theta` as a combination of the elementary maps `Δ_ij^k: {e_i,e_j} = e_k`.
fn delta_form(theta: &SkewBilinearMap<Rational>) -> String {
    let mut terms = Vec::new();
    for ((i, j, k), c) in theta.constants().entries() {
        let (i, j, c) = if i < j { (i, j, c.clone()) } else { (j, i, -c.clone()) };
        let d = format!("Δ_{}{}^{}", i + 1, j + 1, k + 1);
        terms.push(if c == Rational::from(1) { d } else if c == Rational::from(-1) { format!("-{d}") } else { format!("{c}*{d}") });
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.join(" + ").replace("+ -", "- ")
}

fn invariants(cli: &Cli, algebras: &[String], against: Option<&str>, out: &mut String) -> Result<Exit, DatasetError> {
    if algebras.is_empty() {
        return Err(DatasetError::Invalid("give at least one algebra".into()));
    }
    let mut rows = vec![["algebra", "dimDer", "orbit", "annDot", "annBr", "annP", "dot^2", "br^2", "P^2"]
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()];
    let mut js = Vec::new();
    let mut ok = true;
    for a in algebras {
        let p = algebra(cli, a)?;
        let prof = invariant_profile(&p);
        let mut r = vec![a.clone()];
        r.extend(prof.as_tuple().iter().map(|x| x.to_string()));
        rows.push(r);
        let mut entry = json!({"algebra": a, "profile": prof.as_tuple()});
        if let Some(t) = against {
            let q = algebra(cli, t)?;
            let rep = check_necessary_conditions(&p, &q).map_err(|e| DatasetError::Invalid(e.to_string()))?;
            let failed: Vec<usize> = rep.failures().iter().map(|c| c.number()).collect();
            entry["against"] = json!({"target": t, "failed_conditions": failed});
            ok &= rep.all_pass();
            if !cli.json {
                rows.last_mut().expect("pushed").push(if failed.is_empty() {
                    format!("-> {t}: all necessary conditions hold")
                } else {
                    format!("-> {t}: conditions {failed:?} fail, no degeneration")
                });
            }
        }
        js.push(entry);
    }
    if cli.json {
        let _ = writeln!(out, "{}", pretty(&json!(js)));
    } else {
        for l in align(&rows) {
            let _ = writeln!(out, "{l}");
        }
    }
    let _ = ok;
    Ok(Exit::Pass)
}

/// `p` as given, else under the data directory or `subdir`, with or
/// without a `.json` suffix.
fn find_file(cli: &Cli, p: &Path, subdir: &str) -> PathBuf {
    if p.exists() {
        return p.to_path_buf();
    }
    let data = data_dir(cli);
    let with_ext = p.with_extension("json");
    [data.join(p), data.join(subdir).join(p), data.join(subdir).join(&with_ext)]
        .into_iter()
        .find(|c| c.is_file())
        .unwrap_or_else(|| p.to_path_buf())
}

/// An algebra from a file or catalog key; bare dimension-indexed names take
/// the first `--n`.
fn algebra(cli: &Cli, spec: &str) -> Result<BilinearPair<Rational>, DatasetError> {
    if let (Ok(f), Some(&n)) = (spec.parse::<Family>(), cli.n.first()) {
        if f.is_parametric_dim() {
            return Ok(build(&resolve_key(spec, n, None)?)?);
        }
    }
    load_algebra(spec)
}

fn verify_degeneration(cli: &Cli, files: &[PathBuf], out: &mut String) -> Result<Exit, DatasetError> {
    if files.is_empty() {
        return Err(DatasetError::Invalid("give at least one witness file".into()));
    }
    let ns = (!cli.n.is_empty()).then_some(cli.n.as_slice());
    let mut all = true;
    let mut js = Vec::new();
    for f in files {
        let w = load_witness(&find_file(cli, f, "witnesses"))?;
        let c = verify_witness(&w, ns)?;
        all &= c.verified();
        if cli.json {
            js.push(serde_json::to_value(&c).unwrap_or_default());
            continue;
        }
        let _ = writeln!(out, "{}  {}", if c.verified() { "VERIFIED" } else { "FAILED" }, c.label());
        for i in &c.instances {
            if c.instances.len() > 1 || !i.verified {
                let _ = writeln!(out, "  {:<10} {}", i.label(), i.outcome);
            }
        }
        if let (Some(p), Some(note)) = (&c.printed, &c.printed_note) {
            let bad = p.iter().filter(|i| !i.verified).count();
            let _ = writeln!(out, "  printed version: {bad} of {} instances fail; {note}", p.len());
            for i in p.iter().filter(|i| !i.verified).take(1) {
                let _ = writeln!(out, "    {}", i.outcome);
            }
        }
    }
    if cli.json {
        let _ = writeln!(out, "{}", pretty(&json!(js)));
    }
    Ok(exit(all))
}

fn verify_nondegeneration(
    cli: &Cli,
    source: Option<&str>,
    target: Option<&str>,
    set: Option<&Path>,
    row: Option<&Path>,
    out: &mut String,
) -> Result<Exit, DatasetError> {
    let ctx = context(cli);
    let opts = ctx.separating_options();
    if let Some(row) = row {
        let path = find_file(cli, row, "separating");
        let file: SeparatingFile = read_json(&path)?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let c = check_separating(&SeparatingRow { name, file }, &opts)?;
        if cli.json {
            let _ = writeln!(out, "{}", pretty(&serde_json::to_value(&c).unwrap_or_default()));
        } else {
            let _ = writeln!(out, "{}  {}", if c.passed() { "NON-DEGENERATION (separating-heuristic)" } else { "FAILED" }, c.title);
            let _ = writeln!(out, "  sources in set: {}", c.consistent);
            for s in &c.stability {
                let _ = writeln!(out, "  stability{}: {}/{} sampled, {} violations", s.binding.as_ref().map(|b| format!(" [{b}]")).unwrap_or_default(), s.sampled, s.trials, s.violations.len());
            }
            for s in &c.searches {
                let _ = writeln!(out, "  search {}{}: {}", s.target, s.binding.as_ref().map(|b| format!(" [{b}]")).unwrap_or_default(), s.witness.as_deref().unwrap_or("no point of the orbit found in the set"));
            }
        }
        return Ok(exit(c.passed()));
    }
    let (Some(s), Some(t)) = (source, target) else {
        return Err(DatasetError::Invalid("give SOURCE and TARGET, or --row FILE".into()));
    };
    let p = algebra(cli, s)?;
    let q = algebra(cli, t)?;
    let (ps, pt) = (invariant_profile(&p), invariant_profile(&q));
    let rep = check_necessary_conditions(&p, &q).map_err(|e| DatasetError::Invalid(e.to_string()))?;
    let failed: Vec<usize> = rep.failures().iter().map(|c| c.number()).collect();
    let (verdict, tier, ok, detail) = if ps.orbit_dim <= pt.orbit_dim {
        ("NON-DEGENERATION", "dimension", true, format!("orbit dimensions {} <= {}", ps.orbit_dim, pt.orbit_dim))
    } else if !failed.is_empty() {
        let names: Vec<String> = rep.failures().iter().map(|c| c.describe().to_string()).collect();
        ("NON-DEGENERATION", "corollary", true, format!("conditions {failed:?} fail: {}", names.join("; ")))
    } else if let Some(set_path) = set {
        let path = find_file(cli, set_path, "separating");
        let mut v: serde_json::Value = read_json(&path)?;
        if let Some(c) = v.get_mut("condition") {
            v = c.take();
        }
        let cf: ConditionFile =
            serde_json::from_value(v).map_err(|e| DatasetError::Invalid(format!("{}: {e}", path.display())))?;
        let mut set = cf.to_set()?;
        for (name, value) in s.parse::<CatalogKey>().map(|k| k.params).unwrap_or_default() {
            if set.params().contains(&name) {
                set = set.bind(&name, &value);
            }
        }
        if let Some(free) = set.params().iter().next() {
            return Err(DatasetError::Invalid(format!("the set has parameter `{free}`; give it in the source key")));
        }
        let member = set.satisfies(&p).map_err(|e| DatasetError::Invalid(e.to_string()))?;
        let stab = sampled_stability(&set, opts.stability_trials, opts.seed);
        let hit = heuristic_orbit_search(&set, &q, opts.search_trials, opts.seed);
        let ok = member && stab.passed() && hit.is_none();
        let detail = format!(
            "source in set: {member}; stability {}/{} sampled, {} violations; orbit search {}",
            stab.sampled,
            stab.trials,
            stab.violations.len(),
            if hit.is_some() { "found a point in the set" } else { "found nothing" }
        );
        (if ok { "NON-DEGENERATION" } else { "UNDECIDED" }, "separating-heuristic", ok, detail)
    } else {
        ("UNDECIDED", "none", false, "necessary conditions hold; pass --set for the heuristic tier".to_string())
    };
    if cli.json {
        let _ = writeln!(out, "{}", pretty(&json!({"source": s, "target": t, "verdict": verdict, "tier": tier, "detail": detail})));
    } else {
        let _ = writeln!(out, "{verdict}  {s} -/-> {t}  [{tier}] {detail}");
    }
    Ok(exit(ok))
}

fn context(cli: &Cli) -> Context {
    Context { data: data_dir(cli), seed: cli.seed, trials: cli.trials, ns: (!cli.n.is_empty()).then(|| cli.n.clone()) }
}

fn graph(cli: &Cli, members: bool, filiform: bool, all_edges: bool, out: &mut String) -> Result<Exit, DatasetError> {
    let ctx = context(cli);
    let (mut g, title) = if filiform {
        let n = cli.n.first().copied().unwrap_or(5);
        (filiform_graph(&verify_group(&ctx.data, "filiform", Some(&[n]))?, n)?, format!("filiform n={n}"))
    } else {
        let d = reports::three_dim_data(&ctx)?;
        let ne = heuristic_non_edges(&d.separating);
        if members {
            (member_graph(&d.witnesses, &ne)?, "three-dimensional, members".to_string())
        } else {
            (family_graph(&d.witnesses, &ne)?, "three-dimensional".to_string())
        }
    };
    g.complete_non_edges();
    let text = if cli.json {
        let mut v = graph_json(&g);
        v["maximal"] = json!(g.maximal_nodes());
        pretty(&v) + "\n"
    } else {
        emit_dot(&g, &DotOptions { title, reduce: !all_edges, legend: true })
    };
    match &cli.out {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| crate::formats::FormatError::Io { path: p.display().to_string(), source: e })?;
            let _ = writeln!(out, "wrote {}", p.display());
        }
        None => out.push_str(&text),
    }
    Ok(Exit::Pass)
}

fn reproduce(cli: &Cli, suite: Suite, out: &mut String) -> Result<Exit, DatasetError> {
    let reps = reports::run(suite, &context(cli))?;
    let ok = reps.iter().all(|r| r.passed);
    if cli.json {
        let _ = writeln!(out, "{}", pretty(&serde_json::to_value(&reps).unwrap_or_default()));
    } else {
        for r in &reps {
            out.push_str(&r.text());
        }
    }
    Ok(exit(ok))
}
