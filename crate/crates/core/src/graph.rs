//! The degeneration digraph: verified edges, evidence-tagged non-edges,
//! reachability, Hasse diagram, maximal nodes and DOT output.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;

use crate::algebra::BilinearPair;
use crate::arith::Field;
use crate::invariants::{Condition, InvariantProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    /// Zero bracket: an embedded commutative associative algebra.
    Associative,
    /// Zero dot product: an embedded Lie algebra.
    Lie,
    Mixed,
    /// A one-parameter family drawn as a single node.
    Family,
}

impl NodeKind {
    pub fn of<K: Field>(p: &BilinearPair<K>) -> Self {
        match (p.dot.is_zero(), p.bracket.is_zero()) {
            (false, true) => NodeKind::Associative,
            (true, false) => NodeKind::Lie,
            _ => NodeKind::Mixed,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Associative => "associative",
            NodeKind::Lie => "lie",
            NodeKind::Mixed => "mixed",
            NodeKind::Family => "family",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub key: String,
    pub orbit_dim: usize,
    pub kind: NodeKind,
    /// Invariants used for the necessary-condition tier; for a family, those
    /// of a generic member.
    pub profile: Option<InvariantProfile>,
}

/// Why `p -> q` is excluded.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Evidence {
    /// `orbit_dim(p) <= orbit_dim(q)`.
    Dimension,
    /// A necessary inequality fails (1-based condition numbers).
    Corollary(Vec<usize>),
    /// A separating set containing `p` whose orbit search for `q` came up empty.
    SeparatingHeuristic(String),
    /// Follows from other non-edges and edges.
    Transitivity,
    Unattributed,
}

impl Evidence {
    pub fn tier(&self) -> &'static str {
        match self {
            Evidence::Dimension => "dimension",
            Evidence::Corollary(_) => "corollary",
            Evidence::SeparatingHeuristic(_) => "separating-heuristic",
            Evidence::Transitivity => "transitivity",
            Evidence::Unattributed => "unattributed",
        }
    }

    /// Tiers that exclude a degeneration outright (not heuristics).
    pub fn is_rigorous(&self) -> bool {
        matches!(self, Evidence::Dimension | Evidence::Corollary(_))
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Corollary(c) => {
                let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "corollary ({})", s.join(","))
            }
            Evidence::SeparatingHeuristic(r) => write!(f, "separating-heuristic [{r}]"),
            other => f.write_str(other.tier()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    UnknownNode(String),
    DuplicateNode(String),
    /// A proper edge that does not lower the orbit dimension.
    NotProper { from: String, to: String },
    /// A degeneration in the closure contradicts a rigorous non-edge.
    InconsistentEvidence { from: String, to: String, evidence: String },
    CycleDetected(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::UnknownNode(k) => write!(f, "unknown node `{k}`"),
            GraphError::DuplicateNode(k) => write!(f, "duplicate node `{k}`"),
            GraphError::NotProper { from, to } => write!(f, "edge {from} -> {to} does not lower the orbit dimension"),
            GraphError::InconsistentEvidence { from, to, evidence } => {
                write!(f, "{from} -> {to} is reachable but excluded by {evidence}")
            }
            GraphError::CycleDetected(k) => write!(f, "cycle through `{k}`"),
        }
    }
}

impl core::error::Error for GraphError {}

#[derive(Clone, Debug)]
pub struct DegenerationGraph {
    nodes: Vec<Node>,
    index: BTreeMap<String, usize>,
    edges: BTreeSet<(usize, usize)>,
    non_edges: BTreeMap<(usize, usize), Evidence>,
    reach: Vec<BTreeSet<usize>>,
}

fn corollary_failures(s: &InvariantProfile, t: &InvariantProfile) -> Vec<usize> {
    let pairs = [
        (s.ann_dot, t.ann_dot),
        (s.ann_bracket, t.ann_bracket),
        (s.ann_joint, t.ann_joint),
        (s.dim_dot_square, t.dim_dot_square),
        (s.dim_bracket_square, t.dim_bracket_square),
        (s.dim_p_square, t.dim_p_square),
    ];
    Condition::ALL
        .iter()
        .zip(pairs)
        .filter(|(c, (a, b))| match c {
            Condition::AnnDot | Condition::AnnBracket | Condition::AnnJoint => a > b,
            _ => a < b,
        })
        .map(|(c, _)| c.number())
        .collect()
}

/// Builds the graph from verified edges and recorded non-edges, rejecting
/// cycles, non-proper edges and reachable pairs that contradict rigorous
/// evidence (including the necessary inequalities on profiles).
pub fn build_graph(
    nodes: Vec<Node>,
    edges: &[(String, String)],
    non_edges: &[(String, String, Evidence)],
) -> Result<DegenerationGraph, GraphError> {
    let mut index = BTreeMap::new();
    for (i, n) in nodes.iter().enumerate() {
        if index.insert(n.key.clone(), i).is_some() {
            return Err(GraphError::DuplicateNode(n.key.clone()));
        }
    }
    let look = |k: &String| index.get(k).copied().ok_or_else(|| GraphError::UnknownNode(k.clone()));
    let mut e = BTreeSet::new();
    for (a, b) in edges {
        let (i, j) = (look(a)?, look(b)?);
        if nodes[i].orbit_dim <= nodes[j].orbit_dim {
            return Err(GraphError::NotProper { from: a.clone(), to: b.clone() });
        }
        e.insert((i, j));
    }
    let mut ne = BTreeMap::new();
    for (a, b, ev) in non_edges {
        ne.insert((look(a)?, look(b)?), ev.clone());
    }
    let n = nodes.len();
    let mut reach = alloc::vec![BTreeSet::new(); n];
    for (s, r) in reach.iter_mut().enumerate() {
        let mut stack: Vec<usize> = e.iter().filter(|(a, _)| *a == s).map(|(_, b)| *b).collect();
        while let Some(v) = stack.pop() {
            if v == s {
                return Err(GraphError::CycleDetected(nodes[s].key.clone()));
            }
            if r.insert(v) {
                stack.extend(e.iter().filter(|(a, _)| *a == v).map(|(_, b)| *b));
            }
        }
    }
    let g = DegenerationGraph { nodes, index, edges: e, non_edges: ne, reach };
    for (i, r) in g.reach.iter().enumerate() {
        for &j in r {
            let (a, b) = (&g.nodes[i], &g.nodes[j]);
            let bad = match g.non_edges.get(&(i, j)) {
                Some(ev) if ev.is_rigorous() => Some(ev.to_string()),
                _ => match (&a.profile, &b.profile) {
                    (Some(pa), Some(pb)) => {
                        let f = corollary_failures(pa, pb);
                        (!f.is_empty()).then(|| Evidence::Corollary(f).to_string())
                    }
                    _ => None,
                },
            };
            if let Some(evidence) = bad {
                return Err(GraphError::InconsistentEvidence { from: a.key.clone(), to: b.key.clone(), evidence });
            }
        }
    }
    Ok(g)
}

impl DegenerationGraph {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, key: &str) -> Option<&Node> {
        self.index.get(key).map(|&i| &self.nodes[i])
    }

    pub fn edges(&self) -> Vec<(String, String)> {
        self.edges.iter().map(|&(a, b)| self.pair(a, b)).collect()
    }

    fn pair(&self, a: usize, b: usize) -> (String, String) {
        (self.nodes[a].key.clone(), self.nodes[b].key.clone())
    }

    pub fn reaches(&self, from: &str, to: &str) -> bool {
        match (self.index.get(from), self.index.get(to)) {
            (Some(&a), Some(&b)) => self.reach[a].contains(&b),
            _ => false,
        }
    }

    /// All pairs `(p, q)` with `p ->* q`, `p != q`.
    pub fn closure(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (a, r) in self.reach.iter().enumerate() {
            for &b in r {
                out.push(self.pair(a, b));
            }
        }
        out
    }

    /// The minimal edge set with the same closure.
    pub fn transitive_reduction(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (a, r) in self.reach.iter().enumerate() {
            for &b in r {
                if !r.iter().any(|&w| w != b && self.reach[w].contains(&b)) {
                    out.push(self.pair(a, b));
                }
            }
        }
        out
    }

    /// Nodes not reachable from any other node.
    pub fn maximal_nodes(&self) -> Vec<String> {
        (0..self.nodes.len())
            .filter(|&j| !self.reach.iter().any(|r| r.contains(&j)))
            .map(|j| self.nodes[j].key.clone())
            .collect()
    }

    pub fn non_edges(&self) -> Vec<(String, String, Evidence)> {
        self.non_edges.iter().map(|(&(a, b), ev)| {
            let (x, y) = self.pair(a, b);
            (x, y, ev.clone())
        }).collect()
    }

    pub fn non_edge(&self, from: &str, to: &str) -> Option<&Evidence> {
        self.non_edges.get(&(*self.index.get(from)?, *self.index.get(to)?))
    }

    /// Tags every unreachable ordered pair not yet explained: by orbit
    /// dimension, then the necessary inequalities, then transitivity
    /// (`z -> p` with `z -/-> q`, or `q -> w` with `p -/-> w`), and the
    /// rest as unattributed. Recorded evidence is kept.
    pub fn complete_non_edges(&mut self) {
        let n = self.nodes.len();
        let mut open = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || self.reach[a].contains(&b) || self.non_edges.contains_key(&(a, b)) {
                    continue;
                }
                let (pa, pb) = (&self.nodes[a], &self.nodes[b]);
                if pa.orbit_dim <= pb.orbit_dim {
                    self.non_edges.insert((a, b), Evidence::Dimension);
                    continue;
                }
                if let (Some(x), Some(y)) = (&pa.profile, &pb.profile) {
                    let f = corollary_failures(x, y);
                    if !f.is_empty() {
                        self.non_edges.insert((a, b), Evidence::Corollary(f));
                        continue;
                    }
                }
                open.push((a, b));
            }
        }
        loop {
            let mut progress = false;
            open.retain(|&(a, b)| {
                let via_source = (0..n).any(|z| self.reach[z].contains(&a) && self.non_edges.contains_key(&(z, b)));
                let via_target = self.reach[b].iter().any(|&w| self.non_edges.contains_key(&(a, w)));
                if via_source || via_target {
                    self.non_edges.insert((a, b), Evidence::Transitivity);
                    progress = true;
                    false
                } else {
                    true
                }
            });
            if !progress {
                break;
            }
        }
        for (a, b) in open {
            self.non_edges.insert((a, b), Evidence::Unattributed);
        }
    }

    /// Maximal nodes, each with whether every node of larger orbit
    /// dimension is excluded from dominating it by a recorded non-edge.
    pub fn component_claims(&self) -> Vec<(String, bool)> {
        self.maximal_nodes()
            .into_iter()
            .map(|k| {
                let m = self.index[&k];
                let excluded = (0..self.nodes.len())
                    .filter(|&x| x != m && self.nodes[x].orbit_dim > self.nodes[m].orbit_dim)
                    .all(|x| self.non_edges.get(&(x, m)).is_some_and(|e| *e != Evidence::Unattributed));
                (k, excluded)
            })
            .collect()
    }

    /// Distinct orbit dimensions, descending.
    pub fn levels(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.nodes.iter().map(|n| n.orbit_dim).collect();
        s.into_iter().rev().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotOptions {
    pub title: String,
    /// Draw the transitive reduction instead of the recorded edges.
    pub reduce: bool,
    pub legend: bool,
}

impl Default for DotOptions {
    fn default() -> Self {
        DotOptions { title: "degenerations".to_string(), reduce: true, legend: true }
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn style(kind: NodeKind) -> &'static str {
    match kind {
        NodeKind::Associative => "shape=box, style=filled, fillcolor=white",
        NodeKind::Lie => "shape=box, style=filled, fillcolor=gray90",
        NodeKind::Mixed => "shape=box, style=filled, fillcolor=gray60",
        NodeKind::Family => "shape=box, style=\"rounded,filled\", fillcolor=gray60",
    }
}

/// Deterministic DOT text: one rank per orbit dimension, labelled on the
/// left, with a legend for the node styles.
pub fn emit_dot(g: &DegenerationGraph, opts: &DotOptions) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", quote(&opts.title));
    let _ = writeln!(s, "  rankdir=TB;");
    let _ = writeln!(s, "  node [fontname=\"Helvetica\", fontsize=10];");
    let levels = g.levels();
    for l in &levels {
        let _ = writeln!(s, "  {} [shape=plaintext, label=\"{}\"];", quote(&format!("level {l}")), l);
    }
    for w in levels.windows(2) {
        let _ = writeln!(s, "  {} -> {} [style=invis];", quote(&format!("level {}", w[0])), quote(&format!("level {}", w[1])));
    }
    for l in &levels {
        let mut members: Vec<&Node> = g.nodes.iter().filter(|n| n.orbit_dim == *l).collect();
        members.sort_by(|a, b| a.key.cmp(&b.key));
        let _ = write!(s, "  {{ rank=same; {};", quote(&format!("level {l}")));
        for m in &members {
            let _ = write!(s, " {};", quote(&m.key));
        }
        let _ = writeln!(s, " }}");
    }
    let mut sorted: Vec<&Node> = g.nodes.iter().collect();
    sorted.sort_by(|a, b| a.key.cmp(&b.key));
    for n in sorted {
        let _ = writeln!(s, "  {} [{}];", quote(&n.key), style(n.kind));
    }
    let mut edges = if opts.reduce { g.transitive_reduction() } else { g.edges() };
    edges.sort();
    for (a, b) in edges {
        let _ = writeln!(s, "  {} -> {};", quote(&a), quote(&b));
    }
    if opts.legend {
        let _ = writeln!(s, "  subgraph cluster_legend {{");
        let _ = writeln!(s, "    label=\"legend\";");
        for k in [NodeKind::Associative, NodeKind::Lie, NodeKind::Mixed, NodeKind::Family] {
            let _ = writeln!(s, "    {} [{}];", quote(&format!("legend: {}", k.name())), style(k));
        }
        let _ = writeln!(s, "  }}");
    }
    let _ = writeln!(s, "}}");
    s
}
