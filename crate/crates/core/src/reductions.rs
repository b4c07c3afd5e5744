//! Homotopy-preserving rewrites of graphs with respect to their independence
//! complexes, and a deterministic driver that records every step.
//!
//! Rules:
//!
//! * fold: if `N(w) ⊆ N(v)` for some `w ≠ v`, then `I(G) ≃ I(G \ v)`;
//! * string deletion: if `v` is the base of a pendant path on `3k + 2`
//!   vertices whose next vertex is `w`, then `I(G) ≃ I(G \ (N(v) \ {w}))`;
//! * link-contractible deletion: if `I(G \ N[v])` is contractible, then
//!   `I(G) ≃ I(G \ v)`;
//! * component split: `I(G_1 ⊔ G_2) = I(G_1) * I(G_2)`;
//! * simplicial split: if `N(v)` is a clique, then
//!   `I(G) ≃ ⋁_{w ∈ N(v)} Σ I(G \ N[w])`;
//! * leaves: paths and cycles are closed with the Kozlov table.

use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::complexes::ComplexError;
use crate::graphs::{Graph, GraphError, VertexLabel};
use crate::homology::{independence_homology, HomologyProfile};
use crate::theory::{kozlov, kozlov_graph_type, HomotopyType, KozlovGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rule {
    Fold,
    StringDelete,
    LinkContractibleDelete,
    ComponentSplit,
    SimplicialSplit,
    KozlovLeaf,
}

impl Rule {
    pub const ALL: [Rule; 6] = [
        Rule::Fold,
        Rule::StringDelete,
        Rule::LinkContractibleDelete,
        Rule::ComponentSplit,
        Rule::SimplicialSplit,
        Rule::KozlovLeaf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Fold => "FOLD",
            Rule::StringDelete => "STRING_DELETE",
            Rule::LinkContractibleDelete => "LINK_CONTRACTIBLE_DELETE",
            Rule::ComponentSplit => "COMPONENT_SPLIT",
            Rule::SimplicialSplit => "SIMPLICIAL_SPLIT",
            Rule::KozlovLeaf => "KOZLOV_LEAF",
        }
    }

    pub fn parse(name: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name().eq_ignore_ascii_case(name))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const DEFAULT_STRATEGY: [Rule; 6] = [
    Rule::ComponentSplit,
    Rule::KozlovLeaf,
    Rule::Fold,
    Rule::StringDelete,
    Rule::LinkContractibleDelete,
    Rule::SimplicialSplit,
];

/// One rule application.
///
/// `vertices` lists, per rule: the deleted vertex and then the witness `w`
/// (fold); the string base and then the deleted vertices (string deletion);
/// the deleted vertex (link-contractible deletion); the smallest vertex of
/// each component (component split); the simplicial vertex and then its
/// neighbors (simplicial split); nothing (leaf). For splits `after_hash`
/// combines the digests of the pieces in order; for leaves it equals
/// `before_hash`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub rule: Rule,
    pub vertices: Vec<VertexLabel>,
    pub before_hash: String,
    pub after_hash: String,
}

/// Expression tree produced by [`reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomotopyExpr {
    Closed(HomotopyType),
    Residual(Graph),
    Wedge(Vec<HomotopyExpr>),
    Join(Vec<HomotopyExpr>),
    Suspend(u32, Box<HomotopyExpr>),
}

impl HomotopyExpr {
    /// Residual graphs left in the tree, in order.
    pub fn residuals(&self) -> Vec<&Graph> {
        let mut out = Vec::new();
        self.collect_residuals(&mut out);
        out
    }

    fn collect_residuals<'a>(&'a self, out: &mut Vec<&'a Graph>) {
        match self {
            HomotopyExpr::Closed(_) => {}
            HomotopyExpr::Residual(g) => out.push(g),
            HomotopyExpr::Wedge(parts) | HomotopyExpr::Join(parts) => {
                parts.iter().for_each(|p| p.collect_residuals(out))
            }
            HomotopyExpr::Suspend(_, inner) => inner.collect_residuals(out),
        }
    }
}

impl fmt::Display for HomotopyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, parts: &[HomotopyExpr]| {
            write!(f, "{name}(")?;
            for (k, p) in parts.iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")
        };
        match self {
            HomotopyExpr::Closed(h) => write!(f, "{h}"),
            HomotopyExpr::Residual(g) => {
                write!(f, "I[{} vertices, {} edges]", g.vertex_count(), g.edge_count())
            }
            HomotopyExpr::Wedge(parts) => list(f, "WEDGE", parts),
            HomotopyExpr::Join(parts) => list(f, "JOIN", parts),
            HomotopyExpr::Suspend(k, inner) => write!(f, "SUSPEND({k}, {inner})"),
        }
    }
}

struct ResidualJson<'a>(&'a Graph);

impl Serialize for ResidualJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Residual", 3)?;
        s.serialize_field("vertices", self.0.labels())?;
        s.serialize_field("edges", &self.0.edges())?;
        s.serialize_field("digest", &self.0.digest())?;
        s.end()
    }
}

/// `{"closed": type}`, `{"residual": graph}`, `{"wedge": [...]}`,
/// `{"join": [...]}` or `{"suspend": {"k": k, "of": expr}}`.
impl Serialize for HomotopyExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct SuspendJson<'a> {
            k: u32,
            of: &'a HomotopyExpr,
        }
        let mut map = serializer.serialize_map(Some(1))?;
        match self {
            HomotopyExpr::Closed(h) => map.serialize_entry("closed", h)?,
            HomotopyExpr::Residual(g) => map.serialize_entry("residual", &ResidualJson(g))?,
            HomotopyExpr::Wedge(parts) => map.serialize_entry("wedge", parts)?,
            HomotopyExpr::Join(parts) => map.serialize_entry("join", parts)?,
            HomotopyExpr::Suspend(k, inner) => map.serialize_entry("suspend", &SuspendJson { k: *k, of: inner })?,
        }
        map.end()
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    // both sorted
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// `g \ v` if `N(w) ⊆ N(v)`, `None` otherwise.
pub fn try_fold(g: &Graph, v: usize, w: usize) -> Result<Option<Graph>, GraphError> {
    g.check_vertex(v)?;
    g.check_vertex(w)?;
    if v == w {
        return Err(GraphError::InvalidParameter("fold needs two distinct vertices".into()));
    }
    if is_subset(g.neighbors(w), g.neighbors(v)) {
        Ok(Some(g.delete_vertex(v)?))
    } else {
        Ok(None)
    }
}

/// Lowest `(v, w)` with `N(w) ⊆ N(v)`, `v` being the vertex to delete.
pub fn find_fold(g: &Graph) -> Option<(usize, usize)> {
    let n = g.vertex_count();
    (0..n).find_map(|v| (0..n).find(|&w| w != v && is_subset(g.neighbors(w), g.neighbors(v))).map(|w| (v, w)))
}

/// A pendant path based at `v`: `vertices` starts at `v`, continues with the
/// neighbor `w` and ends at a degree-one vertex; only `v` may have neighbors
/// outside the path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PendantString {
    pub vertices: Vec<usize>,
    /// The path has `3k + 2` vertices.
    pub k: usize,
}

impl PendantString {
    pub fn base(&self) -> usize {
        self.vertices[0]
    }

    pub fn next(&self) -> usize {
        self.vertices[1]
    }
}

fn walk_pendant(g: &Graph, v: usize, w: usize) -> Option<Vec<usize>> {
    let mut path = vec![v, w];
    let (mut prev, mut cur) = (v, w);
    loop {
        match g.degree(cur) {
            1 => return Some(path),
            2 => {
                let nb = g.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                if next == v || path.contains(&next) {
                    return None;
                }
                path.push(next);
                prev = cur;
                cur = next;
            }
            _ => return None,
        }
    }
}

/// The `(3k + 2)`-string based at `v` through its lowest eligible neighbor.
pub fn find_string(g: &Graph, v: usize) -> Result<Option<PendantString>, GraphError> {
    g.check_vertex(v)?;
    Ok(g.neighbors(v).iter().find_map(|&w| {
        let path = walk_pendant(g, v, w)?;
        (path.len() % 3 == 2).then(|| PendantString { k: (path.len() - 2) / 3, vertices: path })
    }))
}

/// Deletes `U = N(v) \ {w}` for the string found by [`find_string`]. `None`
/// when there is no string or `U` is empty (the component is the string
/// itself).
pub fn string_delete(g: &Graph, v: usize) -> Result<Option<(Graph, Vec<usize>)>, GraphError> {
    let Some(s) = find_string(g, v)? else { return Ok(None) };
    let removed: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| u != s.next()).collect();
    if removed.is_empty() {
        return Ok(None);
    }
    Ok(Some((g.delete_vertices(&removed)?, removed)))
}

/// Sound but incomplete: true only if some component is an isolated vertex
/// or a path on `3k + 1` vertices, possibly after folds inside a component.
pub fn certify_contractible(g: &Graph) -> bool {
    g.connected_components().iter().any(certify_connected)
}

fn certify_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 1 {
        return true;
    }
    if kozlov_graph_type(g) == Some(HomotopyType::Point) {
        return true;
    }
    match find_fold(g) {
        Some((v, _)) => certify_contractible(&g.delete_vertex(v).expect("vertex in range")),
        None => false,
    }
}

/// `g \ v` when `I(g \ N[v])` is certified contractible.
pub fn link_contractible_delete(g: &Graph, v: usize) -> Result<Option<Graph>, GraphError> {
    let link = g.delete_closed_neighborhood(v)?;
    if certify_contractible(&link) {
        Ok(Some(g.delete_vertex(v)?))
    } else {
        Ok(None)
    }
}

pub fn is_simplicial(g: &Graph, v: usize) -> bool {
    g.is_clique(g.neighbors(v))
}

/// `⋁_{w ∈ N(v)} Σ I(g \ N[w])` for a simplicial vertex `v` with at least one
/// neighbor, as a tree over residual leaves.
pub fn simplicial_split(g: &Graph, v: usize) -> Result<Option<HomotopyExpr>, GraphError> {
    g.check_vertex(v)?;
    if g.degree(v) == 0 || !is_simplicial(g, v) {
        return Ok(None);
    }
    let mut parts = Vec::new();
    for &w in g.neighbors(v) {
        parts.push(HomotopyExpr::Suspend(1, Box::new(HomotopyExpr::Residual(g.delete_closed_neighborhood(w)?))));
    }
    Ok(Some(if parts.len() == 1 { parts.pop().unwrap() } else { HomotopyExpr::Wedge(parts) }))
}

/// Every applicable deletion or split on `g`, in rule and vertex order.
/// Used to check the rules one application at a time.
pub fn applications(g: &Graph) -> Vec<(Rule, Vec<usize>, HomotopyExpr)> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for v in 0..n {
        for w in 0..n {
            if w != v {
                if let Some(h) = try_fold(g, v, w).expect("in range") {
                    out.push((Rule::Fold, vec![v, w], HomotopyExpr::Residual(h)));
                }
            }
        }
    }
    for v in 0..n {
        if let Some((h, removed)) = string_delete(g, v).expect("in range") {
            out.push((Rule::StringDelete, [vec![v], removed].concat(), HomotopyExpr::Residual(h)));
        }
    }
    for v in 0..n {
        if let Some(h) = link_contractible_delete(g, v).expect("in range") {
            out.push((Rule::LinkContractibleDelete, vec![v], HomotopyExpr::Residual(h)));
        }
    }
    for v in 0..n {
        if let Some(e) = simplicial_split(g, v).expect("in range") {
            out.push((Rule::SimplicialSplit, vec![v], e));
        }
    }
    out
}

fn combined_hash(graphs: &[&Graph]) -> String {
    let mut hasher = Sha256::new();
    for g in graphs {
        hasher.update(g.digest());
        hasher.update(";");
    }
    hex::encode(&hasher.finalize()[..16])
}

struct Reducer<'a> {
    strategy: &'a [Rule],
    trace: Vec<ReductionStep>,
}

impl Reducer<'_> {
    fn record(&mut self, rule: Rule, g: &Graph, vertices: &[usize], after_hash: String) {
        self.trace.push(ReductionStep {
            rule,
            vertices: vertices.iter().map(|&v| g.label(v)).collect(),
            before_hash: g.digest(),
            after_hash,
        });
    }

    fn run(&mut self, g: Graph) -> HomotopyExpr {
        let mut g = g;
        'outer: loop {
            if g.is_empty() && self.strategy.contains(&Rule::KozlovLeaf) {
                self.record(Rule::KozlovLeaf, &g, &[], g.digest());
                return HomotopyExpr::Closed(kozlov(KozlovGraph::Path, 0).expect("valid"));
            }
            for &rule in self.strategy {
                match rule {
                    Rule::ComponentSplit => {
                        let sets = g.component_vertex_sets();
                        if sets.len() >= 2 {
                            let comps = g.connected_components();
                            let firsts: Vec<usize> = sets.iter().map(|c| c[0]).collect();
                            self.record(rule, &g, &firsts, combined_hash(&comps.iter().collect::<Vec<_>>()));
                            return HomotopyExpr::Join(comps.into_iter().map(|c| self.run(c)).collect());
                        }
                    }
                    Rule::KozlovLeaf => {
                        if let Some(h) = kozlov_graph_type(&g) {
                            self.record(rule, &g, &[], g.digest());
                            return HomotopyExpr::Closed(h);
                        }
                    }
                    Rule::Fold => {
                        if let Some((v, w)) = find_fold(&g) {
                            let h = g.delete_vertex(v).expect("in range");
                            self.record(rule, &g, &[v, w], h.digest());
                            g = h;
                            continue 'outer;
                        }
                    }
                    Rule::StringDelete => {
                        for v in 0..g.vertex_count() {
                            if let Some((h, removed)) = string_delete(&g, v).expect("in range") {
                                self.record(rule, &g, &[vec![v], removed].concat(), h.digest());
                                g = h;
                                continue 'outer;
                            }
                        }
                    }
                    Rule::LinkContractibleDelete => {
                        for v in 0..g.vertex_count() {
                            if let Some(h) = link_contractible_delete(&g, v).expect("in range") {
                                self.record(rule, &g, &[v], h.digest());
                                g = h;
                                continue 'outer;
                            }
                        }
                    }
                    Rule::SimplicialSplit => {
                        if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) > 0 && is_simplicial(&g, v)) {
                            let nbrs = g.neighbors(v).to_vec();
                            let pieces: Vec<Graph> = nbrs
                                .iter()
                                .map(|&w| g.delete_closed_neighborhood(w).expect("in range"))
                                .collect();
                            self.record(
                                rule,
                                &g,
                                &[vec![v], nbrs].concat(),
                                combined_hash(&pieces.iter().collect::<Vec<_>>()),
                            );
                            let mut parts: Vec<HomotopyExpr> = pieces
                                .into_iter()
                                .map(|p| HomotopyExpr::Suspend(1, Box::new(self.run(p))))
                                .collect();
                            return if parts.len() == 1 { parts.pop().unwrap() } else { HomotopyExpr::Wedge(parts) };
                        }
                    }
                }
            }
            return HomotopyExpr::Residual(g);
        }
    }
}

/// Applies the rules in `strategy` order until none fires, lowest vertex
/// first. Deletions continue on the same graph; splits recurse into their
/// pieces.
pub fn reduce(g: &Graph, strategy: &[Rule]) -> (HomotopyExpr, Vec<ReductionStep>) {
    let mut r = Reducer { strategy, trace: Vec::new() };
    let e = r.run(g.clone());
    (e, r.trace)
}

/// Homology of an expression: residual leaves by brute force, wedge as direct
/// sum, suspension as degree shift, join by the Künneth formula.
pub fn expr_homology(e: &HomotopyExpr, budget: usize) -> Result<HomologyProfile, ComplexError> {
    Ok(match e {
        HomotopyExpr::Closed(h) => HomologyProfile::of_type(h),
        HomotopyExpr::Residual(g) => independence_homology(g, budget)?,
        HomotopyExpr::Suspend(k, inner) => expr_homology(inner, budget)?.suspend(*k),
        HomotopyExpr::Wedge(parts) => {
            let profiles = parts.iter().map(|p| expr_homology(p, budget)).collect::<Result<Vec<_>, _>>()?;
            HomologyProfile::wedge(&profiles).unwrap_or_else(|_| {
                // an EMPTY piece inside a wedge cannot come out of a valid split
                panic!("EMPTY summand in {e}")
            })
        }
        HomotopyExpr::Join(parts) => {
            let mut acc = HomologyProfile::empty_complex();
            for p in parts {
                acc = acc.join(&expr_homology(p, budget)?);
            }
            acc
        }
    })
}
