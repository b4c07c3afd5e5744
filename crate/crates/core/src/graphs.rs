//! Simple labeled graphs and the polygonal line tiling families.
//!
//! Vertices are addressed by their position in the construction order; every
//! vertex also carries a [`VertexLabel`] that survives induced subgraphs and
//! deletions, so a reduction trace can be read back in terms of the original
//! `a_i` / `b_{i,j}` / `c_{i,j}` names.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex index {index} out of range for a graph with {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(VertexLabel),
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

/// Name of a vertex.
///
/// `A { i }` is the shared edge between gon `i` and gon `i + 1` of a tiling,
/// `B`/`C` are the `j`-th edges of the upper and lower strand of gon `i`, and
/// `Opaque` is used for everything else (paths, cycles, line graphs of
/// arbitrary graphs).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum VertexLabel {
    #[serde(rename = "A")]
    A { i: u32 },
    #[serde(rename = "B")]
    B { i: u32, j: u32 },
    #[serde(rename = "C")]
    C { i: u32, j: u32 },
    #[serde(rename = "OPAQUE")]
    Opaque { id: u64 },
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::A { i } => write!(f, "a_{i}"),
            VertexLabel::B { i, j } => write!(f, "b_{{{i},{j}}}"),
            VertexLabel::C { i, j } => write!(f, "c_{{{i},{j}}}"),
            VertexLabel::Opaque { id } => write!(f, "v{id}"),
        }
    }
}

/// A finite simple undirected graph with labeled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<VertexLabel>,
    // sorted, no duplicates, symmetric
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexLabel>,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn empty() -> Self {
        Graph { labels: Vec::new(), adj: Vec::new() }
    }

    /// Builds a graph, rejecting loops, repeated edges, repeated labels and
    /// out-of-range endpoints.
    pub fn from_edges(
        labels: Vec<VertexLabel>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let count = labels.len();
        let mut seen = HashSet::with_capacity(count);
        for l in &labels {
            if !seen.insert(*l) {
                return Err(GraphError::DuplicateLabel(*l));
            }
        }
        let mut adj = vec![Vec::new(); count];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= count {
                    return Err(GraphError::VertexOutOfRange { index: x, count });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { labels, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    pub fn index_of(&self, label: VertexLabel) -> Option<usize> {
        self.labels.iter().position(|l| *l == label)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { index: v, count: self.vertex_count() })
        }
    }

    /// `G[S]`. The order of `subset` is irrelevant; the result keeps the
    /// original vertex order.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<Graph, GraphError> {
        for &v in subset {
            self.check_vertex(v)?;
        }
        let keep: BTreeSet<usize> = subset.iter().copied().collect();
        Ok(self.restrict(&keep))
    }

    fn restrict(&self, keep: &BTreeSet<usize>) -> Graph {
        let mut new_index = vec![usize::MAX; self.vertex_count()];
        for (k, &v) in keep.iter().enumerate() {
            new_index[v] = k;
        }
        let labels = keep.iter().map(|&v| self.labels[v]).collect();
        let adj = keep
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| new_index[w] != usize::MAX)
                    .map(|&w| new_index[w])
                    .collect()
            })
            .collect();
        Graph { labels, adj }
    }

    /// `G \ S`.
    pub fn delete_vertices(&self, removed: &[usize]) -> Result<Graph, GraphError> {
        for &v in removed {
            self.check_vertex(v)?;
        }
        let removed: HashSet<usize> = removed.iter().copied().collect();
        let keep = (0..self.vertex_count()).filter(|v| !removed.contains(v)).collect();
        Ok(self.restrict(&keep))
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.delete_vertices(&[v])
    }

    /// `N[v] = N(v) ∪ {v}`, sorted.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.adj[v].clone();
        let pos = out.binary_search(&v).unwrap_err();
        out.insert(pos, v);
        out
    }

    /// `G \ N[v]`.
    pub fn delete_closed_neighborhood(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        self.delete_vertices(&self.closed_neighborhood(v))
    }

    /// Vertex sets of the connected components, each sorted, ordered by their
    /// smallest vertex.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<Graph> {
        self.component_vertex_sets()
            .into_iter()
            .map(|c| self.restrict(&c.into_iter().collect()))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_vertex_sets().len() == 1
    }

    /// Disjoint union; `other`'s vertices follow `self`'s. Fails if a label
    /// occurs on both sides.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let offset = self.vertex_count();
        let labels = self.labels.iter().chain(other.labels.iter()).copied().collect();
        let edges = self
            .edges()
            .into_iter()
            .chain(other.edges().into_iter().map(|(u, v)| (u + offset, v + offset)));
        Graph::from_edges(labels, edges)
    }

    /// Same graph with labels replaced by `Opaque { id: offset + index }`.
    pub fn with_opaque_labels(&self, offset: u64) -> Graph {
        Graph {
            labels: (0..self.vertex_count() as u64).map(|i| VertexLabel::Opaque { id: offset + i }).collect(),
            adj: self.adj.clone(),
        }
    }

    /// Whether `vertices` induce a complete graph.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(k, &u)| vertices[k + 1..].iter().all(|&w| self.adjacent(u, w)))
    }

    /// Checks that `map` (vertex of `self` -> vertex of `other`) is a graph
    /// isomorphism.
    pub fn is_isomorphism(&self, other: &Graph, map: &[usize]) -> bool {
        if map.len() != self.vertex_count() || self.vertex_count() != other.vertex_count() {
            return false;
        }
        let mut hit = vec![false; other.vertex_count()];
        for &m in map {
            if m >= hit.len() || hit[m] {
                return false;
            }
            hit[m] = true;
        }
        self.edge_count() == other.edge_count()
            && self.edges().iter().all(|&(u, v)| other.adjacent(map[u], map[v]))
    }

    /// Stable digest of the vertex labels and sorted edge list.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!("vertices:{};", self.vertex_count()));
        for l in &self.labels {
            hasher.update(format!("{l};"));
        }
        hasher.update("edges:");
        for (u, v) in self.edges() {
            hasher.update(format!("{u}-{v};"));
        }
        hex::encode(&hasher.finalize()[..16])
    }

    pub fn to_json(&self) -> String {
        let json = GraphJson {
            vertices: self.labels.clone(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&json).expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        let json: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Graph::from_edges(json.vertices, json.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

fn opaque_labels(range: std::ops::Range<u64>) -> Vec<VertexLabel> {
    range.map(|id| VertexLabel::Opaque { id }).collect()
}

/// `P_k`, vertices labeled `1..=k`. `k = 0` gives the empty graph.
pub fn path_graph(k: usize) -> Graph {
    let edges = (1..k).map(|i| (i - 1, i));
    Graph::from_edges(opaque_labels(1..k as u64 + 1), edges).expect("path is simple")
}

/// `C_k` for `k >= 3`, vertices labeled `1..=k`.
pub fn cycle_graph(k: usize) -> Result<Graph, GraphError> {
    if k < 3 {
        return Err(GraphError::InvalidParameter(format!("cycle needs at least 3 vertices, got {k}")));
    }
    let edges = (0..k).map(|i| (i, (i + 1) % k));
    Graph::from_edges(opaque_labels(1..k as u64 + 1), edges)
}

fn check_n(n: usize) -> Result<(), GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidParameter(format!("polygon parameter n must be at least 2, got {n}")));
    }
    Ok(())
}

/// Vertex layout of the tiling: `upper[i]`, `lower[i]` are the endpoints of
/// the `i`-th shared edge, and `upper_inner[i - 1]` / `lower_inner[i - 1]`
/// the `n - 2` interior strand vertices of gon `i`, left to right.
struct TilingLayout {
    upper: Vec<usize>,
    lower: Vec<usize>,
    upper_inner: Vec<Vec<usize>>,
    lower_inner: Vec<Vec<usize>>,
    count: usize,
}

impl TilingLayout {
    fn new(n: usize, t: usize) -> Self {
        let mut next = 0;
        let mut take = || {
            next += 1;
            next - 1
        };
        let mut layout = TilingLayout {
            upper: vec![take()],
            lower: vec![take()],
            upper_inner: Vec::new(),
            lower_inner: Vec::new(),
            count: 0,
        };
        for _ in 1..=t {
            layout.upper_inner.push((0..n - 2).map(|_| take()).collect());
            layout.lower_inner.push((0..n - 2).map(|_| take()).collect());
            layout.upper.push(take());
            layout.lower.push(take());
        }
        layout.count = next;
        layout
    }

    /// Upper strand of gon `i` (1-based) as a vertex walk from left to right.
    fn upper_walk(&self, i: usize) -> Vec<usize> {
        let mut walk = vec![self.upper[i - 1]];
        walk.extend(&self.upper_inner[i - 1]);
        walk.push(self.upper[i]);
        walk
    }

    fn lower_walk(&self, i: usize) -> Vec<usize> {
        let mut walk = vec![self.lower[i - 1]];
        walk.extend(&self.lower_inner[i - 1]);
        walk.push(self.lower[i]);
        walk
    }

    /// Edges of the tiling, each with the line-graph label it corresponds to.
    fn labeled_edges(&self, t: usize) -> Vec<((usize, usize), VertexLabel)> {
        let mut out = Vec::new();
        for i in 0..=t {
            out.push(((self.upper[i], self.lower[i]), VertexLabel::A { i: i as u32 }));
        }
        for i in 1..=t {
            for (walk, upper) in [(self.upper_walk(i), true), (self.lower_walk(i), false)] {
                for (j, w) in walk.windows(2).enumerate() {
                    let (i, j) = (i as u32, j as u32 + 1);
                    let label = if upper { VertexLabel::B { i, j } } else { VertexLabel::C { i, j } };
                    out.push(((w[0], w[1]), label));
                }
            }
        }
        out
    }
}

/// The graph `P_{n,t}` of `t` (2n)-gons glued in a row along shared edges.
///
/// Vertices are opaque, numbered in construction order: the two endpoints of
/// the leftmost shared edge, then for each gon its upper interior strand,
/// lower interior strand, and the endpoints of its right shared edge.
pub fn polygon_line_tiling(n: usize, t: usize) -> Result<Graph, GraphError> {
    check_n(n)?;
    let layout = TilingLayout::new(n, t);
    let edges = layout.labeled_edges(t).into_iter().map(|(e, _)| e);
    Graph::from_edges(opaque_labels(0..layout.count as u64), edges)
}

/// For each vertex of `line_graph(polygon_line_tiling(n, t))`, the label of
/// the corresponding vertex of [`tiling_line_graph`]`(n, t)`.
pub fn tiling_edge_labels(n: usize, t: usize) -> Result<Vec<VertexLabel>, GraphError> {
    check_n(n)?;
    let layout = TilingLayout::new(n, t);
    let mut labeled: Vec<((usize, usize), VertexLabel)> = layout
        .labeled_edges(t)
        .into_iter()
        .map(|((u, v), l)| ((u.min(v), u.max(v)), l))
        .collect();
    // line_graph numbers edges in sorted order
    labeled.sort_unstable();
    Ok(labeled.into_iter().map(|(_, l)| l).collect())
}

/// `L(G)`: one opaque vertex per edge of `g` (id = position in the sorted
/// edge list); two are adjacent iff the edges share an endpoint.
pub fn line_graph(g: &Graph) -> Graph {
    let edges = g.edges();
    let mut incident = vec![Vec::new(); g.vertex_count()];
    for (k, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(k);
        incident[v].push(k);
    }
    let mut line_edges = BTreeSet::new();
    for list in &incident {
        for (a, &e) in list.iter().enumerate() {
            for &f in &list[a + 1..] {
                line_edges.insert((e.min(f), e.max(f)));
            }
        }
    }
    Graph::from_edges(opaque_labels(0..edges.len() as u64), line_edges).expect("line graph is simple")
}

fn strand_graph(n: usize, t: usize, extra: bool) -> Graph {
    let (t32, n32) = (t as u32, n as u32);
    let mut labels: Vec<VertexLabel> = (0..=t32).map(|i| VertexLabel::A { i }).collect();
    for i in 1..=t32 {
        for j in 1..n32 {
            labels.push(VertexLabel::B { i, j });
            labels.push(VertexLabel::C { i, j });
        }
    }
    if extra {
        labels.push(VertexLabel::B { i: t32 + 1, j: 1 });
        labels.push(VertexLabel::C { i: t32 + 1, j: 1 });
    }
    let index = |l: VertexLabel| labels.iter().position(|x| *x == l);
    let mut edges = Vec::new();
    let mut link = |x: VertexLabel, y: VertexLabel| {
        if let (Some(u), Some(v)) = (index(x), index(y)) {
            edges.push((u, v));
        }
    };
    let last = n32 - 1;
    for i in 0..t32 + 1 {
        // the shared edge a_i meets the first strand edges of gon i+1 and
        // the last strand edges of gon i
        link(VertexLabel::A { i }, VertexLabel::B { i: i + 1, j: 1 });
        link(VertexLabel::A { i }, VertexLabel::C { i: i + 1, j: 1 });
        link(VertexLabel::A { i: i + 1 }, VertexLabel::B { i: i + 1, j: last });
        link(VertexLabel::A { i: i + 1 }, VertexLabel::C { i: i + 1, j: last });
    }
    for i in 1..=t32 {
        for j in 1..last {
            link(VertexLabel::B { i, j }, VertexLabel::B { i, j: j + 1 });
            link(VertexLabel::C { i, j }, VertexLabel::C { i, j: j + 1 });
        }
        link(VertexLabel::B { i, j: last }, VertexLabel::B { i: i + 1, j: 1 });
        link(VertexLabel::C { i, j: last }, VertexLabel::C { i: i + 1, j: 1 });
    }
    Graph::from_edges(labels, edges).expect("strand graph is simple")
}

/// `G_{n,t}`: the line graph of `P_{n,t}`, with `a_i` / `b_{i,j}` / `c_{i,j}`
/// labels. `t = 0` is the single vertex `a_0`.
pub fn tiling_line_graph(n: usize, t: usize) -> Result<Graph, GraphError> {
    check_n(n)?;
    Ok(strand_graph(n, t, false))
}

/// `H_{n,t}`: `G_{n,t+1}` induced on `V(G_{n,t}) ∪ {b_{t+1,1}, c_{t+1,1}}`.
pub fn extended_tiling_line_graph(n: usize, t: usize) -> Result<Graph, GraphError> {
    check_n(n)?;
    Ok(strand_graph(n, t, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opaque(id: u64) -> VertexLabel {
        VertexLabel::Opaque { id }
    }

    #[test]
    fn paths_and_cycles() {
        assert_eq!(path_graph(0).vertex_count(), 0);
        let p1 = path_graph(1);
        assert_eq!((p1.vertex_count(), p1.edge_count()), (1, 0));
        let p4 = path_graph(4);
        assert_eq!((p4.vertex_count(), p4.edge_count()), (4, 3));
        assert_eq!(p4.labels()[0], opaque(1));
        let c3 = cycle_graph(3).unwrap();
        assert_eq!(c3.edge_count(), 3);
        let c6 = cycle_graph(6).unwrap();
        assert!((0..6).all(|v| c6.degree(v) == 2));
        assert!(matches!(cycle_graph(2), Err(GraphError::InvalidParameter(_))));
    }

    #[test]
    fn tiling_counts() {
        let hex = polygon_line_tiling(3, 1).unwrap();
        assert_eq!((hex.vertex_count(), hex.edge_count()), (6, 6));
        assert!((0..6).all(|v| hex.degree(v) == 2) && hex.is_connected());
        let t5 = polygon_line_tiling(3, 5).unwrap();
        assert_eq!((t5.vertex_count(), t5.edge_count()), (22, 26));
        let t4 = polygon_line_tiling(4, 4).unwrap();
        assert_eq!((t4.vertex_count(), t4.edge_count()), (26, 29));
        let t0 = polygon_line_tiling(5, 0).unwrap();
        assert_eq!((t0.vertex_count(), t0.edge_count()), (2, 1));
        assert!(polygon_line_tiling(1, 3).is_err());
    }

    #[test]
    fn strand_graph_small_cases() {
        let g0 = tiling_line_graph(3, 0).unwrap();
        assert_eq!(g0.labels(), &[VertexLabel::A { i: 0 }]);
        assert_eq!(g0.edge_count(), 0);

        // G_{2,1} is the 4-cycle a_0 b_{1,1} a_1 c_{1,1}
        let g = tiling_line_graph(2, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        assert!((0..4).all(|v| g.degree(v) == 2) && g.is_connected());

        let g34 = tiling_line_graph(3, 4).unwrap();
        assert_eq!(g34.vertex_count(), 21);
        let h34 = extended_tiling_line_graph(3, 4).unwrap();
        assert_eq!(h34.vertex_count(), 23);

        // H_{3,0} is P_3 centred at a_0
        let h0 = extended_tiling_line_graph(3, 0).unwrap();
        assert_eq!(h0.vertex_count(), 3);
        let a0 = h0.index_of(VertexLabel::A { i: 0 }).unwrap();
        assert_eq!(h0.degree(a0), 2);
        assert_eq!(h0.edge_count(), 2);

        assert_eq!(extended_tiling_line_graph(4, 1).unwrap().vertex_count(), 10);
    }

    #[test]
    fn figure_two_adjacency() {
        let g = tiling_line_graph(3, 4).unwrap();
        let idx = |l| g.index_of(l).unwrap();
        let a = |i| VertexLabel::A { i };
        let b = |i, j| VertexLabel::B { i, j };
        let c = |i, j| VertexLabel::C { i, j };
        assert!(g.adjacent(idx(a(0)), idx(b(1, 1))));
        assert!(g.adjacent(idx(a(0)), idx(c(1, 1))));
        assert!(g.adjacent(idx(a(1)), idx(b(1, 2))));
        assert!(g.adjacent(idx(a(1)), idx(c(1, 2))));
        assert!(g.adjacent(idx(b(1, 2)), idx(b(2, 1))));
        assert!(g.adjacent(idx(a(1)), idx(b(2, 1))));
        assert!(!g.adjacent(idx(a(0)), idx(b(1, 2))));
        // interior shared edges have degree 4, the end ones degree 2
        assert_eq!(g.degree(idx(a(2))), 4);
        assert_eq!(g.degree(idx(a(0))), 2);
        assert_eq!(g.degree(idx(a(4))), 2);
        assert_eq!(g.edge_count(), 4 * 4 + 4 * 2 + 3 * 2);
    }

    #[test]
    fn line_graph_of_path_and_cycle() {
        let lp = line_graph(&path_graph(4));
        assert_eq!((lp.vertex_count(), lp.edge_count()), (3, 2));
        let lc = line_graph(&cycle_graph(6).unwrap());
        assert_eq!((lc.vertex_count(), lc.edge_count()), (6, 6));
        assert!((0..6).all(|v| lc.degree(v) == 2) && lc.is_connected());
    }

    #[test]
    fn induced_and_deleted() {
        let c6 = cycle_graph(6).unwrap();
        let p3 = c6.induced_subgraph(&[2, 0, 1]).unwrap();
        assert_eq!(p3, path_graph(3));
        assert_eq!(c6.induced_subgraph(&[0, 1, 2, 3, 4, 5]).unwrap(), c6);
        assert!(c6.induced_subgraph(&[]).unwrap().is_empty());
        assert!(c6.induced_subgraph(&[6]).is_err());

        let p5 = path_graph(5);
        let rest = p5.delete_closed_neighborhood(2).unwrap();
        assert_eq!(rest.labels(), &[opaque(1), opaque(5)]);
        assert_eq!(rest.edge_count(), 0);

        for v in 0..6 {
            let r = c6.delete_closed_neighborhood(v).unwrap();
            assert_eq!((r.vertex_count(), r.edge_count()), (3, 2));
        }
        let g31 = tiling_line_graph(3, 1).unwrap();
        let r = g31.delete_closed_neighborhood(g31.index_of(VertexLabel::A { i: 1 }).unwrap()).unwrap();
        assert_eq!((r.vertex_count(), r.edge_count()), (3, 2));
        assert!(r.is_connected());
        assert!(c6.delete_closed_neighborhood(9).is_err());
    }

    #[test]
    fn components() {
        let g = path_graph(2).disjoint_union(&path_graph(3).with_opaque_labels(10)).unwrap();
        let comps = g.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].vertex_count(), 2);
        assert_eq!(comps[1].vertex_count(), 3);
        assert_eq!(cycle_graph(6).unwrap().connected_components().len(), 1);
        assert!(Graph::empty().connected_components().is_empty());
    }

    #[test]
    fn json_is_stable() {
        let g = tiling_line_graph(2, 2).unwrap();
        let text = g.to_json();
        assert_eq!(Graph::from_json(&text).unwrap(), g);
        assert!(text.starts_with(r#"{"vertices":[{"kind":"A","i":0}"#));
        let p = path_graph(2).to_json();
        assert_eq!(p, r#"{"vertices":[{"kind":"OPAQUE","id":1},{"kind":"OPAQUE","id":2}],"edges":[[0,1]]}"#);
        assert!(Graph::from_json(r#"{"vertices":[{"kind":"A","i":0}],"edges":[[0,0]]}"#).is_err());
        assert!(Graph::from_json(r#"{"vertices":[{"kind":"A","i":0}],"edges":[[0,3]]}"#).is_err());
        assert!(Graph::from_json("nonsense").is_err());
    }

    #[test]
    fn rejects_bad_edges() {
        let labels = opaque_labels(0..3);
        assert_eq!(Graph::from_edges(labels.clone(), [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::from_edges(labels.clone(), [(2, 2)]), Err(GraphError::SelfLoop(2)));
        assert!(matches!(
            Graph::from_edges(vec![opaque(0), opaque(0)], []),
            Err(GraphError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn digest_depends_on_structure() {
        let a = path_graph(4).digest();
        assert_eq!(a, path_graph(4).digest());
        assert_ne!(a, path_graph(5).digest());
        assert_ne!(cycle_graph(4).unwrap().digest(), path_graph(4).digest());
    }
}
