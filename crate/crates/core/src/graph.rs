//! Simple undirected graphs, induced subgraphs, the induced-isomorphism
//! arbiter and structural predicates.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected simple graph on the dense vertex set `0..n`.
///
/// Adjacency is kept both as bit rows (constant-time queries, cheap
/// neighborhood comparisons) and as sorted neighbor lists. Graphs are
/// immutable once built, apart from role labels.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
    neighbors: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Vec<Option<String>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse to one; self-loops and out-of-range endpoints
    /// are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::UnknownVertex { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {u}")));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        let neighbors: Vec<Vec<usize>> = rows.iter().map(|r| r.ones().collect()).collect();
        let edge_count = neighbors.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph {
            rows,
            neighbors,
            edge_count,
            labels: vec![None; n],
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is valid")
    }

    /// Path with `n` vertices `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is valid")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is valid")
    }

    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is valid")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)));
        let mut g = Graph::new(shift + other.n(), edges).expect("union of valid graphs");
        g.labels = self.labels.iter().chain(other.labels.iter()).cloned().collect();
        g
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Self {
        let labels: Vec<Option<String>> = labels.into_iter().map(|s| Some(s.into())).collect();
        assert_eq!(labels.len(), self.n(), "one label per vertex");
        self.labels = labels;
        self
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels[v] = Some(label.into());
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// Vertices whose label is exactly `label`.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Neighborhood of `v` as a bit row over `0..n`.
    #[inline]
    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::UnknownVertex { vertex: v, n: self.n() })
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Partial map from vertices of a first graph to vertices of a second one.
///
/// Injectivity is not enforced on construction; [`is_induced_isomorphism`]
/// rejects non-injective mappings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMapping {
    pairs: Vec<(usize, usize)>,
}

impl VertexMapping {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        VertexMapping { pairs }
    }

    pub fn identity(n: usize) -> Self {
        VertexMapping::new((0..n).map(|v| (v, v)).collect())
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn push(&mut self, u: usize, v: usize) {
        self.pairs.push((u, v));
    }

    pub fn domain(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(u, _)| u).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(_, v)| v).collect()
    }

    pub fn inverse(&self) -> VertexMapping {
        VertexMapping::new(self.pairs.iter().map(|&(u, v)| (v, u)).collect())
    }

    pub fn get(&self, u: usize) -> Option<usize> {
        self.pairs.iter().find(|&&(a, _)| a == u).map(|&(_, b)| b)
    }

    pub fn is_injective(&self) -> bool {
        let mut dom: Vec<usize> = self.domain();
        let mut img: Vec<usize> = self.image();
        dom.sort_unstable();
        img.sort_unstable();
        dom.windows(2).all(|w| w[0] != w[1]) && img.windows(2).all(|w| w[0] != w[1])
    }

    /// Pairs sorted by first coordinate.
    pub fn sorted(mut self) -> Self {
        self.pairs.sort_unstable();
        self
    }
}

impl From<Vec<(usize, usize)>> for VertexMapping {
    fn from(pairs: Vec<(usize, usize)>) -> Self {
        VertexMapping::new(pairs)
    }
}

/// Subgraph induced by `subset`, with vertices renumbered in the order given.
/// Each new vertex is labeled with its original identifier.
pub fn induced_subgraph(g: &Graph, subset: &[usize]) -> Result<Graph> {
    let mut position = vec![usize::MAX; g.n()];
    for (i, &v) in subset.iter().enumerate() {
        g.check_vertex(v)?;
        if position[v] != usize::MAX {
            return Err(Error::Domain(format!("vertex {v} listed twice in subset")));
        }
        position[v] = i;
    }
    let mut edges = Vec::new();
    for (i, &v) in subset.iter().enumerate() {
        for &w in g.neighbors(v) {
            let j = position[w];
            if j != usize::MAX && i < j {
                edges.push((i, j));
            }
        }
    }
    let sub = Graph::new(subset.len(), edges)?;
    Ok(sub.with_labels(subset.iter().map(|v| v.to_string())))
}

/// True iff `mapping` preserves adjacency and non-adjacency between every pair
/// of mapped vertices. This is the arbiter every solver answer goes through.
pub fn is_induced_isomorphism(g1: &Graph, g2: &Graph, mapping: &VertexMapping) -> Result<bool> {
    for &(u, v) in mapping.pairs() {
        g1.check_vertex(u)?;
        g2.check_vertex(v)?;
    }
    if !mapping.is_injective() {
        return Err(Error::NonInjective(format!("{:?}", mapping.pairs())));
    }
    let pairs = mapping.pairs();
    for (i, &(u, v)) in pairs.iter().enumerate() {
        for &(u2, v2) in &pairs[i + 1..] {
            if g1.has_edge(u, u2) != g2.has_edge(v, v2) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Length of the shortest cycle, or the explicit acyclic sentinel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Girth {
    Cycle(usize),
    Acyclic,
}

impl Girth {
    pub fn is_acyclic(self) -> bool {
        matches!(self, Girth::Acyclic)
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Cycle(len) => write!(f, "{len}"),
            Girth::Acyclic => f.write_str("acyclic"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub girth: Girth,
    pub bipartite: bool,
    pub c4_free: bool,
    pub connected: bool,
}

pub fn graph_stats(g: &Graph) -> GraphStats {
    GraphStats {
        girth: girth(g),
        bipartite: is_bipartite(g),
        c4_free: is_c4_free(g),
        connected: is_connected(g),
    }
}

/// Shortest cycle via one BFS per root. The minimum over all roots of
/// `dist[u] + dist[w] + 1` for non-tree edges `uw` is exact.
pub fn girth(g: &Graph) -> Girth {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Acyclic
    } else {
        Girth::Cycle(best)
    }
}

/// Proper 2-coloring if one exists.
pub fn two_coloring(g: &Graph) -> Option<Vec<u8>> {
    let mut color = vec![u8::MAX; g.n()];
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

pub fn is_bipartite(g: &Graph) -> bool {
    two_coloring(g).is_some()
}

/// No (not necessarily induced) 4-cycle: no two vertices share two neighbors.
pub fn is_c4_free(g: &Graph) -> bool {
    for u in g.vertices() {
        for v in u + 1..g.n() {
            let mut common = g.row(u).clone();
            common.intersect_with(g.row(v));
            if common.count_ones(..) >= 2 {
                return false;
            }
        }
    }
    true
}

pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() <= 1
}

/// Maximal connected vertex sets, each sorted, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut components = Vec::new();
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}

/// Whether `subset` induces a connected subgraph. The empty set counts as
/// connected.
pub fn induces_connected(g: &Graph, subset: &[usize]) -> bool {
    if subset.is_empty() {
        return true;
    }
    let mut inside = FixedBitSet::with_capacity(g.n());
    for &v in subset {
        inside.insert(v);
    }
    let mut seen = FixedBitSet::with_capacity(g.n());
    seen.insert(subset[0]);
    let mut stack = vec![subset[0]];
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if inside.contains(w) && !seen.contains(w) {
                seen.insert(w);
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == subset.len()
}

/// Whether the graph has no cycle.
pub fn is_forest(g: &Graph) -> bool {
    g.edge_count() + connected_components(g).len() == g.n()
}

/// All triangles `[a, b, c]` with `a < b < c`.
pub fn triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        for &c in g.neighbors(b) {
            if c > b && g.has_edge(a, c) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Copy of `g` plus one vertex adjacent to every original vertex, labeled
/// `"universal"`.
pub fn add_universal_vertex(g: &Graph) -> Graph {
    let n = g.n();
    let edges = g.edges().chain((0..n).map(|v| (v, n)));
    let mut out = Graph::new(n + 1, edges).expect("valid extension");
    for v in 0..n {
        out.labels[v] = g.labels[v].clone();
    }
    out.set_label(n, "universal");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Graph {
        Graph::path(4)
    }

    #[test]
    fn induced_subgraph_of_triangle_pair() {
        let sub = induced_subgraph(&Graph::complete(3), &[0, 1]).unwrap();
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(sub.label(1), Some("1"));
    }

    #[test]
    fn induced_subgraph_non_adjacent_pair() {
        let sub = induced_subgraph(&p4(), &[0, 2]).unwrap();
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.edge_count(), 0);
    }

    #[test]
    fn induced_subgraph_identity() {
        let g = Graph::cycle(5);
        let all: Vec<usize> = g.vertices().collect();
        let sub = induced_subgraph(&g, &all).unwrap();
        assert_eq!(sub.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn induced_subgraph_unknown_vertex() {
        assert!(matches!(
            induced_subgraph(&p4(), &[0, 7]),
            Err(Error::UnknownVertex { vertex: 7, n: 4 })
        ));
    }

    #[test]
    fn isomorphism_examples() {
        let k3 = Graph::complete(3);
        assert!(is_induced_isomorphism(&k3, &k3, &VertexMapping::identity(3)).unwrap());
        let p3 = Graph::path(3);
        assert!(!is_induced_isomorphism(&p3, &k3, &VertexMapping::identity(3)).unwrap());
    }

    #[test]
    fn non_injective_mapping_is_an_error() {
        let k3 = Graph::complete(3);
        let m = VertexMapping::new(vec![(0, 1), (1, 1)]);
        assert!(matches!(
            is_induced_isomorphism(&k3, &k3, &m),
            Err(Error::NonInjective(_))
        ));
    }

    #[test]
    fn stats_examples() {
        let c5 = graph_stats(&Graph::cycle(5));
        assert_eq!(c5.girth, Girth::Cycle(5));
        assert!(!c5.bipartite && c5.c4_free && c5.connected);

        let forest = Graph::new(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let fs = graph_stats(&forest);
        assert_eq!(fs.girth, Girth::Acyclic);
        assert!(fs.bipartite && !fs.connected);

        let k4 = graph_stats(&Graph::complete(4));
        assert_eq!(k4.girth, Girth::Cycle(3));
        assert!(!k4.bipartite && !k4.c4_free);

        assert_eq!(girth(&Graph::cycle(4)), Girth::Cycle(4));
        assert_eq!(girth(&Graph::cycle(7)), Girth::Cycle(7));
    }

    #[test]
    fn universal_vertex_examples() {
        let star = add_universal_vertex(&Graph::empty(3));
        assert_eq!(star.n(), 4);
        assert_eq!(star.degree(3), 3);
        assert_eq!(star.edge_count(), 3);
        assert_eq!(star.label(3), Some("universal"));

        let k4 = add_universal_vertex(&Graph::complete(3));
        assert_eq!(
            k4.edges().collect::<Vec<_>>(),
            Graph::complete(4).edges().collect::<Vec<_>>()
        );

        let single = add_universal_vertex(&Graph::empty(0));
        assert_eq!(single.n(), 1);
        assert_eq!(single.edge_count(), 0);
    }

    #[test]
    fn components_examples() {
        let two_edges = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(connected_components(&two_edges), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(connected_components(&Graph::cycle(5)).len(), 1);
        assert_eq!(
            connected_components(&Graph::empty(3)),
            vec![vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn triangles_and_forests() {
        assert_eq!(triangles(&Graph::complete(4)).len(), 4);
        assert!(is_forest(&Graph::path(5)));
        assert!(!is_forest(&Graph::cycle(3)));
        assert!(induces_connected(&Graph::path(4), &[1, 2, 3]));
        assert!(!induces_connected(&Graph::path(4), &[0, 2]));
    }

    #[test]
    fn rejects_invalid_edges() {
        assert!(Graph::new(2, [(0, 0)]).is_err());
        assert!(Graph::new(2, [(0, 2)]).is_err());
        let g = Graph::new(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }
}
