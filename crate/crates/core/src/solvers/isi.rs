//! Backtracking search for induced embeddings of a pattern into a host.

use fixedbitset::FixedBitSet;

use crate::graph::{is_induced_isomorphism, Graph, VertexMapping};

/// Pattern vertices in search order: repeatedly the vertex with the most
/// already-ordered neighbors, then highest degree, then smallest id.
fn search_order(pattern: &Graph) -> Vec<usize> {
    let n = pattern.n();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| {
                (links[a], pattern.degree(a))
                    .cmp(&(links[b], pattern.degree(b)))
                    .then(b.cmp(&a))
            })
            .expect("an unplaced vertex remains");
        placed[v] = true;
        order.push(v);
        for &w in pattern.neighbors(v) {
            links[w] += 1;
        }
    }
    order
}

struct Embedder<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    order: Vec<usize>,
    /// For each position, an earlier position holding a neighbor (if any).
    anchor: Vec<Option<usize>>,
    /// Position after which the pattern vertex at each position has all its
    /// neighbors placed.
    closes_at: Vec<usize>,
    image: Vec<usize>,
    used: FixedBitSet,
    nodes: u64,
}

impl Embedder<'_> {
    fn consistent(&self, pos: usize, h: usize) -> bool {
        let v = self.order[pos];
        (0..pos).all(|j| {
            let w = self.order[j];
            self.pattern.has_edge(v, w) == self.host.has_edge(h, self.image[j])
        })
    }

    /// Host vertices adjacent to the image of a pattern vertex whose
    /// neighbors are all placed can never be used again. Prune when too few
    /// usable host vertices remain.
    fn enough_room(&self, placed: usize) -> bool {
        let remaining = self.order.len() - placed;
        if remaining == 0 {
            return true;
        }
        let mut dead = self.used.clone();
        for j in 0..placed {
            if self.closes_at[j] < placed {
                dead.union_with(self.host.row(self.image[j]));
            }
        }
        self.host.n() - dead.count_ones(..) >= remaining
    }

    fn search(&mut self, pos: usize) -> bool {
        self.nodes += 1;
        if pos == self.order.len() {
            return true;
        }
        if !self.enough_room(pos) {
            return false;
        }
        let v = self.order[pos];
        let need = self.pattern.degree(v);
        let candidates: Vec<usize> = match self.anchor[pos] {
            Some(j) => self.host.neighbors(self.image[j]).to_vec(),
            None => self.host.vertices().collect(),
        };
        for h in candidates {
            if self.used.contains(h) || self.host.degree(h) < need || !self.consistent(pos, h) {
                continue;
            }
            self.image[pos] = h;
            self.used.insert(h);
            if self.search(pos + 1) {
                return true;
            }
            self.used.set(h, false);
        }
        false
    }
}

/// Finds an embedding of `pattern` as an induced subgraph of `host`.
pub fn isi_backtracking(pattern: &Graph, host: &Graph) -> Option<VertexMapping> {
    isi_backtracking_counted(pattern, host).0
}

/// Same as [`isi_backtracking`], also returning the number of search nodes.
pub fn isi_backtracking_counted(pattern: &Graph, host: &Graph) -> (Option<VertexMapping>, u64) {
    let n = pattern.n();
    if n > host.n() {
        return (None, 0);
    }
    let order = search_order(pattern);
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let anchor = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            pattern
                .neighbors(v)
                .iter()
                .map(|&w| position[w])
                .filter(|&j| j < i)
                .min()
        })
        .collect();
    let closes_at = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            pattern
                .neighbors(v)
                .iter()
                .map(|&w| position[w])
                .fold(i, usize::max)
        })
        .collect();
    let mut e = Embedder {
        pattern,
        host,
        order,
        anchor,
        closes_at,
        image: vec![usize::MAX; n],
        used: FixedBitSet::with_capacity(host.n()),
        nodes: 0,
    };
    if !e.search(0) {
        return (None, e.nodes);
    }
    let mapping = VertexMapping::new(e.order.iter().zip(&e.image).map(|(&v, &h)| (v, h)).collect()).sorted();
    debug_assert!(is_induced_isomorphism(pattern, host, &mapping).unwrap_or(false));
    if is_induced_isomorphism(pattern, host, &mapping).unwrap_or(false) {
        (Some(mapping), e.nodes)
    } else {
        (None, e.nodes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::incidence_graph;

    #[test]
    fn edge_into_edgeless_host() {
        assert!(isi_backtracking(&Graph::complete(2), &Graph::empty(3)).is_none());
    }

    #[test]
    fn c6_into_incidence_of_triangle() {
        let host = incidence_graph(&Graph::complete(3));
        let m = isi_backtracking(&Graph::cycle(6), &host).expect("C6 embeds");
        assert!(is_induced_isomorphism(&Graph::cycle(6), &host, &m).unwrap());
    }

    #[test]
    fn induced_not_plain_subgraph() {
        // P3 is a subgraph of K3 but not an induced one.
        assert!(isi_backtracking(&Graph::path(3), &Graph::complete(3)).is_none());
        assert!(isi_backtracking(&Graph::path(3), &Graph::cycle(4)).is_some());
    }

    #[test]
    fn empty_pattern_always_embeds() {
        let m = isi_backtracking(&Graph::empty(0), &Graph::empty(0)).unwrap();
        assert!(m.is_empty());
    }

    #[test]
    fn packs_disjoint_paths() {
        let pattern = Graph::path(3).disjoint_union(&Graph::path(3));
        assert!(isi_backtracking(&pattern, &Graph::path(7)).is_some());
        assert!(isi_backtracking(&pattern, &Graph::path(6)).is_none());
    }
}
