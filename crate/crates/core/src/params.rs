//! Structural parameters (minimum vertex cover, minimum feedback vertex set)
//! and the combinatorial scaffolding of the vertex-cover algorithm: twin
//! classes of the independent side and tripartitions of a cover.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A vertex cover together with the independent set it leaves behind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSplit {
    pub cover: Vec<usize>,
    pub independent: Vec<usize>,
}

impl CoverSplit {
    /// Validates that `cover` touches every edge of `g`.
    pub fn new(g: &Graph, mut cover: Vec<usize>) -> Result<Self> {
        cover.sort_unstable();
        cover.dedup();
        let mut in_cover = vec![false; g.n()];
        for &c in &cover {
            if c >= g.n() {
                return Err(Error::UnknownVertex { vertex: c, n: g.n() });
            }
            in_cover[c] = true;
        }
        if let Some((u, v)) = g.edges().find(|&(u, v)| !in_cover[u] && !in_cover[v]) {
            return Err(Error::Domain(format!("edge {u}-{v} is not covered")));
        }
        let independent = g.vertices().filter(|&v| !in_cover[v]).collect();
        Ok(CoverSplit { cover, independent })
    }

    pub fn size(&self) -> usize {
        self.cover.len()
    }
}

pub fn is_vertex_cover(g: &Graph, set: &[usize]) -> bool {
    let mut inside = vec![false; g.n()];
    for &v in set {
        if v >= g.n() {
            return false;
        }
        inside[v] = true;
    }
    g.edges().all(|(u, v)| inside[u] || inside[v])
}

/// Exact branch-and-bound for the vertex cover number of `g[alive]`.
struct CoverSearch<'a> {
    g: &'a Graph,
    best: usize,
}

impl CoverSearch<'_> {
    fn live_degree(&self, alive: &FixedBitSet, v: usize) -> usize {
        self.g.row(v).intersection(alive).count()
    }

    fn search(&mut self, mut alive: FixedBitSet, mut taken: usize) {
        // Degree-0 vertices drop out; a degree-1 vertex puts its neighbor in.
        loop {
            let mut changed = false;
            let verts: Vec<usize> = alive.ones().collect();
            for v in verts {
                if !alive.contains(v) {
                    continue;
                }
                let mut live = self.g.row(v).intersection(&alive);
                match live.next() {
                    None => {
                        alive.set(v, false);
                        changed = true;
                    }
                    Some(u) if live.next().is_none() => {
                        alive.set(u, false);
                        alive.set(v, false);
                        taken += 1;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        if taken >= self.best {
            return;
        }
        let mut max_v = usize::MAX;
        let mut max_d = 0;
        let mut degree_sum = 0;
        for v in alive.ones() {
            let d = self.live_degree(&alive, v);
            degree_sum += d;
            if d > max_d {
                max_d = d;
                max_v = v;
            }
        }
        if max_d == 0 {
            self.best = taken;
            return;
        }
        let live_edges = degree_sum / 2;
        if taken + live_edges.div_ceil(max_d) >= self.best {
            return;
        }
        // Either v is in the cover, or every neighbor of v is.
        let mut with_v = alive.clone();
        with_v.set(max_v, false);
        self.search(with_v, taken + 1);

        let mut without_v = alive;
        let nbrs: Vec<usize> = self.g.row(max_v).intersection(&without_v).collect();
        without_v.set(max_v, false);
        for &u in &nbrs {
            without_v.set(u, false);
        }
        self.search(without_v, taken + nbrs.len());
    }
}

fn cover_number_of(g: &Graph, alive: &FixedBitSet) -> usize {
    let mut s = CoverSearch {
        g,
        best: alive.count_ones(..) + 1,
    };
    s.search(alive.clone(), 0);
    s.best
}

pub fn vertex_cover_number(g: &Graph) -> usize {
    let mut all = FixedBitSet::with_capacity(g.n());
    all.insert_range(..);
    cover_number_of(g, &all)
}

/// Minimum vertex cover; among all minimum covers, the lexicographically
/// smallest sorted vertex list.
///
/// The optimum size comes from the branching search; the cover itself is
/// fixed one vertex at a time in increasing id order, keeping a vertex iff
/// an optimal cover consistent with earlier decisions contains it.
pub fn min_vertex_cover(g: &Graph) -> CoverSplit {
    let optimum = vertex_cover_number(g);
    let mut alive = FixedBitSet::with_capacity(g.n());
    alive.insert_range(..);
    let mut chosen = Vec::with_capacity(optimum);
    for v in g.vertices() {
        if !alive.contains(v) {
            continue;
        }
        let mut rest = alive.clone();
        rest.set(v, false);
        let with_v = chosen.len() + 1 + cover_number_of(g, &rest);
        if with_v == optimum {
            chosen.push(v);
            alive = rest;
        } else {
            let nbrs: Vec<usize> = g.row(v).intersection(&alive).collect();
            chosen.extend(nbrs.iter().copied());
            for u in nbrs {
                rest.set(u, false);
            }
            alive = rest;
        }
    }
    debug_assert_eq!(chosen.len(), optimum);
    CoverSplit::new(g, chosen).expect("search produced a cover")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FvsResult {
    pub set: Vec<usize>,
    pub size: usize,
}

/// Whether `g` minus `removed` is acyclic (union-find over surviving edges).
pub fn is_acyclic_without(g: &Graph, removed: &[usize]) -> bool {
    let mut gone = vec![false; g.n()];
    for &v in removed {
        gone[v] = true;
    }
    let mut parent: Vec<usize> = g.vertices().collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (u, v) in g.edges() {
        if gone[u] || gone[v] {
            continue;
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Vertices of the 2-core: what remains after repeatedly deleting vertices of
/// degree at most one. Every cycle, hence every minimal feedback vertex set,
/// lives there.
pub fn two_core(g: &Graph) -> Vec<usize> {
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; g.n()];
    let mut stack: Vec<usize> = g.vertices().filter(|&v| degree[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    g.vertices().filter(|&v| !removed[v]).collect()
}

/// Minimum feedback vertex set by subset enumeration in increasing size,
/// lexicographic within a size. Exponential; meant for small graphs.
pub fn min_feedback_vertex_set(g: &Graph) -> FvsResult {
    let core = two_core(g);
    for size in 0..=core.len() {
        for set in core.iter().copied().combinations(size) {
            if is_acyclic_without(g, &set) {
                return FvsResult { size, set };
            }
        }
    }
    unreachable!("removing the whole 2-core leaves a forest")
}

/// Independent vertices sharing one neighborhood inside the cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinClass {
    pub neighborhood: Vec<usize>,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinPartition {
    pub classes: Vec<TwinClass>,
}

impl TwinPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing `v`, if `v` is an independent vertex.
    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(&v))
    }
}

/// Groups the independent side of `split` by exact neighborhood. Only
/// inhabited classes are stored, ordered by smallest member.
pub fn twin_partition(g: &Graph, split: &CoverSplit) -> TwinPartition {
    let mut index: HashMap<&[usize], usize> = HashMap::new();
    let mut classes: Vec<TwinClass> = Vec::new();
    for &v in &split.independent {
        let nbhd = g.neighbors(v);
        match index.get(nbhd) {
            Some(&i) => classes[i].members.push(v),
            None => {
                index.insert(nbhd, classes.len());
                classes.push(TwinClass {
                    neighborhood: nbhd.to_vec(),
                    members: vec![v],
                });
            }
        }
    }
    TwinPartition { classes }
}

/// Role of a cover vertex in a tripartition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverRole {
    /// Mapped onto the other graph's cover.
    Matched,
    /// Mapped onto the other graph's independent set.
    ToIndependent,
    /// Left out of the common subgraph.
    Unused,
}

impl CoverRole {
    pub const ALL: [CoverRole; 3] = [CoverRole::Matched, CoverRole::ToIndependent, CoverRole::Unused];
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tripartition {
    pub matched: Vec<usize>,
    pub unused: Vec<usize>,
    pub to_independent: Vec<usize>,
}

impl Tripartition {
    pub fn from_roles(cover: &[usize], roles: &[CoverRole]) -> Self {
        let mut t = Tripartition::default();
        for (&v, &role) in cover.iter().zip(roles) {
            match role {
                CoverRole::Matched => t.matched.push(v),
                CoverRole::ToIndependent => t.to_independent.push(v),
                CoverRole::Unused => t.unused.push(v),
            }
        }
        t
    }
}

/// Every assignment of cover vertices to the three roles, `3^|cover|` in
/// total. Odometer order: the first cover vertex varies fastest through
/// matched, to-independent, unused.
pub struct Tripartitions {
    cover: Vec<usize>,
    digits: Vec<u8>,
    remaining: u128,
}

pub fn tripartitions(cover: &[usize]) -> Tripartitions {
    Tripartitions {
        cover: cover.to_vec(),
        digits: vec![0; cover.len()],
        remaining: 3u128.saturating_pow(cover.len() as u32),
    }
}

impl Iterator for Tripartitions {
    type Item = Tripartition;

    fn next(&mut self) -> Option<Tripartition> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let roles: Vec<CoverRole> = self.digits.iter().map(|&d| CoverRole::ALL[d as usize]).collect();
        let item = Tripartition::from_roles(&self.cover, &roles);
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < 3 {
                break;
            }
            *d = 0;
        }
        Some(item)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, usize::try_from(self.remaining).ok())
    }
}
