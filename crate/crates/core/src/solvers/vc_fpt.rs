//! Vertex-cover parameterized search for MCIS and MCCIS.
//!
//! With minimum covers `C1`, `C2` and independent sides `I1`, `I2`, every
//! common induced subgraph fixes a configuration: each cover vertex is
//! matched into the other cover, sent into the other independent set, or
//! left unused; matched cover vertices form a bijection; cover vertices sent
//! across land in some twin class. Twins are interchangeable, so choosing the
//! class is enough. What is left is independent-to-independent matching,
//! done per group of equivalent twin classes at maximum count.
//!
//! Configurations are built cover vertex by cover vertex (all of `C1`, then
//! the unmatched part of `C2`), checking induced-isomorphism constraints on
//! the cover part as each choice is made. A complete configuration is
//! assembled into a mapping and passed to the arbiter.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{Method, SolveQuery, SolveResult, SolveStats};
use crate::graph::{induces_connected, is_induced_isomorphism, Graph, VertexMapping};
use crate::params::{min_vertex_cover, twin_partition, CoverRole, Tripartition, TwinPartition};

/// Per-class signature, `None` for classes excluded from pairing.
type Signatures = Vec<Option<Vec<usize>>>;

/// Twin class `class1` of `I1` matched against twin class `class2` of `I2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPair {
    pub class1: usize,
    pub class2: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverConfiguration {
    pub trip1: Tripartition,
    pub trip2: Tripartition,
    /// `C1,m -> C2,m`.
    pub cover_bijection: Vec<(usize, usize)>,
    /// `C1,i` vertex -> index of a twin class of `I2`.
    pub c1i_assignment: Vec<(usize, usize)>,
    /// `C2,i` vertex -> index of a twin class of `I1`.
    pub c2i_assignment: Vec<(usize, usize)>,
    pub class_pairing: Vec<ClassPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratedConfiguration {
    /// Position of this configuration in the deterministic enumeration order.
    pub index: u64,
    pub configuration: CoverConfiguration,
    pub mapping: VertexMapping,
}

/// `3^k1 * 3^k2 * k! * 2^(k1*k2) * 2^(k2*k1)` with `k = max(k1, k2)`,
/// saturating. Upper bound on the number of configurations the search can
/// reach.
pub fn configuration_bound(k1: usize, k2: usize) -> u128 {
    let k = k1.max(k2);
    let mut acc: u128 = 1;
    let mul = |acc: u128, x: u128| acc.saturating_mul(x);
    for _ in 0..k1 + k2 {
        acc = mul(acc, 3);
    }
    for i in 2..=k as u128 {
        acc = mul(acc, i);
    }
    for _ in 0..2 * k1 * k2 {
        acc = mul(acc, 2);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role1 {
    Unused,
    Matched(usize),
    /// Twin class of `I2` and the concrete member taken.
    ToIndependent(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role2 {
    Unused,
    Matched,
    /// Twin class of `I1` and the concrete member taken.
    ToIndependent(usize, usize),
}

enum Mode<'f> {
    Optimize {
        best_size: usize,
        best: VertexMapping,
    },
    Enumerate(&'f mut dyn FnMut(EnumeratedConfiguration)),
}

struct Search<'a, 'f> {
    g1: &'a Graph,
    g2: &'a Graph,
    c1: Vec<usize>,
    c2: Vec<usize>,
    twins1: TwinPartition,
    twins2: TwinPartition,
    connected: bool,
    role1: Vec<Role1>,
    role2: Vec<Role2>,
    consumed1: Vec<usize>,
    consumed2: Vec<usize>,
    assigned: Vec<(usize, usize)>,
    matched_count: usize,
    c1i_count: usize,
    /// Mapped pairs when phase two started.
    phase_two_base: usize,
    /// Independent vertices of G1 with no neighbor in `C1,i`.
    pairable1: usize,
    leaves: u64,
    validated: u64,
    mode: Mode<'f>,
}

impl<'a, 'f> Search<'a, 'f> {
    fn new(g1: &'a Graph, g2: &'a Graph, connected: bool, mode: Mode<'f>) -> Self {
        let split1 = min_vertex_cover(g1);
        let split2 = min_vertex_cover(g2);
        let twins1 = twin_partition(g1, &split1);
        let twins2 = twin_partition(g2, &split2);
        Search {
            g1,
            g2,
            role1: vec![Role1::Unused; split1.size()],
            role2: vec![Role2::Unused; split2.size()],
            consumed1: vec![0; twins1.len()],
            consumed2: vec![0; twins2.len()],
            c1: split1.cover,
            c2: split2.cover,
            twins1,
            twins2,
            connected,
            assigned: Vec::new(),
            matched_count: 0,
            c1i_count: 0,
            phase_two_base: 0,
            pairable1: 0,
            leaves: 0,
            validated: 0,
            mode,
        }
    }

    fn independent1(&self) -> usize {
        self.g1.n() - self.c1.len()
    }

    fn independent2(&self) -> usize {
        self.g2.n() - self.c2.len()
    }

    fn prune_below(&self) -> Option<usize> {
        match &self.mode {
            Mode::Optimize { best_size, .. } => Some(*best_size),
            Mode::Enumerate(_) => None,
        }
    }

    fn consistent(&self, u: usize, v: usize) -> bool {
        self.assigned
            .iter()
            .all(|&(u2, v2)| self.g1.has_edge(u, u2) == self.g2.has_edge(v, v2))
    }

    fn phase_one(&mut self, a: usize) {
        if let Some(best) = self.prune_below() {
            let remaining = self.c1.len() - a;
            let room_in_g2 =
                (self.c2.len() - self.matched_count) + (self.independent2() - self.c1i_count);
            let ub = (self.assigned.len() + remaining + self.independent1().min(room_in_g2))
                .min(self.g2.n());
            if ub <= best {
                return;
            }
        }
        if a == self.c1.len() {
            self.start_phase_two();
            return;
        }
        let c = self.c1[a];

        for b in 0..self.c2.len() {
            let d = self.c2[b];
            if self.role2[b] == Role2::Matched || !self.consistent(c, d) {
                continue;
            }
            self.role1[a] = Role1::Matched(d);
            self.role2[b] = Role2::Matched;
            self.assigned.push((c, d));
            self.matched_count += 1;
            self.phase_one(a + 1);
            self.matched_count -= 1;
            self.assigned.pop();
            self.role2[b] = Role2::Unused;
        }

        for s in 0..self.twins2.len() {
            let members = &self.twins2.classes[s].members;
            if self.consumed2[s] == members.len() {
                continue;
            }
            let y = members[self.consumed2[s]];
            if !self.consistent(c, y) {
                continue;
            }
            self.role1[a] = Role1::ToIndependent(s, y);
            self.consumed2[s] += 1;
            self.assigned.push((c, y));
            self.c1i_count += 1;
            self.phase_one(a + 1);
            self.c1i_count -= 1;
            self.assigned.pop();
            self.consumed2[s] -= 1;
        }

        self.role1[a] = Role1::Unused;
        self.phase_one(a + 1);
    }

    fn start_phase_two(&mut self) {
        let in_c1i = self.c1i_mask();
        self.pairable1 = self
            .twins1
            .classes
            .iter()
            .filter(|class| class.neighborhood.iter().all(|&w| !in_c1i.contains(w)))
            .map(|class| class.members.len())
            .sum();
        self.phase_two_base = self.assigned.len();
        self.phase_two(0);
    }

    fn phase_two(&mut self, b: usize) {
        if let Some(best) = self.prune_below() {
            let sent = self.assigned.len() - self.phase_two_base;
            let open = (b..self.c2.len())
                .filter(|&i| self.role2[i] != Role2::Matched)
                .count();
            let pairable = self.pairable1.min(self.independent2() - self.c1i_count);
            let ub = self.assigned.len() + (self.independent1() - sent).min(open + pairable);
            if ub <= best {
                return;
            }
        }
        if b == self.c2.len() {
            self.leaf();
            return;
        }
        if self.role2[b] == Role2::Matched {
            self.phase_two(b + 1);
            return;
        }
        let d = self.c2[b];
        for r in 0..self.twins1.len() {
            let members = &self.twins1.classes[r].members;
            if self.consumed1[r] == members.len() {
                continue;
            }
            let x = members[self.consumed1[r]];
            if !self.consistent(x, d) {
                continue;
            }
            self.role2[b] = Role2::ToIndependent(r, x);
            self.consumed1[r] += 1;
            self.assigned.push((x, d));
            self.phase_two(b + 1);
            self.assigned.pop();
            self.consumed1[r] -= 1;
        }
        self.role2[b] = Role2::Unused;
        self.phase_two(b + 1);
    }

    fn c1i_mask(&self) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(self.g1.n());
        for (a, role) in self.role1.iter().enumerate() {
            if let Role1::ToIndependent(..) = role {
                mask.insert(self.c1[a]);
            }
        }
        mask
    }

    /// Cover-neighborhood signature of each twin class as seen through the
    /// cover bijection, or `None` when the class cannot take part in
    /// independent-to-independent matching under this configuration.
    fn signatures(&self) -> (Signatures, Signatures) {
        let mut image_of = vec![usize::MAX; self.g1.n()];
        let mut in_c1i = vec![false; self.g1.n()];
        for (a, role) in self.role1.iter().enumerate() {
            match *role {
                Role1::Matched(d) => image_of[self.c1[a]] = d,
                Role1::ToIndependent(..) => in_c1i[self.c1[a]] = true,
                Role1::Unused => {}
            }
        }
        let mut matched2 = vec![false; self.g2.n()];
        let mut in_c2i = vec![false; self.g2.n()];
        for (b, role) in self.role2.iter().enumerate() {
            match role {
                Role2::Matched => matched2[self.c2[b]] = true,
                Role2::ToIndependent(..) => in_c2i[self.c2[b]] = true,
                Role2::Unused => {}
            }
        }
        let sig1 = self
            .twins1
            .classes
            .iter()
            .enumerate()
            .map(|(r, class)| {
                if self.consumed1[r] == class.members.len()
                    || class.neighborhood.iter().any(|&w| in_c1i[w])
                {
                    return None;
                }
                let mut sig: Vec<usize> = class
                    .neighborhood
                    .iter()
                    .filter(|&&w| image_of[w] != usize::MAX)
                    .map(|&w| image_of[w])
                    .collect();
                sig.sort_unstable();
                (!(self.connected && sig.is_empty())).then_some(sig)
            })
            .collect();
        let sig2 = self
            .twins2
            .classes
            .iter()
            .enumerate()
            .map(|(s, class)| {
                if self.consumed2[s] == class.members.len()
                    || class.neighborhood.iter().any(|&w| in_c2i[w])
                {
                    return None;
                }
                let sig: Vec<usize> = class
                    .neighborhood
                    .iter()
                    .copied()
                    .filter(|&w| matched2[w])
                    .collect();
                (!(self.connected && sig.is_empty())).then_some(sig)
            })
            .collect();
        (sig1, sig2)
    }

    fn leaf(&mut self) {
        self.leaves += 1;
        let (sig1, sig2) = self.signatures();
        let mut left1: Vec<usize> = self
            .twins1
            .classes
            .iter()
            .zip(&self.consumed1)
            .map(|(c, &used)| c.members.len() - used)
            .collect();
        let mut left2: Vec<usize> = self
            .twins2
            .classes
            .iter()
            .zip(&self.consumed2)
            .map(|(c, &used)| c.members.len() - used)
            .collect();
        let mut pairing = Vec::new();
        for (r, s1) in sig1.iter().enumerate() {
            let Some(s1) = s1 else { continue };
            for (s, s2) in sig2.iter().enumerate() {
                if left1[r] == 0 {
                    break;
                }
                if left2[s] == 0 || s2.as_ref() != Some(s1) {
                    continue;
                }
                let count = left1[r].min(left2[s]);
                left1[r] -= count;
                left2[s] -= count;
                pairing.push(ClassPair {
                    class1: r,
                    class2: s,
                    count,
                });
            }
        }
        let size = self.assigned.len() + pairing.iter().map(|p| p.count).sum::<usize>();
        if let Some(best) = self.prune_below() {
            if size <= best {
                return;
            }
        }

        let mut pairs = self.assigned.clone();
        let mut next1 = self.consumed1.clone();
        let mut next2 = self.consumed2.clone();
        for p in &pairing {
            let m1 = &self.twins1.classes[p.class1].members;
            let m2 = &self.twins2.classes[p.class2].members;
            for _ in 0..p.count {
                pairs.push((m1[next1[p.class1]], m2[next2[p.class2]]));
                next1[p.class1] += 1;
                next2[p.class2] += 1;
            }
        }
        let mapping = VertexMapping::new(pairs).sorted();
        self.validated += 1;
        let valid = is_induced_isomorphism(self.g1, self.g2, &mapping).unwrap_or(false);
        debug_assert!(valid, "configuration produced an invalid mapping");
        if !valid {
            return;
        }
        if self.connected
            && !(induces_connected(self.g1, &mapping.domain())
                && induces_connected(self.g2, &mapping.image()))
        {
            return;
        }
        if let Mode::Optimize { best_size, best } = &mut self.mode {
            *best_size = size;
            *best = mapping;
            return;
        }
        let item = EnumeratedConfiguration {
            index: self.leaves - 1,
            configuration: self.configuration(pairing),
            mapping,
        };
        if let Mode::Enumerate(f) = &mut self.mode {
            f(item);
        }
    }

    fn configuration(&self, class_pairing: Vec<ClassPair>) -> CoverConfiguration {
        let roles1: Vec<CoverRole> = self
            .role1
            .iter()
            .map(|r| match r {
                Role1::Unused => CoverRole::Unused,
                Role1::Matched(_) => CoverRole::Matched,
                Role1::ToIndependent(..) => CoverRole::ToIndependent,
            })
            .collect();
        let roles2: Vec<CoverRole> = self
            .role2
            .iter()
            .map(|r| match r {
                Role2::Unused => CoverRole::Unused,
                Role2::Matched => CoverRole::Matched,
                Role2::ToIndependent(..) => CoverRole::ToIndependent,
            })
            .collect();
        let mut cover_bijection = Vec::new();
        let mut c1i_assignment = Vec::new();
        for (a, role) in self.role1.iter().enumerate() {
            match *role {
                Role1::Matched(d) => cover_bijection.push((self.c1[a], d)),
                Role1::ToIndependent(s, _) => c1i_assignment.push((self.c1[a], s)),
                Role1::Unused => {}
            }
        }
        let c2i_assignment = self
            .role2
            .iter()
            .enumerate()
            .filter_map(|(b, role)| match *role {
                Role2::ToIndependent(r, _) => Some((self.c2[b], r)),
                _ => None,
            })
            .collect();
        CoverConfiguration {
            trip1: Tripartition::from_roles(&self.c1, &roles1),
            trip2: Tripartition::from_roles(&self.c2, &roles2),
            cover_bijection,
            c1i_assignment,
            c2i_assignment,
            class_pairing,
        }
    }

    fn stats(&self) -> SolveStats {
        SolveStats {
            configurations: self.leaves,
            candidates_validated: self.validated,
            cover_sizes: Some((self.c1.len(), self.c2.len())),
        }
    }
}

/// Exact MCIS (or MCCIS with `q.connected`) by the vertex-cover search.
///
/// Among equal-size optima the first one in enumeration order wins; the
/// single-vertex solution comes first. Empty inputs give size 0.
pub fn mcis_vc_fpt(q: &SolveQuery) -> SolveResult {
    if q.g1.n() == 0 || q.g2.n() == 0 {
        return SolveResult {
            size: 0,
            witness: VertexMapping::default(),
            method: Method::VcFpt,
            stats: SolveStats::default(),
        };
    }
    let mode = Mode::Optimize {
        best_size: 1,
        best: VertexMapping::new(vec![(0, 0)]),
    };
    let mut search = Search::new(&q.g1, &q.g2, q.connected, mode);
    search.phase_one(0);
    let stats = search.stats();
    let Mode::Optimize { best_size, best } = search.mode else {
        unreachable!()
    };
    SolveResult {
        size: best_size,
        witness: best,
        method: Method::VcFpt,
        stats,
    }
}

/// Streams every validated configuration with its maximal mapping, in
/// enumeration order. With `connected`, only configurations whose assembled
/// mapping is connected are reported.
pub fn for_each_configuration(
    g1: &Graph,
    g2: &Graph,
    connected: bool,
    mut f: impl FnMut(EnumeratedConfiguration),
) -> SolveStats {
    let mut search = Search::new(g1, g2, connected, Mode::Enumerate(&mut f));
    search.phase_one(0);
    search.stats()
}

/// All validated configurations for MCIS on the pair.
pub fn enumerate_configurations(g1: &Graph, g2: &Graph) -> Vec<EnumeratedConfiguration> {
    let mut out = Vec::new();
    for_each_configuration(g1, g2, false, |item| out.push(item));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{check_witness, mcis_bruteforce};

    #[test]
    fn path_against_triangle_matches_oracle() {
        let q = SolveQuery::mcis(Graph::path(3), Graph::complete(3));
        let r = mcis_vc_fpt(&q);
        assert_eq!(r.size, 2);
        assert_eq!(r.size, mcis_bruteforce(&q).unwrap().size);
        check_witness(&q, &r).unwrap();
    }

    #[test]
    fn self_match_of_connected_graph() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]).unwrap();
        for connected in [false, true] {
            let q = SolveQuery::new(g.clone(), g.clone(), connected);
            let r = mcis_vc_fpt(&q);
            assert_eq!(r.size, 6);
            check_witness(&q, &r).unwrap();
        }
    }

    #[test]
    fn edgeless_pair_uses_all_independent_configuration() {
        let q = SolveQuery::mcis(Graph::empty(5), Graph::empty(3));
        let r = mcis_vc_fpt(&q);
        assert_eq!(r.size, 3);
        assert_eq!(r.stats.cover_sizes, Some((0, 0)));
        assert_eq!(r.stats.configurations, 1);
        // Connected: only single vertices.
        let q = SolveQuery::mccis(Graph::empty(5), Graph::empty(3));
        assert_eq!(mcis_vc_fpt(&q).size, 1);
    }

    #[test]
    fn empty_inputs() {
        let q = SolveQuery::mccis(Graph::empty(0), Graph::complete(2));
        let r = mcis_vc_fpt(&q);
        assert_eq!(r.size, 0);
        assert!(r.witness.is_empty());
    }

    #[test]
    fn k2_pair_has_fully_matched_configuration() {
        let k2 = Graph::complete(2);
        let all = enumerate_configurations(&k2, &k2);
        assert!(all.iter().any(|item| {
            item.configuration.cover_bijection.len() == 1 && item.mapping.len() == 2
        }));
        for item in &all {
            assert!(is_induced_isomorphism(&k2, &k2, &item.mapping).unwrap());
        }
    }

    #[test]
    fn triangle_against_path_never_reaches_three() {
        let all = enumerate_configurations(&Graph::complete(3), &Graph::path(3));
        assert!(!all.is_empty());
        assert!(all.iter().all(|item| item.mapping.len() < 3));
        assert_eq!(all.iter().map(|i| i.mapping.len()).max(), Some(2));
    }

    #[test]
    fn enumeration_respects_counter_bound() {
        let g1 = Graph::cycle(5);
        let g2 = Graph::new(5, [(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        let stats = for_each_configuration(&g1, &g2, false, |_| {});
        let (k1, k2) = stats.cover_sizes.unwrap();
        assert!(u128::from(stats.configurations) <= configuration_bound(k1, k2));
    }

    #[test]
    fn bound_formula() {
        assert_eq!(configuration_bound(0, 0), 1);
        // 3 * 3 * 1! * 2^1 * 2^1
        assert_eq!(configuration_bound(1, 1), 36);
        // 9 * 3 * 2! * 2^2 * 2^2
        assert_eq!(configuration_bound(2, 1), 864);
        assert_eq!(configuration_bound(40, 40), u128::MAX);
    }

    #[test]
    fn configurations_are_internally_consistent() {
        let g1 = Graph::new(6, [(0, 1), (0, 2), (0, 3), (1, 4), (4, 5)]).unwrap();
        let g2 = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        for item in enumerate_configurations(&g1, &g2) {
            let c = &item.configuration;
            assert_eq!(c.trip1.matched.len(), c.trip2.matched.len());
            assert_eq!(c.cover_bijection.len(), c.trip1.matched.len());
            assert_eq!(c.c1i_assignment.len(), c.trip1.to_independent.len());
            assert_eq!(c.c2i_assignment.len(), c.trip2.to_independent.len());
            let paired: usize = c.class_pairing.iter().map(|p| p.count).sum();
            assert_eq!(
                item.mapping.len(),
                c.cover_bijection.len() + c.c1i_assignment.len() + c.c2i_assignment.len() + paired
            );
        }
    }
}
