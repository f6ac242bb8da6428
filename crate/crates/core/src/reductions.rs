//! Gadget builders for the hardness reductions, each returning the produced
//! instance together with certificates that can be re-checked with the
//! graph and parameter routines, plus the brute-force source oracles used to
//! confirm that answers are preserved.

use std::collections::BTreeMap;
use std::path::Path;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    add_universal_vertex, girth, induced_subgraph, is_bipartite, is_c4_free, is_forest, triangles, Girth, Graph,
};
use crate::io::to_edge_list;
use crate::params::{is_vertex_cover, min_feedback_vertex_set, vertex_cover_number};
use crate::solvers::{isi_backtracking, mcis_bruteforce_bounded, SolveQuery, DEFAULT_ORACLE_BOUND};

/// Largest graph for which builders also report an exact vertex cover number.
const PARAMETER_VERTEX_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    CliqueIncidence,
    CrossCompose,
    Universal,
    ThreePartition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    G1,
    G2,
}

/// A checkable claim about a produced instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "claim", rename_all = "snake_case")]
pub enum Certificate {
    VertexCover {
        side: Side,
        vertices: Vec<usize>,
        expected_size: usize,
    },
    UniqueTriangle {
        side: Side,
        triangle: [usize; 3],
    },
    BipartiteWithout {
        side: Side,
        removed: usize,
    },
    Bipartite {
        side: Side,
    },
    C4Free {
        side: Side,
    },
    Acyclic {
        side: Side,
    },
    /// Girth at least `min`, or acyclic.
    GirthAtLeast {
        side: Side,
        min: usize,
    },
    FvsAtMost {
        side: Side,
        bound: usize,
    },
    /// Every vertex whose label starts with `role_prefix` has this degree.
    RoleDegree {
        side: Side,
        role_prefix: String,
        degree: usize,
    },
    VertexCount {
        side: Side,
        expected: usize,
    },
    UniversalDegree {
        side: Side,
        vertex: usize,
        degree: usize,
    },
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub kind: ReductionKind,
    pub g1: Graph,
    pub g2: Graph,
    pub target: usize,
    pub certificates: Vec<Certificate>,
    pub parameters: BTreeMap<String, usize>,
}

impl ReductionOutput {
    pub fn graph(&self, side: Side) -> &Graph {
        match side {
            Side::G1 => &self.g1,
            Side::G2 => &self.g2,
        }
    }
}

/// Bipartite incidence graph: vertex nodes `v_i` first, then one node `e_u_v`
/// per edge (lexicographic) adjacent to both endpoints. Labels are 1-based.
pub fn incidence_graph(g: &Graph) -> Graph {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let inc_edges = edges
        .iter()
        .enumerate()
        .flat_map(|(i, &(u, v))| [(u, n + i), (v, n + i)]);
    let labels = (0..n)
        .map(|v| format!("v_{}", v + 1))
        .chain(edges.iter().map(|&(u, v)| format!("e_{}_{}", u + 1, v + 1)));
    Graph::new(n + edges.len(), inc_edges)
        .expect("incidence edges are valid")
        .with_labels(labels)
}

fn binomial2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Clique to induced subgraph isomorphism on C4-free bipartite graphs: the
/// host is the incidence graph of `g`, the pattern the incidence graph of
/// `K_k`, and the target `k + k(k-1)/2` is the pattern order.
pub fn clique_to_incidence_isi(g: &Graph, k: usize) -> Result<ReductionOutput> {
    if k < 3 {
        return Err(Error::Domain(format!(
            "clique size must be at least 3 (smaller sizes are decidable directly), got {k}"
        )));
    }
    let g1 = incidence_graph(&Graph::complete(k));
    let g2 = incidence_graph(g);
    let target = k + binomial2(k);
    let mut certificates = Vec::new();
    for side in [Side::G1, Side::G2] {
        certificates.push(Certificate::Bipartite { side });
        certificates.push(Certificate::C4Free { side });
        certificates.push(Certificate::GirthAtLeast { side, min: 5 });
        certificates.push(Certificate::RoleDegree {
            side,
            role_prefix: "e_".into(),
            degree: 2,
        });
    }
    certificates.push(Certificate::VertexCount {
        side: Side::G1,
        expected: target,
    });
    certificates.push(Certificate::VertexCount {
        side: Side::G2,
        expected: g.n() + g.edge_count(),
    });
    let mut parameters = BTreeMap::new();
    parameters.insert("k".into(), k);
    Ok(ReductionOutput {
        kind: ReductionKind::CliqueIncidence,
        g1,
        g2,
        target,
        certificates,
        parameters,
    })
}

/// One source instance of Clique: does `graph` contain `l` pairwise adjacent
/// vertices?
#[derive(Clone, Debug)]
pub struct CliqueInstance {
    pub graph: Graph,
    pub l: usize,
}

impl CliqueInstance {
    pub fn new(graph: Graph, l: usize) -> Result<Self> {
        if l > graph.n() {
            return Err(Error::Domain(format!(
                "clique size {l} exceeds vertex count {}",
                graph.n()
            )));
        }
        Ok(CliqueInstance { graph, l })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }
}

/// OR-composition of Clique instances sharing `n` and `l` into one induced
/// subgraph isomorphism instance whose host has a vertex cover of size
/// `n(n-1)/2 + 2` independent of the number of instances.
///
/// Host roles: `p q r`, selectors `a_i`, edge nodes `e_u_v`, vertex nodes
/// `v_i`. Pattern roles: `p q r a`, `e_i` for the edges of `K_l`, `v_i`.
pub fn cross_compose(instances: &[CliqueInstance]) -> Result<ReductionOutput> {
    let first = instances
        .first()
        .ok_or_else(|| Error::EquivalenceClass("no instances given".into()))?;
    let (n, l) = (first.n(), first.l);
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, inst) in instances.iter().enumerate() {
        groups.entry((inst.n(), inst.l)).or_default().push(i + 1);
    }
    if groups.len() > 1 {
        let desc = groups
            .iter()
            .map(|((n, l), ids)| format!("(n={n}, l={l}): instances {ids:?}"))
            .join("; ");
        return Err(Error::EquivalenceClass(desc));
    }
    let t = instances.len();

    // Host.
    let (p, q, r) = (0, 1, 2);
    let a = |i: usize| 3 + i;
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let e_base = 3 + t;
    let v_base = e_base + pairs.len();
    let mut edges = vec![(p, q), (p, r), (q, r)];
    edges.extend((0..t).map(|i| (r, a(i))));
    for (i, inst) in instances.iter().enumerate() {
        for (j, &(u, v)) in pairs.iter().enumerate() {
            if inst.graph.has_edge(u, v) {
                edges.push((a(i), e_base + j));
            }
        }
    }
    for (j, &(u, v)) in pairs.iter().enumerate() {
        edges.push((e_base + j, v_base + u));
        edges.push((e_base + j, v_base + v));
    }
    let labels = ["p".to_string(), "q".into(), "r".into()]
        .into_iter()
        .chain((1..=t).map(|i| format!("a_{i}")))
        .chain(pairs.iter().map(|&(u, v)| format!("e_{}_{}", u + 1, v + 1)))
        .chain((1..=n).map(|i| format!("v_{i}")));
    let g2 = Graph::new(v_base + n, edges)?.with_labels(labels);

    // Pattern.
    let clique_edges: Vec<(usize, usize)> = (0..l).tuple_combinations().collect();
    let pa = 3;
    let pe_base = 4;
    let pv_base = pe_base + clique_edges.len();
    let mut pedges = vec![(p, q), (p, r), (q, r), (r, pa)];
    for (i, &(u, v)) in clique_edges.iter().enumerate() {
        pedges.push((pa, pe_base + i));
        pedges.push((pe_base + i, pv_base + u));
        pedges.push((pe_base + i, pv_base + v));
    }
    let plabels = ["p".to_string(), "q".into(), "r".into(), "a".into()]
        .into_iter()
        .chain((1..=clique_edges.len()).map(|i| format!("e_{i}")))
        .chain((1..=l).map(|i| format!("v_{i}")));
    let g1 = Graph::new(pv_base + l, pedges)?.with_labels(plabels);

    let z: Vec<usize> = [p, r].into_iter().chain(e_base..v_base).collect();
    let z_size = z.len();
    let target = g1.n();
    let certificates = vec![
        Certificate::VertexCover {
            side: Side::G2,
            vertices: z,
            expected_size: binomial2(n) + 2,
        },
        Certificate::UniqueTriangle {
            side: Side::G2,
            triangle: [p, q, r],
        },
        Certificate::BipartiteWithout {
            side: Side::G2,
            removed: p,
        },
        Certificate::VertexCount {
            side: Side::G1,
            expected: 4 + binomial2(l) + l,
        },
        Certificate::VertexCount {
            side: Side::G2,
            expected: 3 + t + binomial2(n) + n,
        },
    ];
    let mut parameters = BTreeMap::new();
    parameters.insert("n".into(), n);
    parameters.insert("l".into(), l);
    parameters.insert("t".into(), t);
    parameters.insert("z_size".into(), z_size);
    let vc1 = vertex_cover_number(&g1);
    parameters.insert("vc_g1".into(), vc1);
    parameters.insert("z_plus_vc_g1".into(), z_size + vc1);
    if g2.n() <= PARAMETER_VERTEX_LIMIT {
        let vc2 = vertex_cover_number(&g2);
        parameters.insert("vc_g2".into(), vc2);
        parameters.insert("vc_g1_plus_vc_g2".into(), vc1 + vc2);
    }
    Ok(ReductionOutput {
        kind: ReductionKind::CrossCompose,
        g1,
        g2,
        target,
        certificates,
        parameters,
    })
}

/// Adds a universal vertex to both graphs. With forests of at least two trees
/// as input, the pattern embeds iff the lifted graphs have a common connected
/// induced subgraph on `|V(g1)| + 1` vertices, and both outputs have a
/// feedback vertex set of size at most one.
pub fn isi_to_mccis(g1: &Graph, g2: &Graph) -> ReductionOutput {
    let out1 = add_universal_vertex(g1);
    let out2 = add_universal_vertex(g2);
    let mut certificates = Vec::new();
    for (side, input) in [(Side::G1, g1), (Side::G2, g2)] {
        certificates.push(Certificate::UniversalDegree {
            side,
            vertex: input.n(),
            degree: input.n(),
        });
        if is_forest(input) {
            certificates.push(Certificate::FvsAtMost { side, bound: 1 });
        }
    }
    let mut parameters = BTreeMap::new();
    parameters.insert("input_n1".into(), g1.n());
    parameters.insert("input_n2".into(), g2.n());
    ReductionOutput {
        kind: ReductionKind::Universal,
        target: g1.n() + 1,
        g1: out1,
        g2: out2,
        certificates,
        parameters,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePartitionInstance {
    pub items: Vec<usize>,
    pub groups: usize,
    pub bound: usize,
}

impl ThreePartitionInstance {
    /// Checks `3m` positive items summing to `m * B`.
    pub fn new(items: Vec<usize>, groups: usize, bound: usize) -> Result<Self> {
        if items.len() != 3 * groups {
            return Err(Error::Domain(format!(
                "expected {} items for {groups} groups, got {}",
                3 * groups,
                items.len()
            )));
        }
        if items.contains(&0) {
            return Err(Error::Domain("items must be positive".into()));
        }
        let sum: usize = items.iter().sum();
        if sum != groups * bound {
            return Err(Error::Domain(format!(
                "items sum to {sum}, expected {groups} * {bound} = {}",
                groups * bound
            )));
        }
        Ok(ThreePartitionInstance {
            items,
            groups,
            bound,
        })
    }

    /// Every item strictly between `B/4` and `B/2`.
    pub fn is_strict(&self) -> bool {
        self.items
            .iter()
            .all(|&a| 4 * a > self.bound && 2 * a < self.bound)
    }
}

/// 3-Partition to induced subgraph isomorphism on forests. The pattern is the
/// disjoint union of paths with `a_i` vertices; the host is `m` paths of
/// `host_len` vertices (default `B + 2`: three pieces per host path need two
/// separating vertices, and the item range rules out four pieces).
pub fn three_partition_to_forest_isi(
    inst: &ThreePartitionInstance,
    host_len: Option<usize>,
) -> Result<ReductionOutput> {
    if !inst.is_strict() {
        let bad: Vec<usize> = inst
            .items
            .iter()
            .copied()
            .filter(|&a| !(4 * a > inst.bound && 2 * a < inst.bound))
            .collect();
        return Err(Error::Soundness(format!(
            "items {bad:?} are outside the open range (B/4, B/2) for B = {}",
            inst.bound
        )));
    }
    let host_len = host_len.unwrap_or(inst.bound + 2);
    let mut g1 = Graph::empty(0);
    for (i, &a) in inst.items.iter().enumerate() {
        let piece = Graph::path(a).with_labels((0..a).map(|_| format!("a_{}", i + 1)));
        g1 = g1.disjoint_union(&piece);
    }
    let mut g2 = Graph::empty(0);
    for j in 0..inst.groups {
        let chain = Graph::path(host_len).with_labels((0..host_len).map(|_| format!("h_{}", j + 1)));
        g2 = g2.disjoint_union(&chain);
    }
    let certificates = vec![
        Certificate::Acyclic { side: Side::G1 },
        Certificate::Acyclic { side: Side::G2 },
        Certificate::VertexCount {
            side: Side::G2,
            expected: inst.groups * host_len,
        },
    ];
    let mut parameters = BTreeMap::new();
    parameters.insert("m".into(), inst.groups);
    parameters.insert("B".into(), inst.bound);
    parameters.insert("host_len".into(), host_len);
    Ok(ReductionOutput {
        kind: ReductionKind::ThreePartition,
        target: g1.n(),
        g1,
        g2,
        certificates,
        parameters,
    })
}

/// Exhaustive clique search.
pub fn has_clique(g: &Graph, l: usize) -> bool {
    fn extend(g: &Graph, chosen: &mut Vec<usize>, start: usize, l: usize) -> bool {
        if chosen.len() == l {
            return true;
        }
        for v in start..g.n() {
            if chosen.iter().all(|&u| g.has_edge(u, v)) {
                chosen.push(v);
                if extend(g, chosen, v + 1, l) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    extend(g, &mut Vec::new(), 0, l)
}

/// Exhaustive search for a split of `items` into triples each summing to
/// `bound`.
pub fn three_partition_exists(items: &[usize], bound: usize) -> bool {
    if !items.len().is_multiple_of(3) || items.iter().sum::<usize>() != bound * (items.len() / 3) {
        return false;
    }
    fn solve(rest: &[usize], bound: usize) -> bool {
        let Some((&first, tail)) = rest.split_first() else {
            return true;
        };
        for (i, j) in (0..tail.len()).tuple_combinations() {
            if first + tail[i] + tail[j] == bound {
                let remaining: Vec<usize> = tail
                    .iter()
                    .enumerate()
                    .filter(|&(x, _)| x != i && x != j)
                    .map(|(_, &v)| v)
                    .collect();
                if solve(&remaining, bound) {
                    return true;
                }
            }
        }
        false
    }
    solve(items, bound)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: ReductionKind,
    pub checks: Vec<CheckOutcome>,
    /// Answer of the produced instance, computed with the solvers.
    pub answer: bool,
    pub expected: bool,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.answer == self.expected && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn check_certificate(out: &ReductionOutput, cert: &Certificate) -> CheckOutcome {
    let (name, passed, detail) = match cert {
        Certificate::VertexCover {
            side,
            vertices,
            expected_size,
        } => {
            let g = out.graph(*side);
            let covers = is_vertex_cover(g, vertices);
            (
                format!("{side:?}: Z is a vertex cover of size {expected_size}"),
                covers && vertices.len() == *expected_size,
                format!("covers every edge: {covers}, |Z| = {}", vertices.len()),
            )
        }
        Certificate::UniqueTriangle { side, triangle } => {
            let found = triangles(out.graph(*side));
            let mut want = *triangle;
            want.sort_unstable();
            (
                format!("{side:?}: the only triangle is {triangle:?}"),
                found == vec![want],
                format!("triangles found: {found:?}"),
            )
        }
        Certificate::BipartiteWithout { side, removed } => {
            let g = out.graph(*side);
            let rest: Vec<usize> = g.vertices().filter(|v| v != removed).collect();
            let ok = induced_subgraph(g, &rest).map(|h| is_bipartite(&h)).unwrap_or(false);
            (
                format!("{side:?}: bipartite without vertex {removed}"),
                ok,
                format!("bipartite: {ok}"),
            )
        }
        Certificate::Bipartite { side } => {
            let ok = is_bipartite(out.graph(*side));
            (format!("{side:?}: bipartite"), ok, format!("bipartite: {ok}"))
        }
        Certificate::C4Free { side } => {
            let ok = is_c4_free(out.graph(*side));
            (format!("{side:?}: C4-free"), ok, format!("C4-free: {ok}"))
        }
        Certificate::Acyclic { side } => {
            let ok = is_forest(out.graph(*side));
            (format!("{side:?}: acyclic"), ok, format!("forest: {ok}"))
        }
        Certificate::GirthAtLeast { side, min } => {
            let g = girth(out.graph(*side));
            let ok = match g {
                Girth::Acyclic => true,
                Girth::Cycle(len) => len >= *min,
            };
            (format!("{side:?}: girth at least {min}"), ok, format!("girth {g}"))
        }
        Certificate::FvsAtMost { side, bound } => {
            let fvs = min_feedback_vertex_set(out.graph(*side));
            (
                format!("{side:?}: feedback vertex set at most {bound}"),
                fvs.size <= *bound,
                format!("minimum feedback vertex set {:?}", fvs.set),
            )
        }
        Certificate::RoleDegree {
            side,
            role_prefix,
            degree,
        } => {
            let g = out.graph(*side);
            let bad: Vec<usize> = g
                .vertices()
                .filter(|&v| g.label(v).is_some_and(|l| l.starts_with(role_prefix.as_str())))
                .filter(|&v| g.degree(v) != *degree)
                .collect();
            (
                format!("{side:?}: vertices with role {role_prefix}* have degree {degree}"),
                bad.is_empty(),
                format!("violations: {bad:?}"),
            )
        }
        Certificate::VertexCount { side, expected } => {
            let got = out.graph(*side).n();
            (
                format!("{side:?}: {expected} vertices"),
                got == *expected,
                format!("found {got}"),
            )
        }
        Certificate::UniversalDegree {
            side,
            vertex,
            degree,
        } => {
            let g = out.graph(*side);
            let got = (*vertex < g.n()).then(|| g.degree(*vertex));
            (
                format!("{side:?}: vertex {vertex} has degree {degree}"),
                got == Some(*degree),
                format!("found {got:?}"),
            )
        }
    };
    CheckOutcome {
        name,
        passed,
        detail,
    }
}

/// Answer of the produced instance: embedding of `g1` into `g2` for the ISI
/// gadgets, brute-force MCCIS reaching the target for the universal lift.
pub fn reduced_answer(out: &ReductionOutput, oracle_bound: usize) -> Result<bool> {
    match out.kind {
        ReductionKind::Universal => {
            let q = SolveQuery::mccis(out.g1.clone(), out.g2.clone());
            Ok(mcis_bruteforce_bounded(&q, oracle_bound)?.size >= out.target)
        }
        _ => Ok(isi_backtracking(&out.g1, &out.g2).is_some()),
    }
}

/// Re-checks every certificate and compares the reduced answer against the
/// source answer.
pub fn verify_reduction(out: &ReductionOutput, source_answer: bool) -> Result<VerificationReport> {
    verify_reduction_bounded(out, source_answer, DEFAULT_ORACLE_BOUND)
}

pub fn verify_reduction_bounded(
    out: &ReductionOutput,
    source_answer: bool,
    oracle_bound: usize,
) -> Result<VerificationReport> {
    let mut checks: Vec<CheckOutcome> = out
        .certificates
        .iter()
        .map(|c| check_certificate(out, c))
        .collect();
    let size_ok = out.target == out.g1.n();
    checks.push(CheckOutcome {
        name: "target equals pattern order".into(),
        passed: size_ok,
        detail: format!("target {}, |V(g1)| = {}", out.target, out.g1.n()),
    });
    let answer = reduced_answer(out, oracle_bound)?;
    Ok(VerificationReport {
        kind: out.kind,
        checks,
        answer,
        expected: source_answer,
    })
}

#[derive(Serialize)]
struct Manifest<'a> {
    kind: ReductionKind,
    target: usize,
    g1: GraphEntry<'a>,
    g2: GraphEntry<'a>,
    certificates: &'a [Certificate],
    parameters: &'a BTreeMap<String, usize>,
}

#[derive(Serialize)]
struct GraphEntry<'a> {
    file: &'a str,
    n: usize,
    m: usize,
    roles: Vec<Option<&'a str>>,
}

impl<'a> GraphEntry<'a> {
    fn new(file: &'a str, g: &'a Graph) -> Self {
        GraphEntry {
            file,
            n: g.n(),
            m: g.edge_count(),
            roles: g.vertices().map(|v| g.label(v)).collect(),
        }
    }
}

pub fn manifest_json(out: &ReductionOutput) -> serde_json::Value {
    serde_json::to_value(Manifest {
        kind: out.kind,
        target: out.target,
        g1: GraphEntry::new("g1.txt", &out.g1),
        g2: GraphEntry::new("g2.txt", &out.g2),
        certificates: &out.certificates,
        parameters: &out.parameters,
    })
    .expect("manifest serializes")
}

/// Writes `g1.txt`, `g2.txt` (edge-list) and `manifest.json` into `dir`.
pub fn write_output(out: &ReductionOutput, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("g1.txt"), to_edge_list(&out.g1))?;
    std::fs::write(dir.join("g2.txt"), to_edge_list(&out.g2))?;
    let text = serde_json::to_string_pretty(&manifest_json(out))?;
    std::fs::write(dir.join("manifest.json"), text + "\n")?;
    Ok(())
}
