//! Seeded randomized cross-validation: exact solvers against the brute-force
//! oracle, and reduction gadgets against their source oracles.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{connected_components, is_induced_isomorphism, Graph};
use crate::io::to_edge_list;
use crate::params::min_vertex_cover;
use crate::reductions::{
    clique_to_incidence_isi, cross_compose, has_clique, isi_to_mccis, three_partition_exists,
    three_partition_to_forest_isi, verify_reduction_bounded, CliqueInstance, ThreePartitionInstance,
};
use crate::solvers::{
    check_witness, configuration_bound, isi_backtracking, mcis_bruteforce_bounded, mcis_vc_fpt, mcis_via_isi,
    SolveQuery,
};

/// Edge probabilities for the random corpus.
pub const EDGE_PROBABILITIES: [f64; 3] = [0.2, 0.5, 0.8];

/// Largest threshold for which the enumeration route is cross-checked.
const VIA_ISI_CHECK_LIMIT: usize = 5;

const REDUCTION_STREAM: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Oracle,
    Reductions,
    All,
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub suite: Suite,
    pub seed: u64,
    pub count: usize,
    pub max_n: usize,
    pub oracle_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceOutcome {
    pub suite: String,
    pub index: usize,
    pub summary: String,
    pub problems: Vec<String>,
    /// Edge lists of the inputs, for replay.
    pub replay: Vec<String>,
    pub configurations: u64,
}

impl InstanceOutcome {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub outcomes: Vec<InstanceOutcome>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(InstanceOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }
}

/// Generator for instance `index` of a seeded run.
pub fn instance_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Erdős-Rényi graph on `n` vertices with probability drawn from
/// [`EDGE_PROBABILITIES`].
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let p = *EDGE_PROBABILITIES.choose(rng).expect("nonempty");
    random_graph_with(rng, n, p)
}

pub fn random_graph_with<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("valid endpoints")
}

/// Random forest on `n` vertices with exactly `trees` components.
pub fn random_forest<R: Rng>(rng: &mut R, n: usize, trees: usize) -> Graph {
    assert!(trees >= 1 && trees <= n.max(1));
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<(usize, usize)> = (trees..n)
        .map(|v| (perm[rng.gen_range(0..v)], perm[v]))
        .collect();
    Graph::new(n, edges).expect("valid endpoints")
}

/// Random strict 3-Partition instance (items in the open range (B/4, B/2))
/// with `groups` groups and bound at most `max_bound`.
pub fn random_three_partition<R: Rng>(rng: &mut R, groups: usize, max_bound: usize) -> Option<ThreePartitionInstance> {
    let feasible: Vec<usize> = (1..=max_bound)
        .filter(|&b| {
            let (lo, hi) = (b / 4 + 1, (b - 1) / 2);
            lo <= hi && 3 * lo <= b && b <= 3 * hi
        })
        .collect();
    let &bound = feasible.choose(rng)?;
    let (lo, hi) = (bound / 4 + 1, (bound - 1) / 2);
    loop {
        let items: Vec<usize> = (0..3 * groups).map(|_| rng.gen_range(lo..=hi)).collect();
        if items.iter().sum::<usize>() == groups * bound {
            return ThreePartitionInstance::new(items, groups, bound).ok();
        }
    }
}

fn oracle_instance(index: usize, cfg: &CheckConfig) -> InstanceOutcome {
    let mut rng = instance_rng(cfg.seed, index as u64);
    let n1 = rng.gen_range(1..=cfg.max_n);
    let n2 = rng.gen_range(1..=cfg.max_n);
    let g1 = random_graph(&mut rng, n1);
    let g2 = random_graph(&mut rng, n2);
    let mut problems = Vec::new();
    let mut configurations = 0;
    let mut sizes = Vec::new();
    let bound = configuration_bound(min_vertex_cover(&g1).size(), min_vertex_cover(&g2).size());
    for connected in [false, true] {
        let tag = if connected { "mccis" } else { "mcis" };
        let q = SolveQuery::new(g1.clone(), g2.clone(), connected);
        let brute = match mcis_bruteforce_bounded(&q, cfg.oracle_bound) {
            Ok(r) => r,
            Err(e) => {
                problems.push(format!("{tag}: oracle failed: {e}"));
                continue;
            }
        };
        let fpt = mcis_vc_fpt(&q);
        configurations += fpt.stats.configurations;
        sizes.push(format!("{tag} {}", brute.size));
        if fpt.size != brute.size {
            problems.push(format!("{tag}: vc-fpt size {} but brute force {}", fpt.size, brute.size));
        }
        for r in [&brute, &fpt] {
            if let Err(e) = check_witness(&q, r) {
                problems.push(format!("{tag}: {} witness rejected: {e}", r.method));
            }
            if connected && r.size > 0 {
                for (g, side) in [(&g1, r.witness.domain()), (&g2, r.witness.image())] {
                    let sub = crate::graph::induced_subgraph(g, &side).expect("witness in range");
                    if connected_components(&sub).len() != 1 {
                        problems.push(format!("{tag}: {} witness side {side:?} is disconnected", r.method));
                    }
                }
            }
        }
        if matches!(is_induced_isomorphism(&g1, &g2, &fpt.witness), Ok(false) | Err(_)) {
            problems.push(format!("{tag}: vc-fpt witness fails the induced isomorphism check"));
        }
        if u128::from(fpt.stats.configurations) > bound {
            problems.push(format!(
                "{tag}: {} configurations exceed the bound {bound}",
                fpt.stats.configurations
            ));
        }
        let k = brute.size;
        for (threshold, expect) in [(k, true), (k + 1, false)] {
            if threshold > VIA_ISI_CHECK_LIMIT {
                continue;
            }
            match mcis_via_isi(&q.clone().with_threshold(threshold)) {
                Ok(got) if got == expect => {}
                Ok(got) => problems.push(format!("{tag}: enumeration route says {got} for k = {threshold}")),
                Err(e) => problems.push(format!("{tag}: enumeration route failed: {e}")),
            }
        }
    }
    InstanceOutcome {
        suite: "oracle".into(),
        index,
        summary: format!("n1={n1} n2={n2} {}", sizes.join(" ")),
        problems,
        replay: vec![to_edge_list(&g1), to_edge_list(&g2)],
        configurations,
    }
}

fn reduction_instance(index: usize, cfg: &CheckConfig) -> InstanceOutcome {
    let mut rng = instance_rng(cfg.seed, REDUCTION_STREAM + index as u64);
    let mut problems = Vec::new();
    let mut replay = Vec::new();
    let built = match index % 4 {
        0 => {
            let n = rng.gen_range(3..=cfg.max_n.clamp(3, 6));
            let k = rng.gen_range(3..=4);
            let g = random_graph(&mut rng, n);
            replay.push(to_edge_list(&g));
            clique_to_incidence_isi(&g, k).map(|out| (format!("clique-incidence n={n} k={k}"), has_clique(&g, k), out))
        }
        1 => {
            let n = rng.gen_range(3..=5);
            let t = rng.gen_range(1..=3);
            let graphs: Vec<Graph> = (0..t).map(|_| random_graph(&mut rng, n)).collect();
            replay.extend(graphs.iter().map(to_edge_list));
            let answer = graphs.iter().any(|g| has_clique(g, 3));
            let insts: Vec<CliqueInstance> = graphs
                .into_iter()
                .map(|g| CliqueInstance::new(g, 3).expect("l <= n"))
                .collect();
            cross_compose(&insts).map(|out| (format!("cross-compose n={n} l=3 t={t}"), answer, out))
        }
        2 => {
            let forest = |rng: &mut ChaCha8Rng| {
                let n = rng.gen_range(2..=8usize.min(cfg.oracle_bound - 1).max(2));
                let trees = rng.gen_range(2..=n);
                random_forest(rng, n, trees)
            };
            let f1 = forest(&mut rng);
            let f2 = forest(&mut rng);
            replay.push(to_edge_list(&f1));
            replay.push(to_edge_list(&f2));
            let answer = isi_backtracking(&f1, &f2).is_some();
            Ok((
                format!("universal n1={} n2={}", f1.n(), f2.n()),
                answer,
                isi_to_mccis(&f1, &f2),
            ))
        }
        _ => {
            let groups = rng.gen_range(1..=2);
            let inst = random_three_partition(&mut rng, groups, 13).expect("a feasible bound exists");
            replay.push(format!("items {:?} B={}", inst.items, inst.bound));
            let answer = three_partition_exists(&inst.items, inst.bound);
            three_partition_to_forest_isi(&inst, None).map(|out| {
                (
                    format!("3partition m={groups} B={} items={:?}", inst.bound, inst.items),
                    answer,
                    out,
                )
            })
        }
    };
    let summary = match built {
        Ok((summary, answer, out)) => {
            match verify_reduction_bounded(&out, answer, cfg.oracle_bound) {
                Ok(report) => {
                    problems.extend(report.failures().iter().map(|c| format!("{}: {}", c.name, c.detail)));
                    if report.answer != report.expected {
                        problems.push(format!(
                            "reduced answer {} but source answer {}",
                            report.answer, report.expected
                        ));
                    }
                }
                Err(e) => problems.push(format!("verification failed: {e}")),
            }
            format!("{summary} answer={answer}")
        }
        Err(e) => {
            problems.push(format!("builder failed: {e}"));
            "builder error".into()
        }
    };
    InstanceOutcome {
        suite: "reductions".into(),
        index,
        summary,
        problems,
        replay,
        configurations: 0,
    }
}

/// Runs the configured suites. Instances are independent and run in
/// parallel; outcomes come back ordered by suite and index.
pub fn run_check(cfg: &CheckConfig) -> Result<CheckReport> {
    if cfg.max_n > cfg.oracle_bound {
        return Err(Error::OracleBound {
            got: cfg.max_n,
            bound: cfg.oracle_bound,
        });
    }
    if cfg.max_n == 0 && cfg.count > 0 {
        return Err(Error::Domain("max_n must be at least 1".into()));
    }
    let mut outcomes = Vec::new();
    if matches!(cfg.suite, Suite::Oracle | Suite::All) {
        outcomes.par_extend((0..cfg.count).into_par_iter().map(|i| oracle_instance(i, cfg)));
    }
    if matches!(cfg.suite, Suite::Reductions | Suite::All) {
        outcomes.par_extend((0..cfg.count).into_par_iter().map(|i| reduction_instance(i, cfg)));
    }
    Ok(CheckReport { outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(suite: Suite, count: usize) -> CheckConfig {
        CheckConfig {
            suite,
            seed: 1,
            count,
            max_n: 6,
            oracle_bound: 10,
        }
    }

    #[test]
    fn zero_count_is_vacuous() {
        let report = run_check(&config(Suite::All, 0)).unwrap();
        assert!(report.is_empty() && report.passed());
    }

    #[test]
    fn small_runs_pass_and_are_deterministic() {
        let a = run_check(&config(Suite::All, 12)).unwrap();
        assert!(a.passed(), "{:?}", a.failures().collect::<Vec<_>>());
        let b = run_check(&config(Suite::All, 12)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 24);
        assert!(a.outcomes.windows(2).take(11).all(|w| w[0].index < w[1].index));
    }

    #[test]
    fn max_n_over_bound_is_refused() {
        let mut cfg = config(Suite::Oracle, 1);
        cfg.max_n = 11;
        assert!(matches!(run_check(&cfg), Err(Error::OracleBound { .. })));
    }

    #[test]
    fn forests_have_requested_components() {
        let mut rng = instance_rng(3, 0);
        for n in 2..9 {
            for trees in 1..=n {
                let f = random_forest(&mut rng, n, trees);
                assert!(crate::graph::is_forest(&f));
                assert_eq!(connected_components(&f).len(), trees);
            }
        }
    }

    #[test]
    fn generated_three_partitions_are_strict() {
        let mut rng = instance_rng(5, 0);
        for _ in 0..50 {
            let inst = random_three_partition(&mut rng, 2, 13).unwrap();
            assert!(inst.is_strict());
            assert!(inst.bound <= 13);
        }
    }
}
