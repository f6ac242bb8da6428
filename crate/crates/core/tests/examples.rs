use itertools::Itertools;

use mcis_core::graph::{
    add_universal_vertex, connected_components, graph_stats, induced_subgraph, is_forest, is_induced_isomorphism,
    Girth, Graph, VertexMapping,
};
use mcis_core::io::parse_graph;
use mcis_core::params::{
    min_feedback_vertex_set, min_vertex_cover, tripartitions, twin_partition, CoverSplit,
};
use mcis_core::reductions::{
    clique_to_incidence_isi, cross_compose, has_clique, incidence_graph, isi_to_mccis, three_partition_exists,
    three_partition_to_forest_isi, verify_reduction, CliqueInstance, ThreePartitionInstance,
};
use mcis_core::solvers::{
    configuration_bound, enumerate_configurations, isi_backtracking, mcis_bruteforce, mcis_vc_fpt, mcis_via_isi,
    SolveQuery,
};
use mcis_core::Error;

/// Induced embedding search over every injective map.
fn embeds_by_permutation(pattern: &Graph, host: &Graph) -> bool {
    host.vertices().permutations(pattern.n()).any(|image| {
        let m = VertexMapping::new(image.into_iter().enumerate().collect());
        is_induced_isomorphism(pattern, host, &m).unwrap()
    })
}

fn two_edges() -> Graph {
    Graph::new(4, [(0, 1), (2, 3)]).unwrap()
}

#[test]
fn parsing() {
    assert_eq!(parse_graph("3 2\n0 1\n1 2").unwrap().edges().collect::<Vec<_>>(), Graph::path(3).edges().collect::<Vec<_>>());
    assert_eq!(parse_graph("3 3\n0 1\n1 2\n0 2").unwrap().edge_count(), 3);
    match parse_graph("2 1\n0 0") {
        Err(Error::Parse { line: 2, .. }) => {}
        other => panic!("expected a self-loop error on line 2, got {other:?}"),
    }
    let dimacs = parse_graph("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
    assert_eq!(dimacs.edge_count(), 3);
}

#[test]
fn induced_subgraphs() {
    let e = induced_subgraph(&Graph::complete(3), &[0, 1]).unwrap();
    assert_eq!(e.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    let p4 = Graph::path(4);
    let pair = induced_subgraph(&p4, &[0, 2]).unwrap();
    assert_eq!((pair.n(), pair.edge_count()), (2, 0));
    assert_eq!(pair.label(1), Some("2"));
    let all = induced_subgraph(&p4, &[0, 1, 2, 3]).unwrap();
    assert_eq!(all.edges().collect::<Vec<_>>(), p4.edges().collect::<Vec<_>>());
    assert!(induced_subgraph(&p4, &[4]).is_err());
}

#[test]
fn induced_isomorphism_checks() {
    let k3 = Graph::complete(3);
    assert!(is_induced_isomorphism(&k3, &k3, &VertexMapping::identity(3)).unwrap());
    assert!(!is_induced_isomorphism(&Graph::path(3), &k3, &VertexMapping::identity(3)).unwrap());
    assert!(embeds_by_permutation(&Graph::cycle(6), &incidence_graph(&k3)));
    let bad = VertexMapping::new(vec![(0, 1), (1, 1)]);
    assert!(is_induced_isomorphism(&k3, &k3, &bad).is_err());
}

#[test]
fn structural_stats() {
    let c5 = graph_stats(&Graph::cycle(5));
    assert_eq!(c5.girth, Girth::Cycle(5));
    assert!(!c5.bipartite && c5.c4_free && c5.connected);
    let forest = graph_stats(&Graph::star(3).disjoint_union(&Graph::path(2)));
    assert_eq!(forest.girth, Girth::Acyclic);
    assert!(forest.bipartite);
    let k4 = graph_stats(&Graph::complete(4));
    assert_eq!(k4.girth, Girth::Cycle(3));
    assert!(!k4.bipartite);
}

#[test]
fn universal_vertex() {
    let star = add_universal_vertex(&Graph::empty(3));
    assert_eq!(star.edges().collect::<Vec<_>>(), vec![(0, 3), (1, 3), (2, 3)]);
    assert_eq!(star.label(3), Some("universal"));
    let k4 = add_universal_vertex(&Graph::complete(3));
    assert_eq!(k4.edges().collect::<Vec<_>>(), Graph::complete(4).edges().collect::<Vec<_>>());
    assert_eq!(add_universal_vertex(&Graph::empty(0)).n(), 1);
}

#[test]
fn components() {
    let sizes = |g: &Graph| connected_components(g).iter().map(Vec::len).collect::<Vec<_>>();
    assert_eq!(sizes(&two_edges()), vec![2, 2]);
    assert_eq!(sizes(&Graph::cycle(5)), vec![5]);
    assert_eq!(sizes(&Graph::empty(3)), vec![1, 1, 1]);
}

#[test]
fn covers_and_feedback_sets() {
    assert_eq!(min_vertex_cover(&Graph::cycle(5)).size(), 3);
    assert_eq!(min_vertex_cover(&Graph::complete(4)).size(), 3);
    assert_eq!(min_vertex_cover(&Graph::empty(5)).size(), 0);
    assert_eq!(min_feedback_vertex_set(&Graph::path(4)).size, 0);
    assert_eq!(min_feedback_vertex_set(&add_universal_vertex(&Graph::path(4))).size, 1);
    // No single vertex of K4 leaves a forest; any pair does.
    let k4 = Graph::complete(4);
    let brute = (0..=4)
        .find(|&s| {
            (0..4).combinations(s).any(|removed| {
                let rest: Vec<usize> = (0..4).filter(|v| !removed.contains(v)).collect();
                is_forest(&induced_subgraph(&k4, &rest).unwrap())
            })
        })
        .unwrap();
    assert_eq!(min_feedback_vertex_set(&k4).size, brute);
    assert_eq!(brute, 2);
}

#[test]
fn twin_partitions() {
    let star = Graph::star(3);
    let center = (0..4).find(|&v| star.degree(v) == 3).unwrap();
    let split = CoverSplit::new(&star, vec![center]).unwrap();
    let twins = twin_partition(&star, &split);
    assert_eq!(twins.len(), 1);
    assert_eq!(twins.classes[0].members.len(), 3);

    let p4 = Graph::path(4);
    let twins = twin_partition(&p4, &CoverSplit::new(&p4, vec![1, 2]).unwrap());
    let classes: Vec<_> = twins.classes.iter().map(|c| (c.members.clone(), c.neighborhood.clone())).collect();
    assert_eq!(classes, vec![(vec![0], vec![1]), (vec![3], vec![2])]);

    let empty = Graph::empty(4);
    let twins = twin_partition(&empty, &CoverSplit::new(&empty, vec![]).unwrap());
    assert_eq!(twins.len(), 1);
    assert_eq!(twins.classes[0].members, vec![0, 1, 2, 3]);
    assert!(twins.classes[0].neighborhood.is_empty());
}

#[test]
fn tripartition_streams() {
    assert_eq!(tripartitions(&[]).count(), 1);
    assert_eq!(tripartitions(&[4, 7]).count(), 9);
    assert_eq!(tripartitions(&[0, 1, 2]).count(), 27);
    let all: Vec<_> = tripartitions(&[0, 1]).collect();
    assert!(all.iter().enumerate().all(|(i, a)| all[..i].iter().all(|b| b != a)));
}

#[test]
fn isi_examples() {
    assert!(isi_backtracking(&Graph::complete(2), &Graph::empty(3)).is_none());
    let host = incidence_graph(&Graph::complete(3));
    let m = isi_backtracking(&Graph::cycle(6), &host).unwrap();
    assert!(is_induced_isomorphism(&Graph::cycle(6), &host, &m).unwrap());
    // Triangle-free hosts with at most 12 vertices.
    let pattern = incidence_graph(&Graph::complete(3));
    for g in [Graph::cycle(4), Graph::cycle(5), Graph::star(4), Graph::path(6)] {
        let host = incidence_graph(&g);
        assert!(host.n() <= 12);
        assert!(isi_backtracking(&pattern, &host).is_none());
        assert!(!embeds_by_permutation(&pattern, &host));
    }
}

#[test]
fn oracle_examples() {
    for connected in [false, true] {
        let q = SolveQuery::new(Graph::complete(3), Graph::complete(3), connected);
        assert_eq!(mcis_bruteforce(&q).unwrap().size, 3);
    }
    assert_eq!(mcis_bruteforce(&SolveQuery::mcis(Graph::path(3), Graph::complete(3))).unwrap().size, 2);
    assert_eq!(mcis_bruteforce(&SolveQuery::mccis(two_edges(), Graph::path(5))).unwrap().size, 2);
}

#[test]
fn fpt_examples() {
    assert_eq!(mcis_vc_fpt(&SolveQuery::mcis(Graph::path(3), Graph::complete(3))).size, 2);
    let chorded_hexagon = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
    let r = mcis_vc_fpt(&SolveQuery::mccis(chorded_hexagon.clone(), chorded_hexagon.clone()));
    assert_eq!(r.size, 6);
    assert!(is_induced_isomorphism(&chorded_hexagon, &chorded_hexagon, &r.witness).unwrap());
    let r = mcis_vc_fpt(&SolveQuery::mcis(Graph::empty(5), Graph::empty(3)));
    assert_eq!(r.size, 3);
    assert_eq!(r.stats.cover_sizes, Some((0, 0)));
    let empty = mcis_vc_fpt(&SolveQuery::mccis(Graph::empty(0), Graph::cycle(4)));
    assert_eq!(empty.size, 0);
    assert!(empty.witness.is_empty());
}

#[test]
fn enumeration_examples() {
    let k2 = Graph::complete(2);
    let items = enumerate_configurations(&k2, &k2);
    assert!(items.iter().any(|it| it.mapping.len() == 2));

    let items = enumerate_configurations(&Graph::complete(3), &Graph::path(3));
    assert!(items.iter().all(|it| it.mapping.len() < 3));
    assert!(items.iter().any(|it| it.mapping.len() == 2));

    for (g1, g2) in [(Graph::cycle(5), Graph::complete(4)), (Graph::star(3), two_edges())] {
        let k1 = min_vertex_cover(&g1).size();
        let k2 = min_vertex_cover(&g2).size();
        let k = k1.max(k2) as u32;
        let items = enumerate_configurations(&g1, &g2);
        let factorial: u128 = (1..=u128::from(k)).product();
        let loose = 9u128.pow(k) * factorial * 2u128.pow(2 * k * k);
        assert!(items.len() as u128 <= configuration_bound(k1, k2));
        assert!(items.len() as u128 <= loose);
        for it in &items {
            assert!(is_induced_isomorphism(&g1, &g2, &it.mapping).unwrap());
        }
        assert!(items.windows(2).all(|w| w[0].index < w[1].index));
    }
}

#[test]
fn via_isi_examples() {
    let q = SolveQuery::mcis(Graph::complete(3), Graph::complete(3));
    assert!(mcis_via_isi(&q.clone().with_threshold(3)).unwrap());
    let q = SolveQuery::mcis(Graph::complete(3), Graph::path(3));
    assert!(!mcis_via_isi(&q.with_threshold(3)).unwrap());
    // The four labeled 3-vertex shapes up to isomorphism: none is induced in both.
    for shape in [Graph::empty(3), Graph::new(3, [(0, 1)]).unwrap(), Graph::path(3), Graph::complete(3)] {
        let both = isi_backtracking(&shape, &Graph::complete(3)).is_some() && isi_backtracking(&shape, &Graph::path(3)).is_some();
        assert!(!both);
    }
    let q = SolveQuery::mccis(Graph::cycle(4), Graph::star(2));
    assert!(mcis_via_isi(&q.with_threshold(0)).unwrap());
}

#[test]
fn incidence_reduction_examples() {
    let out = clique_to_incidence_isi(&Graph::complete(3), 3).unwrap();
    assert_eq!(out.target, 6);
    for g in [&out.g1, &out.g2] {
        assert!(embeds_by_permutation(&Graph::cycle(6), g) && g.n() == 6 && g.edge_count() == 6);
    }
    assert!(verify_reduction(&out, true).unwrap().answer);

    let out = clique_to_incidence_isi(&Graph::path(3), 3).unwrap();
    assert!(!embeds_by_permutation(&out.g1, &out.g2));
    assert!(!verify_reduction(&out, false).unwrap().answer);

    let g = Graph::cycle(5);
    let out = clique_to_incidence_isi(&g, 4).unwrap();
    assert_eq!(out.g2.n(), g.n() + g.edge_count());
    assert_eq!(out.target, 4 + 6);
}

fn contains_triangle() -> Graph {
    Graph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap()
}

#[test]
fn cross_composition_examples() {
    let insts = vec![
        CliqueInstance::new(contains_triangle(), 3).unwrap(),
        CliqueInstance::new(Graph::cycle(4), 3).unwrap(),
    ];
    let out = cross_compose(&insts).unwrap();
    assert_eq!((out.g2.n(), out.g1.n(), out.target), (15, 10, 10));
    assert_eq!(out.parameters["z_size"], 8);
    assert!(out.parameters.contains_key("vc_g1_plus_vc_g2"));
    assert!(out.parameters.contains_key("z_plus_vc_g1"));
    let report = verify_reduction(&out, true).unwrap();
    assert!(report.answer && report.all_passed(), "{report:?}");

    let negative = vec![
        CliqueInstance::new(Graph::cycle(4), 3).unwrap(),
        CliqueInstance::new(Graph::star(3), 3).unwrap(),
    ];
    let report = verify_reduction(&cross_compose(&negative).unwrap(), false).unwrap();
    assert!(!report.answer && report.all_passed());
}

#[test]
fn universal_examples() {
    let out = isi_to_mccis(&Graph::empty(2), &two_edges());
    assert_eq!(mcis_bruteforce(&SolveQuery::mccis(out.g1.clone(), out.g2.clone())).unwrap().size, 3);
    assert!(isi_backtracking(&Graph::empty(2), &two_edges()).is_some());
    let out = isi_to_mccis(&Graph::path(3), &two_edges());
    assert_eq!(min_feedback_vertex_set(&out.g1).size, 1);
    assert_eq!(min_feedback_vertex_set(&out.g2).size, 1);
    let out = isi_to_mccis(&Graph::empty(1), &Graph::empty(1));
    assert_eq!(out.g1.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    assert_eq!(out.target, 2);
}

#[test]
fn three_partition_examples() {
    let yes = ThreePartitionInstance::new(vec![4, 4, 5, 4, 4, 5], 2, 13).unwrap();
    assert!(three_partition_exists(&yes.items, yes.bound));
    let out = three_partition_to_forest_isi(&yes, None).unwrap();
    assert_eq!(out.g2.n(), 2 * 15);
    assert!(isi_backtracking(&out.g1, &out.g2).is_some());

    let no = ThreePartitionInstance::new(vec![4, 4, 4, 4, 4, 6], 2, 13).unwrap();
    assert!(!three_partition_exists(&no.items, no.bound));
    let out = three_partition_to_forest_isi(&no, None).unwrap();
    assert!(isi_backtracking(&out.g1, &out.g2).is_none());

    let tiny = ThreePartitionInstance::new(vec![1, 1, 1], 1, 3).unwrap();
    let out = three_partition_to_forest_isi(&tiny, None).unwrap();
    assert_eq!(out.g2.n(), 5);
    assert!(embeds_by_permutation(&out.g1, &out.g2));

    let loose = ThreePartitionInstance::new(vec![1, 1, 4], 1, 6).unwrap();
    assert!(matches!(three_partition_to_forest_isi(&loose, None), Err(Error::Soundness(_))));
}

#[test]
fn clique_oracle() {
    assert!(has_clique(&contains_triangle(), 3));
    assert!(!has_clique(&Graph::cycle(4), 3));
}
