//! Subset-enumeration oracle. Only for validating the other solvers.

use itertools::Itertools;

use super::{isi_backtracking, Method, SolveQuery, SolveResult, SolveStats};
use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, induces_connected, is_induced_isomorphism, VertexMapping};

pub const DEFAULT_ORACLE_BOUND: usize = 10;

pub fn mcis_bruteforce(q: &SolveQuery) -> Result<SolveResult> {
    mcis_bruteforce_bounded(q, DEFAULT_ORACLE_BOUND)
}

/// Tries the vertex subsets of the smaller graph from largest to smallest
/// (lexicographic within a size) and embeds each induced subgraph into the
/// other graph. The first hit is optimal.
pub fn mcis_bruteforce_bounded(q: &SolveQuery, bound: usize) -> Result<SolveResult> {
    let largest = q.g1.n().max(q.g2.n());
    if largest > bound {
        return Err(Error::OracleBound { got: largest, bound });
    }
    let swapped = q.g2.n() < q.g1.n();
    let (small, other) = if swapped { (&q.g2, &q.g1) } else { (&q.g1, &q.g2) };
    let mut stats = SolveStats::default();
    for size in (1..=small.n()).rev() {
        for subset in small.vertices().combinations(size) {
            if q.connected && !induces_connected(small, &subset) {
                continue;
            }
            let sub = induced_subgraph(small, &subset)?;
            stats.candidates_validated += 1;
            let Some(embedding) = isi_backtracking(&sub, other) else {
                continue;
            };
            let pairs: Vec<(usize, usize)> = embedding
                .pairs()
                .iter()
                .map(|&(i, h)| if swapped { (h, subset[i]) } else { (subset[i], h) })
                .collect();
            let witness = VertexMapping::new(pairs).sorted();
            if is_induced_isomorphism(&q.g1, &q.g2, &witness)? {
                return Ok(SolveResult {
                    size,
                    witness,
                    method: Method::BruteForce,
                    stats,
                });
            }
        }
    }
    Ok(SolveResult {
        size: 0,
        witness: VertexMapping::default(),
        method: Method::BruteForce,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::solvers::check_witness;

    #[test]
    fn identical_triangles() {
        for connected in [false, true] {
            let q = SolveQuery::new(Graph::complete(3), Graph::complete(3), connected);
            let r = mcis_bruteforce(&q).unwrap();
            assert_eq!(r.size, 3);
            check_witness(&q, &r).unwrap();
        }
    }

    #[test]
    fn path_against_triangle() {
        let q = SolveQuery::mcis(Graph::path(3), Graph::complete(3));
        assert_eq!(mcis_bruteforce(&q).unwrap().size, 2);
    }

    #[test]
    fn two_edges_against_p5_connected() {
        let two_edges = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let q = SolveQuery::mccis(two_edges.clone(), Graph::path(5));
        let r = mcis_bruteforce(&q).unwrap();
        assert_eq!(r.size, 2);
        check_witness(&q, &r).unwrap();
        // Without connectivity both edges fit: P5 contains 2K2 induced.
        let q = SolveQuery::mcis(two_edges, Graph::path(5));
        assert_eq!(mcis_bruteforce(&q).unwrap().size, 4);
    }

    #[test]
    fn refuses_large_inputs() {
        let q = SolveQuery::mcis(Graph::empty(11), Graph::empty(2));
        assert!(matches!(
            mcis_bruteforce(&q),
            Err(Error::OracleBound { got: 11, bound: 10 })
        ));
        assert!(mcis_bruteforce_bounded(&q, 12).is_ok());
    }

    #[test]
    fn empty_input_gives_size_zero() {
        let q = SolveQuery::mccis(Graph::empty(0), Graph::complete(3));
        let r = mcis_bruteforce(&q).unwrap();
        assert_eq!(r.size, 0);
        assert!(r.witness.is_empty());
    }
}
