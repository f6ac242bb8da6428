//! Decision route that enumerates every labeled graph on `k` vertices and
//! asks the backtracking embedder about each. Costs `2^(k(k-1)/2)` embedding
//! pairs, so it is capped at small `k`.

use super::{isi_backtracking, SolveQuery};
use crate::error::{Error, Result};
use crate::graph::{is_connected, Graph};

pub const MAX_ENUMERATION_K: usize = 6;

fn candidate_count(k: usize) -> u128 {
    let pairs = k * k.saturating_sub(1) / 2;
    1u128.checked_shl(pairs as u32).unwrap_or(u128::MAX)
}

/// First graph on `k` vertices (in adjacency-mask order) that embeds as an
/// induced subgraph of both inputs; restricted to connected candidates when
/// the query asks for MCCIS.
pub fn common_graph_of_order(q: &SolveQuery, k: usize) -> Result<Option<Graph>> {
    if k > MAX_ENUMERATION_K {
        return Err(Error::ThresholdTooLarge {
            k,
            limit: MAX_ENUMERATION_K,
            candidates: candidate_count(k),
        });
    }
    if k > q.g1.n() || k > q.g2.n() {
        return Ok(None);
    }
    let slots: Vec<(usize, usize)> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
    for mask in 0u64..(1u64 << slots.len()) {
        let edges = slots
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        let candidate = Graph::new(k, edges)?;
        if q.connected && !is_connected(&candidate) {
            continue;
        }
        if isi_backtracking(&candidate, &q.g1).is_some() && isi_backtracking(&candidate, &q.g2).is_some() {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// Whether a common (connected) induced subgraph on `q.threshold` vertices
/// exists.
pub fn mcis_via_isi(q: &SolveQuery) -> Result<bool> {
    let k = q
        .threshold
        .ok_or_else(|| Error::Domain("the enumeration route needs a threshold k".into()))?;
    Ok(common_graph_of_order(q, k)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_pair() {
        let q = SolveQuery::mcis(Graph::complete(3), Graph::complete(3)).with_threshold(3);
        assert!(mcis_via_isi(&q).unwrap());
    }

    #[test]
    fn triangle_against_path() {
        let q = SolveQuery::mcis(Graph::complete(3), Graph::path(3)).with_threshold(3);
        assert!(!mcis_via_isi(&q).unwrap());
    }

    #[test]
    fn zero_threshold_is_trivially_true() {
        let q = SolveQuery::mccis(Graph::cycle(5), Graph::empty(0)).with_threshold(0);
        assert!(mcis_via_isi(&q).unwrap());
    }

    #[test]
    fn refuses_large_k_with_estimate() {
        let q = SolveQuery::mcis(Graph::empty(9), Graph::empty(9)).with_threshold(7);
        match mcis_via_isi(&q) {
            Err(Error::ThresholdTooLarge { k: 7, candidates, .. }) => assert_eq!(candidates, 1 << 21),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_threshold() {
        let q = SolveQuery::mcis(Graph::empty(1), Graph::empty(1));
        assert!(mcis_via_isi(&q).is_err());
    }
}
