//! Exact solvers for induced subgraph isomorphism and maximum common
//! (connected) induced subgraph.
//!
//! Every witness a solver reports has gone through
//! [`is_induced_isomorphism`](crate::graph::is_induced_isomorphism) first.

mod brute;
mod isi;
mod vc_fpt;
mod via_isi;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use brute::{mcis_bruteforce, mcis_bruteforce_bounded, DEFAULT_ORACLE_BOUND};
pub use isi::{isi_backtracking, isi_backtracking_counted};
pub use vc_fpt::{
    configuration_bound, enumerate_configurations, for_each_configuration, mcis_vc_fpt,
    ClassPair, CoverConfiguration, EnumeratedConfiguration,
};
pub use via_isi::{common_graph_of_order, mcis_via_isi, MAX_ENUMERATION_K};

use crate::error::{Error, Result};
use crate::graph::{induces_connected, is_induced_isomorphism, Graph, VertexMapping};

/// One MCIS / MCCIS question.
#[derive(Clone, Debug)]
pub struct SolveQuery {
    pub g1: Graph,
    pub g2: Graph,
    /// Require the common subgraph to be connected (MCCIS).
    pub connected: bool,
    /// Decision threshold: is there a common subgraph with at least this
    /// many vertices?
    pub threshold: Option<usize>,
}

impl SolveQuery {
    pub fn new(g1: Graph, g2: Graph, connected: bool) -> Self {
        SolveQuery {
            g1,
            g2,
            connected,
            threshold: None,
        }
    }

    pub fn mcis(g1: Graph, g2: Graph) -> Self {
        SolveQuery::new(g1, g2, false)
    }

    pub fn mccis(g1: Graph, g2: Graph) -> Self {
        SolveQuery::new(g1, g2, true)
    }

    pub fn with_threshold(mut self, k: usize) -> Self {
        self.threshold = Some(k);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    BruteForce,
    VcFpt,
    Backtracking,
    IsiEnumeration,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::BruteForce => "brute",
            Method::VcFpt => "vc-fpt",
            Method::Backtracking => "backtracking",
            Method::IsiEnumeration => "isi-enumeration",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    /// Complete cover configurations reached by the vertex-cover algorithm.
    pub configurations: u64,
    /// Candidate mappings handed to the induced-isomorphism check.
    pub candidates_validated: u64,
    /// Cover sizes the vertex-cover algorithm ran with.
    pub cover_sizes: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub size: usize,
    pub witness: VertexMapping,
    pub method: Method,
    pub stats: SolveStats,
}

impl SolveResult {
    /// Answer to the decision variant, if the query carried a threshold.
    pub fn meets(&self, q: &SolveQuery) -> Option<bool> {
        q.threshold.map(|k| self.size >= k)
    }
}

/// Checks a witness the way every reported result must be checked: it is an
/// induced isomorphism, its size matches, and with `connected` both sides
/// induce connected subgraphs.
pub fn check_witness(q: &SolveQuery, result: &SolveResult) -> Result<()> {
    let w = &result.witness;
    if w.len() != result.size {
        return Err(Error::Domain(format!(
            "witness has {} pairs but size is {}",
            w.len(),
            result.size
        )));
    }
    if !is_induced_isomorphism(&q.g1, &q.g2, w)? {
        return Err(Error::Domain("witness is not an induced isomorphism".into()));
    }
    if q.connected && !(induces_connected(&q.g1, &w.domain()) && induces_connected(&q.g2, &w.image())) {
        return Err(Error::Domain("witness is not connected".into()));
    }
    Ok(())
}
