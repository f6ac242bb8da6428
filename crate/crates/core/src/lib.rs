//! Maximum common (connected) induced subgraph and induced subgraph
//! isomorphism: graph primitives, structural parameters, exact solvers,
//! hardness-reduction gadgets and an oracle-comparison harness.

pub mod check;
pub mod error;
pub mod graph;
pub mod io;
pub mod params;
pub mod reductions;
pub mod solvers;

pub use error::{Error, Result};
pub use graph::{Graph, VertexMapping};
pub use solvers::{Method, SolveQuery, SolveResult};
