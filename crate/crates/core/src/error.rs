use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} is not in a graph with {n} vertices")]
    UnknownVertex { vertex: usize, n: usize },

    #[error("mapping is not injective: {0}")]
    NonInjective(String),

    #[error("oracle refuses inputs with {got} vertices (bound is {bound})")]
    OracleBound { got: usize, bound: usize },

    #[error("threshold k = {k} exceeds the enumeration limit {limit} (would enumerate {candidates} candidate graphs)")]
    ThresholdTooLarge { k: usize, limit: usize, candidates: u128 },

    #[error("{0}")]
    Domain(String),

    #[error("instances are not in one equivalence class: {0}")]
    EquivalenceClass(String),

    #[error("3-partition instance is unsound for the forest gadget: {0}")]
    Soundness(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
