use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },

    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    OutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },

    #[error("vertex {0} is not a live vertex of the graph")]
    DeadVertex(usize),

    #[error("oracle is limited to {limit} vertices, graph has {n}")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matching is inconsistent with the bipartite graph: {0}")]
    InvalidMatching(String),

    #[error("reduction trace does not match graph: {0}")]
    TraceMismatch(String),

    #[error("set is not independent: edge {0}-{1}")]
    NotIndependent(usize, usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
