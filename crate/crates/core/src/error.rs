use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has {0} vertices; at most 32 are supported")]
    TooManyVertices(usize),
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("parameter {param} out of range: {detail}")]
    OutOfRange { param: &'static str, detail: String },
    #[error("graph6 parse error: {0}")]
    Graph6(String),
    #[error("edge list parse error: {0}")]
    EdgeList(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a cactus")]
    NotCactus,
    #[error("series truncation orders differ ({0} vs {1})")]
    TruncationMismatch(usize, usize),
    #[error("series has a nonzero constant term")]
    NonzeroConstant,
    #[error("catalog data: {0}")]
    Catalog(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
