use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: i64, n: usize },

    #[error("line {line}: negative weight {weight}")]
    NegativeWeight { line: usize, weight: f64 },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no edge of positive weight")]
    AllZeroWeights,

    #[error("weight ratio {ratio:e} exceeds the supported maximum 2^40")]
    WeightRatioTooLarge { ratio: f64 },

    #[error("cut side must contain between 1 and n-1 vertices, got {count} of {n}")]
    InvalidSide { count: usize, n: usize },

    #[error("graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("graph has {n} vertices; this algorithm supports at most {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("duplicate tree edge {0}")]
    DuplicateTreeEdge(usize),

    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(String),

    #[error("packing contains no trees")]
    EmptyPacking,

    #[error("internal error: {0}")]
    Internal(String),
}
