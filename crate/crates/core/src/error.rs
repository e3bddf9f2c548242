use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),

    #[error("size limit exceeded: {what} would need {needed} edges, cap is {cap}")]
    SizeLimit { what: String, needed: u128, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("face data missing")]
    FacesMissing,

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("construction metadata missing or inconsistent: {0}")]
    Metadata(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not outerplanar: {0}")]
    NotOuterplanar(String),

    #[error("no orientation with out-degree at most {bound}: vertex set {witness:?} spans too many edges")]
    Infeasible { bound: usize, witness: Vec<usize> },

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("search budget of {0} nodes exceeded; result inconclusive")]
    Inconclusive(u64),

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
