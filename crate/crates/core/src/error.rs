use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed graph: {0}")]
    Malformed(String),

    #[error("attribute dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero edge attribute on ({from}, {to})")]
    ZeroEdgeAttribute { from: usize, to: usize },

    #[error("self-loop edge entry on node {0}; node attributes belong in `nodes`")]
    SelfLoop(usize),

    #[error("node index {index} out of range for graph of order {order}")]
    NodeOutOfRange { index: usize, order: usize },

    #[error("duplicate edge ({from}, {to})")]
    DuplicateEdge { from: usize, to: usize },

    #[error("non-finite attribute value")]
    NonFinite,

    #[error("cannot pad graph of order {order} down to {target}")]
    PadBelowOrder { order: usize, target: usize },

    #[error("order {order} exceeds guard {guard}")]
    OrderGuard { order: usize, guard: usize },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("matrix of an undirected graph must be symmetric")]
    Asymmetric,

    #[error("scalar multiplication by zero would produce zero edge attributes")]
    ZeroScalar,

    #[error("angle undefined for a graph of zero length")]
    ZeroLength,

    #[error("alignment center is not ordinary (isotropy group of size {0})")]
    NotOrdinary(usize),

    #[error("radius {rho} exceeds the isometry radius {rho_star}")]
    RadiusTooLarge { rho: f64, rho_star: f64 },

    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("operation requires attribute dimension {expected}, graph has {found}")]
    UnsupportedDimension { expected: usize, found: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
