use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} is outside the ground set [0, {ground_size})")]
    ElementOutOfRange { element: usize, ground_size: usize },

    #[error("subset {index} is not strictly increasing")]
    UnsortedSubset { index: usize },

    #[error("r must be at least {min}, got {got}")]
    InvalidArity { got: usize, min: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown vertex label `{0}`")]
    UnknownVertex(String),

    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),

    #[error("repeated vertex `{0}` in vertex tuple")]
    RepeatedVertex(String),

    #[error("facet {0} is empty")]
    EmptyFacet(usize),

    #[error("expected a graph (dimension at most 1), got dimension {0}")]
    NotAGraph(isize),

    #[error("pattern has {got} vertices, cap is {cap}")]
    PatternTooLarge { got: usize, cap: usize },

    #[error("search exceeded its budget of {0} steps")]
    BudgetExceeded(u64),

    #[error("constant must be positive")]
    NonPositiveConstant,

    #[error("invalid rational `{0}`")]
    BadRational(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("curves intersect")]
    CurvesIntersect,

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("no general-position choice found after {0} attempts")]
    GeneralPositionExhausted(usize),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
