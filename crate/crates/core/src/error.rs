use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("instance too large: {what} is {size}, limit {limit}")]
    TooLarge {
        what: &'static str,
        size: u64,
        limit: u64,
    },
    #[error("no link for 0-graphs")]
    NoLinkForZeroGraph,
    #[error("vertex {vertex} out of range for a graph on {nvertices} vertices")]
    VertexOutOfRange { vertex: usize, nvertices: usize },
    #[error("invalid cell {cell:?}: {reason}")]
    InvalidCell { cell: Vec<usize>, reason: String },
    #[error("options must be disjoint from base")]
    OptionsOverlapBase,
    #[error("polygon requires at least 3 vertices, got {0}")]
    PolygonTooShort(usize),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("wrong arity: expected {expected}, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("missing quotient basis for arity {arity} on {nvertices} vertices")]
    MissingQuotientBasis { arity: usize, nvertices: usize },
    #[error("closed-form link contributions are defined for link arity 0, 1 or 2, got {0}")]
    NoClosedForm(usize),
    #[error("mixed word lengths: {0} and {1}")]
    MixedWordLengths(usize, usize),
    #[error("mixed arities in formal sum: {0} and {1}")]
    MixedArity(usize, usize),
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed input at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
