use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("operation {op} expects {expected}")]
    Arity { op: u8, expected: &'static str },

    #[error("unknown fold operation {0}; expected 1..=8")]
    UnknownOperation(u8),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("value outside the domain: {0}")]
    OutOfDomain(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("malformed trace: {0}")]
    Structural(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("nothing to draw: the trace has no fold steps")]
    EmptyDiagram,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
