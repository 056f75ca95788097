use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    Field(String),
    #[error("enumeration cap exceeded: found {found} elements so far (cap {cap})")]
    CapExceeded { found: usize, cap: usize },
    #[error("generators mix element variants or shapes")]
    MixedVariants,
    #[error("group `{0}` is not enumerated")]
    NotEnumerated(String),
    #[error("not contained in the group: {0}")]
    NotContained(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("order of {descriptor} is {order}, above the enumeration cap {cap}")]
    OrderCap {
        descriptor: String,
        order: u128,
        cap: u128,
    },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown operation `{op}` in check `{id}`")]
    UnknownOperation { id: String, op: String },
    #[error("cache integrity failure: {0}")]
    Integrity(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
