use thiserror::Error;

/// Errors raised by constructors, parsers and operations.
///
/// Mathematical failures (a relation that is not transitive, a table that is
/// not associative, ...) are *not* errors: validators report those as
/// witnessed [`crate::report::ValidationReport`] entries instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("carrier mismatch: subset is over {got} elements, expected {expected}")]
    CarrierMismatch { expected: usize, got: usize },

    #[error("carrier has {size} elements, cap is {cap}")]
    CarrierTooLarge { size: usize, cap: usize },

    #[error("carrier must have at least one element")]
    EmptyCarrier,

    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),

    #[error("empty element label at position {0}")]
    EmptyLabel(usize),

    #[error("unknown element label {0:?}")]
    UnknownLabel(String),

    /// JSON syntax / type errors; the serde message carries line and column.
    #[error("{0}")]
    Json(#[from] serde_json::Error),

    /// Semantically invalid input file (bad shape, inconsistent tables, ...).
    #[error("schema error: {0}")]
    Schema(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("argument is not an open set of the space")]
    NotOpen,

    #[error("malformed selection problem: {0}")]
    MalformedProblem(String),

    #[error("instance too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
