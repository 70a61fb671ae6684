use thiserror::Error;

/// Errors raised by the library. Counterexamples found by verifiers are never
/// errors; they are entries in the corresponding report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("budget exceeded: attempted {attempted}, limit {limit} ({what})")]
    Budget {
        what: &'static str,
        attempted: u128,
        limit: u128,
    },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("classification error: {0}")]
    Classification(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("validation failed: {0}")]
    Validation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
