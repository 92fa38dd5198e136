use thiserror::Error;

/// Errors surfaced by the library. Symbol formulas return exact zero for
/// non-triangular input; errors are reserved for malformed arguments and
/// violated formula preconditions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("q-factorial of a negative argument: [{0}]!")]
    NegativeFactorial(i64),
    #[error("polynomial division left a remainder")]
    InexactDivision,
    #[error("triangle condition violated for twice-spins ({0}, {1}, {2})")]
    TriangleViolation(i64, i64, i64),
    #[error("stretch condition violated: {0}")]
    StretchViolation(String),
    #[error("ill-formed identity parameters: {0}")]
    IllFormedParams(String),
    #[error("series has no terminating parameter")]
    NonTerminating,
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
