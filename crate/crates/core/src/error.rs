use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in the prime field")]
    DivisionByZero,

    #[error("{0} is not a supported prime modulus (need a prime 3 <= p < 2^32)")]
    InvalidModulus(u64),

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("subspaces live in different graded pieces ({0} vs {1})")]
    BasisMismatch(String, String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("component is not vertically graded with respect to the line: {0}")]
    NotVerticallyGraded(String),

    #[error("the map P1xP1 -> P2 is undefined at {0}")]
    PhiUndefined(String),

    #[error("tangent direction is degenerate: {0}")]
    DegenerateDirection(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("gave up after {0} resampling attempts")]
    ResampleLimit(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
