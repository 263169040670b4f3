use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported Lie type `{0}`")]
    UnsupportedType(String),

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("expected integral coordinates, got {0}")]
    NonIntegral(String),

    /// A mathematical precondition of the computation does not hold for the input.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// The weight is singular (a coroot pairing vanishes).
    #[error("weight lies on a wall: {0}")]
    OnWall(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Internal errors signal a bug; everything else is a rejected input.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
