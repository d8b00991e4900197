use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("point {point} appears twice (position {pos})")]
    DuplicatePoint { point: usize, pos: usize },

    #[error("point {point} out of range 1..={n} (position {pos})")]
    PointOutOfRange { point: usize, n: usize, pos: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("characteristic {0} is neither 0 nor a prime below 2^32")]
    BadCharacteristic(u64),

    #[error("field mismatch: characteristic {left} vs {right}")]
    FieldMismatch { left: u64, right: u64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not a permutation matrix: {0}")]
    NotPermutationMatrix(String),

    #[error("inconsistent cycle-count oracle: {0}")]
    InconsistentOracle(String),

    #[error("{what} has {size} elements, above the limit of {limit}")]
    LimitExceeded { what: String, size: String, limit: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// Resource-limit failures are reported separately from domain errors.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::LimitExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
