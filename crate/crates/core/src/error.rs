use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partitions of different sizes: {0} and {1}")]
    SizeMismatch(usize, usize),

    #[error("algebra parameters need a >= 2 and b >= 2 (got a = {a}, b = {b})")]
    InvalidParams { a: usize, b: usize },

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("modules over different algebras")]
    ParamsMismatch,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("the matrix pair violates AB = BA = A^a = B^b = 0")]
    RelationsFail,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}
