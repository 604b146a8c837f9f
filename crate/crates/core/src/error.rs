use thiserror::Error;

/// Errors raised by partition construction, enumeration and formula evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("not centrally symmetric: block {0:?} has no mirror block")]
    NotSymmetric(Vec<i32>),
    #[error("more than one zero-block")]
    MultipleZeroBlocks,
    #[error("partition is crossing")]
    CrossingInput,
    #[error("ground set of {points} points exceeds the limit of {limit}")]
    GroundTooLarge { points: usize, limit: usize },
    #[error("invalid family: {0}")]
    InvalidSpec(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("block type does not match the ground size: {0}")]
    MassMismatch(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("summation domain too large: {0}")]
    DomainTooLarge(String),
    #[error("partition is not {k}-equal")]
    NotKEqual { k: usize },
    #[error("partition is not {k}-divisible")]
    NotKDivisible { k: usize },
    #[error("partition is not non-crossing")]
    NotNoncrossing,
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
