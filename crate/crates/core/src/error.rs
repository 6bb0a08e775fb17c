use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u64, cap: usize },

    #[error("element is not a member of the group")]
    NonMember,

    #[error("subgroup is not contained in the ambient group")]
    NonSubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group of order {0} is not a p-group for p = {1}")]
    NotPGroup(u64, u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("{0} is too large")]
    TooLarge(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("construction check failed: {0}")]
    ConstructionCheck(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;
