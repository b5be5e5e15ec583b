use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("image list is not a bijection")]
    NotABijection,

    #[error("group order {order} exceeds the enumeration limit {limit}")]
    OrderExceedsLimit { order: String, limit: String },

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("element does not have prime order")]
    NotPrimeOrder,

    #[error("generator does not lie in the parent group")]
    NotASubgroup,

    #[error("action is not transitive")]
    Intransitive,

    #[error("partition is not invariant under the group")]
    NonInvariantSystem,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("dataset parse error: {0}")]
    Parse(String),

    #[error("dataset `{name}`: {reason}")]
    Dataset { name: String, reason: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
