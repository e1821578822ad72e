use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for rank {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("rank {n} exceeds the enumeration cap {cap}")]
    RankCapExceeded { n: usize, cap: usize },
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("position {position} is not a two-element set")]
    NotTwoElementSet { position: usize },
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("malformed subset: {0}")]
    MalformedSubset(String),
    #[error("class assignment violates c(-j) = -c(j) at j = {0}")]
    ConstraintViolated(i32),
    #[error("parameter out of range: {0}")]
    ParameterRange(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("invalid discriminant {0}: must be a negative fundamental discriminant")]
    InvalidDiscriminant(i64),
    #[error("operands live over different orders ({0} vs {1})")]
    OrderMismatch(i64, i64),
    #[error("lattice is not contained in the standard lattice")]
    NotInAmbient,
    #[error("lattice is not a direct summand: {0}")]
    NotSummand(String),
    #[error("no rank-1 summand with the requested class within search bound {bound}")]
    SearchExhausted { bound: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("frame axiom violated: {0}")]
    FrameAxiom(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
