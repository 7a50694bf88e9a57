use thiserror::Error;

/// Errors raised by graph construction, the algorithms and the oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("instance too large: {size} vertices exceeds the limit of {limit}")]
    InstanceTooLarge { size: usize, limit: usize },

    #[error("not a minor model: {0}")]
    NotAModel(String),

    #[error("cycle is not contained in the lifted subgraph: {0}")]
    NotInLift(String),

    #[error("pool exhausted: needed another vertex after using {used}")]
    PoolExhausted { used: usize },

    #[error("reserved budget exhausted: need {needed} reserved parts, have {available}")]
    BudgetExhausted { needed: usize, available: usize },

    #[error("host too small: need at least {needed} vertices, got {got}")]
    HostTooSmall { needed: usize, got: usize },

    #[error("bound formula undefined for n = {n}: log2 n - 3 log2 log2 n is not positive")]
    FormulaUndefined { n: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
