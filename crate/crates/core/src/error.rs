use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("ordinal nesting depth {depth} exceeds cap {cap}")]
    DepthCap { depth: usize, cap: usize },
    #[error("wrong ordinal class: expected {expected}, got {got}")]
    WrongClass { expected: &'static str, got: String },
    #[error("invalid disjoint collection: {0}")]
    InvalidCollection(String),
    #[error("invalid finite set: {0}")]
    InvalidSet(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("node budget of {budget} exhausted after {nodes} expansions")]
    BudgetExceeded { budget: u64, nodes: u64 },
    #[error("stream exhausted after {read} elements while {pieces} pieces still pending")]
    StreamExhausted { read: usize, pieces: usize },
    #[error("family is not hereditary over its ground")]
    NotHereditary,
    #[error("empty set has no binary encoding")]
    EmptySet,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
