use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ordinal: {0}")]
    Ordinal(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("tree too large: {n} vertices exceeds bound {bound}")]
    TooLarge { n: usize, bound: usize },

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("unresolvable address {address}: {reason}")]
    Address { address: String, reason: String },

    #[error("undecided sequence: {0}")]
    Undecided(String),

    #[error("no distinguished end: {0}")]
    NoEnd(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
