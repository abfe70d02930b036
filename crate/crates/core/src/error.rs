use thiserror::Error;

/// Errors raised by the algebraic and numeric layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of order {depth} exceeds the cap of {cap}")]
    PoleCapExceeded { depth: u32, cap: u32 },

    #[error("series known only to order {available}, order {required} needed")]
    InsufficientOrder { required: i32, available: i32 },

    #[error("substitution requires a power series, found a pole part")]
    PolePart,

    #[error("word contains a j letter; operation is defined on d/y words only")]
    NotDWord,

    #[error("word has a nonzero trailing exponent (lies in the ideal T)")]
    TailNonzero,

    #[error("empty word has no index vector")]
    EmptyWord,

    #[error("shuffle recursion exceeded {0} steps")]
    FuelExhausted(u64),

    #[error("internal consistency check failed: {0}")]
    Integrity(String),

    #[error("no convergence after {terms} terms: {detail}")]
    NonConvergence { terms: u64, detail: String },

    #[error("extrapolation did not converge: {0}")]
    ExtrapolationFailed(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
