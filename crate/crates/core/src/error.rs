use thiserror::Error;

/// Errors produced by the library surface.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid radicand {0}: must be non-zero and not a perfect square")]
    InvalidRadicand(i64),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("{value} exceeds the sieve bound {max}")]
    OutOfRange { value: u64, max: u64 },

    #[error("invalid ideal [{norm}, {shift} + τ]: {reason}")]
    InvalidIdeal { norm: u64, shift: u64, reason: String },

    #[error("sieve bound {max} needs about {bytes} bytes, above the limit of {limit} bytes")]
    Memory { max: u64, bytes: u64, limit: u64 },

    #[error("malformed norm-set dump: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
