use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Plain-double evaluation would overflow; the caller should switch to
    /// the scaled (log-domain) routine.
    #[error("value overflows double precision at n = {n}, x = {x}; use scaled evaluation")]
    UseScaledEvaluation { n: usize, x: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular or not positive definite")]
    SingularMatrix,

    #[error("energy is not quantized: E/(hbar*omega) - 1/2 = {0} is not a non-negative integer")]
    NotQuantized(f64),

    #[error("unsupported order pair ({0}, {1})")]
    UnsupportedOrder(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
