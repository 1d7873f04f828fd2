use thiserror::Error;

/// Errors raised by symbol algebra, section construction and verification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: i64, cap: i64 },

    #[error("symbol has winding number {0}; no logarithm exists in the algebra")]
    NonzeroWinding(i64),

    #[error("symbol nearly vanishes on the unit circle (min |a| = {0:e})")]
    NearZero(f64),

    #[error("symbol is not even (||a - flip(a)|| = {0:e})")]
    NotEven(f64),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("Fredholm truncation did not converge: {0}")]
    NoConvergence(String),

    #[error("(k = {k}, sign = {sign}) is outside the scope of the shifted-symbol theorem")]
    UnsupportedCase { k: i64, sign: char },

    #[error("realization {0} is not supported by this operation")]
    UnsupportedRealization(String),

    #[error("section size {n} is too small; need at least {needed}")]
    WindowTooSmall { n: usize, needed: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
