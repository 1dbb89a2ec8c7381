use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty body")]
    EmptyBody,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("wrong seminorm kind: expected {0}")]
    WrongKind(&'static str),
    #[error("too many atoms for brute-force oracle: {0} (cap {1})")]
    TooManyAtoms(usize, usize),
    #[error("no dual certificate for atom {atom}: value lies in the seminorm kernel")]
    NoCertificate { atom: usize },
    #[error("inner body is not contained in outer body")]
    NotContained,
    #[error("zonal approximation did not certify eps={eps} within {cap} doublings")]
    NoConvergence { eps: f64, cap: usize },
    #[error("unknown scenario: {0}")]
    UnknownScenario(String),
    #[error("unsupported dimension: {0}")]
    BadDim(usize),
    #[error("non-finite coordinate encountered")]
    NonFinite,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
