use thiserror::Error;

/// Errors raised by the engine. Variants map onto the precondition failures
/// the CLI reports with exit code 2, except `Internal`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("degenerate system: {0}")]
    DegenerateSystem(String),
    #[error("matroid has loops: {0:?}")]
    LoopsPresent(Vec<usize>),
    #[error("orbit mismatch: {0}")]
    OrbitMismatch(String),
    #[error("not a tropical Pluecker vector: {0}")]
    NotPluecker(String),
    #[error("bad dimensions: {0}")]
    BadDimensions(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("labels are not surjective onto 0..={0}")]
    NotSurjective(usize),
    #[error("not contained: {0}")]
    NotContained(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than the engine.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
