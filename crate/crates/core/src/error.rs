use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operands mix exact and approximate arithmetic")]
    ModeMismatch,
    #[error("negative Pochhammer index {0}")]
    NegativeIndex(i64),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("pole at index {index}: {what}")]
    PoleError { index: usize, what: String },
    #[error("series diverges: {0}")]
    DivergenceError(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("sampler for {id} rejected {attempts} consecutive draws")]
    SamplerExhausted { id: String, attempts: usize },
    #[error("theta function argument is zero")]
    ZeroArgument,
    #[error("pole on the integration contour: {0}")]
    PoleOnContour(String),
    #[error("integral hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("exact mode unsupported: {0}")]
    ExactUnsupported(String),
    #[error("missing parameter {0:?}")]
    MissingParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn pole(index: usize, what: impl Into<String>) -> Self {
        Error::PoleError { index, what: what.into() }
    }

    /// Failures caused by a numerical process not settling, as opposed to bad
    /// input or a wrong identity.
    pub fn is_nonconvergence(&self) -> bool {
        matches!(self, Error::NoConvergence(_) | Error::DivergenceError(_))
    }
}
