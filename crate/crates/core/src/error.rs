use thiserror::Error;

/// Errors raised by the algebraic operations.
///
/// Parse failures are kept separate so the command surface can map them to
/// their own exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator count mismatch: {0} vs {1}")]
    GeneratorMismatch(usize, usize),
    #[error("signature mismatch")]
    SignatureMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("missing inverse of the underlying map")]
    MissingInverse,
    #[error("invalid underlying inverse: {0}")]
    InvalidInverse(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("naturality violation: {0}")]
    NaturalityViolation(String),
    #[error("endomorphism does not anticommute with the base structure")]
    NotTangent,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("dimension is not determined by genus and degree: {0}")]
    NonTopological(String),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
