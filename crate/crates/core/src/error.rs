use crate::polycore::IntPoly;

/// Errors raised by the analyzers and the polynomial layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("a non-constant polynomial is required")]
    ConstantPolynomial,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("polynomial is reducible over the rationals; factor {factor}")]
    Reducible { factor: IntPoly },

    #[error("irreducibility could not be certified within caps; pass the assume-irreducible flag to proceed")]
    UncertifiedIrreducibility,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
