use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty polynomial input")]
    EmptyInput,

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("constant term is zero; strip powers of x first")]
    ZeroConstantTerm,

    #[error("degree {degree} is below the required minimum {required}")]
    DegreeTooSmall { degree: usize, required: usize },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime {0} listed more than once")]
    DuplicatePrime(u64),

    #[error("polygons built for different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),

    #[error("abscissa {abscissa} outside 0..={degree}")]
    AbscissaOutOfRange { abscissa: usize, degree: usize },

    #[error("coefficient of x^{0} is zero but it was claimed as a vertex")]
    ZeroCoefficientAtVertex(usize),

    #[error("duplicate interpolation node x = {0}")]
    DuplicateNode(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("certificate does not re-verify: {0}")]
    CertificateMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
