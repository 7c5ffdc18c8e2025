use thiserror::Error;

/// Errors raised by the library.
///
/// Variants are split into domain errors (the input is well formed but the
/// mathematics does not apply) and input errors (the input could not be read
/// or is malformed). See [`Error::is_domain`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{0} is not a prime modulus")]
    InvalidPrime(u64),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("empty matrix: 0x0 matrices are not supported")]
    EmptyMatrix,
    #[error("{0} is not an eigenvalue")]
    NotAnEigenvalue(String),
    #[error("duplicate eigenvalue {0}")]
    DuplicateEigenvalue(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid power index: {0}")]
    InvalidK(String),
    #[error("characteristic {characteristic} too small: need 0 or p > {bound}")]
    CharacteristicTooSmall { characteristic: u64, bound: u64 },
    #[error("characteristic polynomial does not split over Q ({found} of {degree} roots rational)")]
    NonSplit { found: usize, degree: usize },
    #[error("basis order not applicable: {0}")]
    OrderNotApplicable(String),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("invalid grouping: {0}")]
    InvalidGrouping(String),
    #[error("algebra dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("invalid algebra element: {0}")]
    InvalidElement(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("operation requires the rational field")]
    RequiresRationals,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// True for mathematical failures on well-formed input.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Parse(_) | Error::Io(_))
    }

    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::InvalidPrime(_) => "InvalidPrime",
            Error::NotSquare { .. } => "NotSquare",
            Error::NotNilpotent => "NotNilpotent",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::EmptyMatrix => "EmptyMatrix",
            Error::NotAnEigenvalue(_) => "NotAnEigenvalue",
            Error::DuplicateEigenvalue(_) => "DuplicateEigenvalue",
            Error::EmptyInput(_) => "EmptyInput",
            Error::InvalidPartition(_) => "InvalidPartition",
            Error::InvalidK(_) => "InvalidK",
            Error::CharacteristicTooSmall { .. } => "CharacteristicTooSmall",
            Error::NonSplit { .. } => "NonSplit",
            Error::OrderNotApplicable(_) => "OrderNotApplicable",
            Error::InvalidRange(_) => "InvalidRange",
            Error::InvalidGrouping(_) => "InvalidGrouping",
            Error::DimensionCap { .. } => "DimensionCap",
            Error::InvalidElement(_) => "InvalidElement",
            Error::Unsupported(_) => "Unsupported",
            Error::RequiresRationals => "RequiresRationals",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
