use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("modulus is not irreducible modulo {p}")]
    ReducibleModulus { p: u32 },
    #[error("sigma exponent {s} out of range for r = {r}")]
    InvalidSigma { s: u32, r: u32 },
    #[error("invalid ring parameters: {0}")]
    InvalidRing(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("level {level} out of range for a ring of length {length}")]
    LevelOutOfRange { level: usize, length: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("shape mismatch: {0} vs {1}")]
    ShapeMismatch(String, String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("instance too large for exact search: {0}")]
    TooLarge(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
