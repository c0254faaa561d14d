use thiserror::Error;

/// Errors raised by the algebra and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in different polynomial rings (variable space or modulus differ).
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    /// A product or power would exceed the configured total-degree cap.
    #[error("degree overflow: degree {degree} exceeds cap {cap}")]
    DegreeOverflow { degree: u64, cap: u32 },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    /// The requested criterion or method does not apply to this input.
    #[error("refused: {0}")]
    Refused(String),

    /// A size guard was hit before allocating.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
