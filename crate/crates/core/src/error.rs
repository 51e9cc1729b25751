use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A series value was NaN or infinite.
    #[error("invalid input: value {value} at index {index} is not finite")]
    NonFinite { index: usize, value: f64 },

    /// An argument was outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A CSV line could not be turned into a measurement.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The input contained no data rows.
    #[error("input contains no data rows")]
    EmptyInput,

    /// The requested output format is not handled by this renderer.
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    /// The PNG encoder failed.
    #[error("png encoding failed: {0}")]
    Encode(String),
}

impl Error {
    pub(crate) fn invalid_argument(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
