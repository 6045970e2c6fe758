use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input file or string (MSA, FASTA, Newick, bundle).
    #[error("format error: {0}")]
    Format(String),

    /// Well-formed input that violates a documented precondition.
    #[error("validation error: {0}")]
    Validation(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("interval [{lo}, {hi}) out of range for length {len}")]
    Range { lo: usize, hi: usize, len: usize },

    #[error("missing section {0}")]
    MissingSection(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
