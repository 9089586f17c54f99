use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must contain at least one generator")]
    EmptyAlphabet,
    #[error("invalid generator names: {0}")]
    InvalidNames(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("generator {generator} is outside an alphabet of size {size}")]
    LetterOutOfRange { generator: u32, size: u32 },
    #[error("relator {0} is empty or freely trivial")]
    EmptyRelator(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("witness extraction failed: {0}")]
    Witness(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed encoding: {0}")]
    Encoding(String),
}

pub type Result<T> = std::result::Result<T, Error>;
