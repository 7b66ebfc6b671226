use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
