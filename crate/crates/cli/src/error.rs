//! Errors surfaced by the CSV and CLI layer.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse cell at line {line}, column {column}: {token:?} is neither a number nor a missing marker")]
    CellParse {
        line: u64,
        column: usize,
        token: String,
    },
    #[error("missing label at line {line}")]
    MissingLabel { line: u64 },
    #[error("label column {0:?} not found in header")]
    LabelNotFound(String),
    #[error("label index {index} out of range for {columns} columns")]
    LabelIndexOutOfRange { index: isize, columns: usize },
    #[error("label column {0:?} cannot be selected by name without a header row")]
    LabelNameWithoutHeader(String),
    #[error("input has no data rows")]
    EmptyInput,
    #[error("missing-value output token {0:?} would read back as a number")]
    AmbiguousMissingToken(String),
    #[error(transparent)]
    Core(#[from] lacuna::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
