//! Error type shared across the library.

use crate::tabular::ClassLabel;
use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("matrix must be rectangular: row {row} has {found} cells, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },

    #[error("non-finite value {value} at row {row}, column {col}")]
    NonFinite { row: usize, col: usize, value: f64 },

    #[error("label count {labels} does not match row count {rows}")]
    LabelCountMismatch { labels: usize, rows: usize },

    #[error("expected {expected} column names, got {found}")]
    ColumnNameCountMismatch { expected: usize, found: usize },

    #[error("duplicate column name {0:?}")]
    DuplicateColumnName(String),

    #[error("label index {index} out of range for {columns} columns")]
    LabelIndexOutOfRange { index: usize, columns: usize },

    #[error("interpolation coefficient {0} outside [0, 1]")]
    InvalidLambda(f64),

    #[error("ratio strategy requires binary labels (found {0} classes)")]
    RatioRequiresBinary(usize),

    #[error("ratio must be in (0, 1], got {0}")]
    InvalidRatio(f64),

    #[error("undersampling not supported: class {class} has {current} samples, target {target}")]
    UndersamplingNotSupported {
        class: ClassLabel,
        current: usize,
        target: usize,
    },

    #[error("unknown class {0} in explicit strategy")]
    UnknownClassInStrategy(ClassLabel),

    #[error("unknown class {0} in profile")]
    UnknownClassInProfile(ClassLabel),

    #[error("empty class {0} in sampling plan")]
    EmptyClass(ClassLabel),

    #[error("nothing to resample: dataset has a single class")]
    SingleClass,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
