use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    #[error("series too short: {len} samples, need at least {min}")]
    TooShort { len: usize, min: usize },

    #[error("series length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid scale grid: {0}")]
    ScaleGrid(String),

    #[error("invalid q grid: {0}")]
    QGrid(String),

    #[error("invalid segmentation: scale {scale} on {len} samples ({reason})")]
    Segmentation {
        len: usize,
        scale: usize,
        reason: &'static str,
    },

    #[error("polynomial order {order} needs more than {} points, got {len}", order + 1)]
    SegmentTooShort { order: usize, len: usize },

    #[error("rank-deficient trend fit (order {order}, {len} points)")]
    RankDeficient { order: usize, len: usize },

    #[error("need at least 3 consecutive defined tau(q) points, found {found}")]
    TooFewQPoints { found: usize },

    #[error("probability {0} outside (0, 1)")]
    Probability(f64),

    #[error("cascade with {0} stages does not fit in memory indices")]
    CascadeTooLarge(u32),

    #[error("non-positive price {value} at index {index}")]
    NonPositivePrice { index: usize, value: f64 },

    #[error("{path}: column '{column}' not found in header")]
    MissingColumn { path: PathBuf, column: String },

    #[error("{path}: row {row}, column '{column}': cannot parse '{cell}' as a number")]
    Parse {
        path: PathBuf,
        row: usize,
        column: String,
        cell: String,
    },

    #[error("{path}: duplicate date '{date}' at row {row}")]
    DuplicateDate {
        path: PathBuf,
        row: usize,
        date: String,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid configuration: {0}")]
    Config(String),
}
