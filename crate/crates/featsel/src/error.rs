//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown feature id {0}")]
    UnknownFeatureId(usize),
    #[error("duplicate feature id {0}")]
    DuplicateFeatureId(usize),
    #[error("empty feature id list")]
    EmptyFeatureIds,
    #[error("no rows given")]
    EmptyRows,
    #[error("binary classifier only: dataset has {0} classes")]
    NotBinary(usize),
    #[error("training rows contain a single class")]
    SingleClassTraining,
    #[error("feature ids of the view do not match the model")]
    FeatureIdMismatch,
    #[error("class {class} has zero evaluated samples")]
    EmptyClass { class: usize },
    #[error("class {class} has {count} samples, need at least k = {k}")]
    TooFewSamplesForFolds { class: usize, count: usize, k: usize },
    #[error("need at least 2 bins, got {0}")]
    TooFewBins(usize),
    #[error("counts are all zero")]
    ZeroCounts,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("need at least 2 scores for a standard deviation")]
    TooFewScores,
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("invalid json: {0}")]
    Json(#[from] serde_json::Error),
}
