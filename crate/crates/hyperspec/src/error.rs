//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by loading, selection, training and evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("bad header {path}: {reason}")]
    Header { path: String, reason: String },

    #[error("payload size mismatch in {path}: header implies {expected} bytes, file holds {actual}")]
    SizeMismatch {
        path: String,
        expected: u64,
        actual: u64,
    },

    #[error("non-finite sample in {path} at byte offset {offset}")]
    NonFiniteSample { path: String, offset: u64 },

    #[error("dimension mismatch: expected {expected_h}x{expected_w}, got {actual_h}x{actual_w}")]
    DimensionMismatch {
        expected_h: usize,
        expected_w: usize,
        actual_h: usize,
        actual_w: usize,
    },

    #[error("band index {band} out of range (cube has {bands} bands)")]
    BandOutOfRange { band: usize, bands: usize },

    #[error("band id list is empty")]
    EmptyBandIds,

    #[error("band id list contains a duplicate: {band}")]
    DuplicateBandId { band: usize },

    #[error("no labeled pixels (every ground-truth label is 0)")]
    NoLabeledPixels,

    #[error("class {class} has {count} samples; at least {min} required")]
    ClassTooSmall {
        class: u16,
        count: usize,
        min: usize,
    },

    #[error("feature vector length mismatch: expected {expected}, got {actual}")]
    FeatureDimMismatch { expected: usize, actual: usize },

    #[error("sequence length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("training data contains a single class; two are required")]
    SingleClass,

    #[error("k = {k} exceeds training-set size {n}")]
    KTooLarge { k: usize, n: usize },

    #[error("pooled covariance is singular at dimension {dim} even after ridge")]
    SingularCovariance { dim: usize },

    #[error("label {label} out of range [1, {num_classes}]")]
    LabelOutOfRange { label: u16, num_classes: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
