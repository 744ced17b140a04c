//! Hyperspectral image classification toolkit.
//!
//! The crate covers the full benchmarking loop for pixel-wise supervised
//! classification of hyperspectral cubes:
//!
//! 1. [`hsi_data`] — raw band-sequential cube / ground-truth I/O, per-band
//!    quantization, labeled-sample extraction and seeded stratified splits.
//! 2. [`info_theory`] — histogram-based Shannon entropy, joint entropy and
//!    mutual information over discrete symbol sequences.
//! 3. [`band_selection`] — greedy mutual-information band filter: rank bands
//!    against the ground truth, grow a selected set and keep a candidate only
//!    if it raises the MI between ground truth and the averaged reference map.
//! 4. [`classifiers`] — from-scratch SVM (SMO, one-vs-one), KNN, LDA and
//!    random forest behind one train/predict contract, plus cross-validated
//!    grid search.
//! 5. [`evaluation`] — confusion matrix, sensitivity/specificity/precision,
//!    overall accuracy, Cohen's kappa and wall-clock timing.
//! 6. [`pipeline`] — the experiment driver: accuracy-vs-band-count sweeps,
//!    CSV report emission and classification-map rendering.
//!
//! Every step is deterministic given its seeds: identical configuration
//! produces identical selections, splits, models and output bytes.
//!
//! # Quick start
//!
//! ```
//! use hyperspec::synthetic;
//! use hyperspec::band_selection::{select_bands, SelectionConfig};
//!
//! let (cube, gt) = synthetic::planted_scene(12, 12, 6, 3, 42);
//! let state = select_bands(&cube, &gt, &SelectionConfig::new(4).with_levels(16)).unwrap();
//! assert!(!state.accepted.is_empty());
//! ```
//!
//! The `hyperspec-bench` binary exposes the same pipeline as a small CLI
//! (`run`, `select`, `render`); see the crate examples for library usage.

pub mod band_selection;
pub mod classifiers;
pub mod error;
pub mod evaluation;
pub mod hsi_data;
pub mod info_theory;
pub mod pipeline;
pub mod synthetic;
pub(crate) mod util;

pub use error::{Error, Result};
pub use hsi_data::{GroundTruthMap, HsiCube, LabeledSampleSet, QuantizedBand, SplitSpec};
