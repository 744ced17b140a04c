//! Experiment driver: band-count sweeps, report emission and map rendering.
//!
//! An [`ExperimentConfig`] is built from defaults, optionally overlaid with a
//! flat `key=value` config file, then with CLI flags (last writer wins). One
//! selection pass and one stratified split feed every (classifier, band
//! count) cell, so curve differences isolate the band-count effect.

mod render;
mod sweep;

pub use render::{class_color, mask_map, render_ground_truth, render_map, write_ppm, ClassificationMap};
pub use sweep::{emit_reports, run_experiment, run_sweep, SweepResult, SweepRow};

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::band_selection::GestRule;
use crate::classifiers::{
    default_svm_grid, ClassifierSpec, KernelKind, KnnSpec, LdaMode, LdaSpec, MaxFeatures, RfParams,
    TrainedModel,
};
use crate::error::{Error, Result};
use crate::hsi_data::{HsiCube, Standardizer};

/// A roster entry: a stable id plus the hyperparameter family searched for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RosterEntry {
    pub id: String,
    pub family: SpecFamily,
}

/// Hyperparameter family of one roster entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecFamily {
    Svm(KernelKind),
    Rf,
    Lda(LdaMode),
    Knn(usize),
}

impl SpecFamily {
    /// Candidate specs in grid order. `dim` sizes the gamma grid; `seed`
    /// fixes the forest RNG stream.
    pub fn candidates(&self, dim: usize, seed: u64) -> Vec<ClassifierSpec> {
        match self {
            SpecFamily::Svm(kind) => default_svm_grid(*kind, dim),
            SpecFamily::Rf => vec![ClassifierSpec::Rf(RfParams {
                num_trees: 100,
                max_features: MaxFeatures::Sqrt,
                min_leaf: 1,
                seed,
            })],
            SpecFamily::Lda(mode) => vec![ClassifierSpec::Lda(LdaSpec {
                mode: *mode,
                ridge: 1e-6,
            })],
            SpecFamily::Knn(k) => vec![ClassifierSpec::Knn(KnnSpec { k: *k })],
        }
    }

    pub fn wants_standardization(&self) -> bool {
        !matches!(self, SpecFamily::Rf)
    }
}

/// The ten-variant benchmark roster: SVM with rbf / linear / sigmoid
/// kernels, a random forest, linear and diagonal LDA, and KNN with
/// k = 1, 3, 5, 7.
pub fn all_paper_roster() -> Vec<RosterEntry> {
    let entry = |id: &str, family| RosterEntry {
        id: id.to_string(),
        family,
    };
    vec![
        entry("svm-rbf", SpecFamily::Svm(KernelKind::Rbf)),
        entry("svm-linear", SpecFamily::Svm(KernelKind::Linear)),
        entry("svm-sigmoid", SpecFamily::Svm(KernelKind::Sigmoid)),
        entry("rf", SpecFamily::Rf),
        entry("lda-linear", SpecFamily::Lda(LdaMode::Linear)),
        entry("lda-diaglinear", SpecFamily::Lda(LdaMode::DiagLinear)),
        entry("knn-1", SpecFamily::Knn(1)),
        entry("knn-3", SpecFamily::Knn(3)),
        entry("knn-5", SpecFamily::Knn(5)),
        entry("knn-7", SpecFamily::Knn(7)),
    ]
}

/// Parse a roster string: `all-paper` or a comma-separated list of
/// `svm-rbf`, `svm-linear`, `svm-sigmoid`, `rf`, `lda-linear`,
/// `lda-diaglinear`, `knn-<k>`.
pub fn parse_roster(s: &str) -> Result<Vec<RosterEntry>> {
    let s = s.trim();
    if s == "all-paper" {
        return Ok(all_paper_roster());
    }
    let mut roster = Vec::new();
    for token in s.split(',') {
        let token = token.trim();
        let family = match token {
            "svm-rbf" => SpecFamily::Svm(KernelKind::Rbf),
            "svm-linear" => SpecFamily::Svm(KernelKind::Linear),
            "svm-sigmoid" => SpecFamily::Svm(KernelKind::Sigmoid),
            "rf" => SpecFamily::Rf,
            "lda-linear" => SpecFamily::Lda(LdaMode::Linear),
            "lda-diaglinear" => SpecFamily::Lda(LdaMode::DiagLinear),
            _ => match token.strip_prefix("knn-").and_then(|k| k.parse().ok()) {
                Some(k) if k >= 1 => SpecFamily::Knn(k),
                _ => {
                    return Err(Error::InvalidConfig(format!(
                        "unknown classifier token {token:?}"
                    )))
                }
            },
        };
        roster.push(RosterEntry {
            id: token.to_string(),
            family,
        });
    }
    if roster.is_empty() {
        return Err(Error::InvalidConfig("classifier roster is empty".into()));
    }
    Ok(roster)
}

/// Full experiment description. Every field maps to a `key=value` line in
/// the config file and to a same-named CLI flag.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub cube_path: PathBuf,
    pub gt_path: PathBuf,
    pub out_dir: PathBuf,
    pub band_counts: Vec<usize>,
    pub roster: Vec<RosterEntry>,
    pub train_fraction: f64,
    pub levels: usize,
    pub threshold: f64,
    pub gest_rule: GestRule,
    pub cv_folds: usize,
    pub seed: u64,
    pub standardize: bool,
    pub render_maps: bool,
    pub save_models: bool,
    /// When false, all reported train/predict times are written as 0 so
    /// repeated runs emit byte-identical files.
    pub timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            cube_path: PathBuf::new(),
            gt_path: PathBuf::new(),
            out_dir: PathBuf::from("out"),
            band_counts: (1..=10).map(|i| i * 10).collect(),
            roster: all_paper_roster(),
            train_fraction: 0.5,
            levels: 256,
            threshold: 0.0,
            gest_rule: GestRule::AllAcceptedMean,
            cv_folds: 5,
            seed: 0,
            standardize: true,
            render_maps: true,
            save_models: true,
            timing: true,
        }
    }
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim() {
        "true" | "1" => Ok(true),
        "false" | "0" => Ok(false),
        other => Err(Error::InvalidConfig(format!(
            "{key} expects true/false, got {other:?}"
        ))),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| {
        Error::InvalidConfig(format!("cannot parse {key}={value:?}"))
    })
}

impl ExperimentConfig {
    /// Apply one `key=value` override. Keys match the CLI flag names.
    pub fn apply_kv(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "cube" => self.cube_path = PathBuf::from(value.trim()),
            "gt" => self.gt_path = PathBuf::from(value.trim()),
            "out" => self.out_dir = PathBuf::from(value.trim()),
            "bands" => {
                let mut counts = Vec::new();
                for part in value.split(',') {
                    counts.push(parse_num::<usize>(key, part)?);
                }
                self.band_counts = counts;
            }
            "classifiers" => self.roster = parse_roster(value)?,
            "train-fraction" => self.train_fraction = parse_num(key, value)?,
            "levels" => self.levels = parse_num(key, value)?,
            "threshold" => self.threshold = parse_num(key, value)?,
            "gest-rule" => {
                self.gest_rule = match value.trim() {
                    "mean" => GestRule::AllAcceptedMean,
                    "pairwise" => GestRule::PairwiseRecursive,
                    other => {
                        return Err(Error::InvalidConfig(format!(
                            "gest-rule expects mean or pairwise, got {other:?}"
                        )))
                    }
                }
            }
            "cv-folds" => self.cv_folds = parse_num(key, value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "standardize" => self.standardize = parse_bool(key, value)?,
            "render-maps" => self.render_maps = parse_bool(key, value)?,
            "save-models" => self.save_models = parse_bool(key, value)?,
            "timing" => self.timing = parse_bool(key, value)?,
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown config key {other:?}"
                )))
            }
        }
        Ok(())
    }

    /// Overlay a flat `key=value` file (blank lines and `#` comments ignored).
    pub fn apply_file(&mut self, path: impl AsRef<Path>) -> Result<()> {
        let text = std::fs::read_to_string(path.as_ref())?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::InvalidConfig(format!(
                    "{}:{}: expected key=value, got {line:?}",
                    path.as_ref().display(),
                    lineno + 1
                )));
            };
            self.apply_kv(key.trim(), value)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.cube_path.as_os_str().is_empty() {
            return Err(Error::InvalidConfig("cube path is required".into()));
        }
        if self.gt_path.as_os_str().is_empty() {
            return Err(Error::InvalidConfig("gt path is required".into()));
        }
        if self.band_counts.is_empty() {
            return Err(Error::InvalidConfig("band counts are empty".into()));
        }
        if self.band_counts[0] == 0 {
            return Err(Error::InvalidConfig("band counts must be >= 1".into()));
        }
        if self.band_counts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(
                "band counts must be strictly increasing".into(),
            ));
        }
        if self.roster.is_empty() {
            return Err(Error::InvalidConfig("classifier roster is empty".into()));
        }
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(Error::InvalidConfig(
                "train-fraction must be strictly between 0 and 1".into(),
            ));
        }
        if self.levels < 2 {
            return Err(Error::InvalidConfig("levels must be >= 2".into()));
        }
        if self.cv_folds < 2 {
            return Err(Error::InvalidConfig("cv-folds must be >= 2".into()));
        }
        Ok(())
    }
}

/// A trained classifier bundled with everything needed to classify raw cube
/// pixels: the band subset, the optional train-fitted standardizer and the
/// class count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineModel {
    pub classifier_id: String,
    pub band_ids: Vec<usize>,
    pub standardizer: Option<Standardizer>,
    pub num_classes: usize,
    pub model: TrainedModel,
}

impl PipelineModel {
    /// Classify the pixel at flat index `p` straight from the cube.
    pub fn predict_pixel(&self, cube: &HsiCube, p: usize) -> Result<u16> {
        let pixels = cube.pixels();
        let mut x: Vec<f64> = self
            .band_ids
            .iter()
            .map(|&b| cube.data[b * pixels + p] as f64)
            .collect();
        if let Some(std) = &self.standardizer {
            x = std.transform_vec(&x);
        }
        self.model.predict(&x)
    }

    pub fn save_json(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }

    pub fn load_json(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}
