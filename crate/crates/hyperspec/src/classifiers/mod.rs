//! The four supervised learners behind one train/predict contract.
//!
//! [`ClassifierSpec`] names a variant plus its hyperparameters;
//! [`train_classifier`] turns it into a [`TrainedModel`] that predicts class
//! labels for feature vectors. Models serialize to self-describing JSON and
//! reload with bit-identical predictions.

mod forest;
mod grid_search;
mod kernel;
mod knn;
mod lda;
mod svm;

pub use forest::{rf_fit, DecisionTree, MaxFeatures, RfModel, RfParams, TreeNode};
pub use grid_search::{grid_search_cv, stratified_folds, GridSearchOutcome};
pub use kernel::{kernel_eval, KernelKind, KernelParams};
pub use knn::{knn_predict, KnnModel};
pub use lda::{lda_fit, LdaMode, LdaModel};
pub use svm::{svm_train_binary, svm_train_multiclass, BinarySvm, PairMachine, SmoOptions, SvmModel};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{Error, Result};
use crate::hsi_data::LabeledSampleSet;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvmSpec {
    pub kernel: KernelParams,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnnSpec {
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LdaSpec {
    pub mode: LdaMode,
    pub ridge: f64,
}

impl Default for LdaSpec {
    fn default() -> Self {
        Self {
            mode: LdaMode::Linear,
            ridge: 1e-6,
        }
    }
}

/// One classifier variant with its hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum ClassifierSpec {
    Svm(SvmSpec),
    Knn(KnnSpec),
    Lda(LdaSpec),
    Rf(RfParams),
}

impl ClassifierSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ClassifierSpec::Svm(s) => {
                s.kernel.validate()?;
                if s.c <= 0.0 {
                    return Err(Error::InvalidConfig(format!("C must be > 0, got {}", s.c)));
                }
            }
            ClassifierSpec::Knn(s) => {
                if s.k == 0 {
                    return Err(Error::InvalidConfig("knn k must be >= 1".into()));
                }
            }
            ClassifierSpec::Lda(s) => {
                if s.ridge < 0.0 {
                    return Err(Error::InvalidConfig(format!(
                        "ridge must be >= 0, got {}",
                        s.ridge
                    )));
                }
            }
            ClassifierSpec::Rf(s) => {
                if s.num_trees == 0 {
                    return Err(Error::InvalidConfig("num_trees must be >= 1".into()));
                }
                if s.min_leaf == 0 {
                    return Err(Error::InvalidConfig("min_leaf must be >= 1".into()));
                }
            }
        }
        Ok(())
    }

    /// Seed standardization-sensitive variants; forests use raw features.
    pub fn wants_standardization(&self) -> bool {
        !matches!(self, ClassifierSpec::Rf(_))
    }
}

impl std::fmt::Display for ClassifierSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassifierSpec::Svm(s) => match s.kernel.kind {
                KernelKind::Linear => write!(f, "svm-linear(C={})", s.c),
                KernelKind::Rbf => write!(f, "svm-rbf(C={},gamma={})", s.c, s.kernel.gamma),
                KernelKind::Sigmoid => write!(
                    f,
                    "svm-sigmoid(C={},gamma={},coef0={})",
                    s.c, s.kernel.gamma, s.kernel.coef0
                ),
            },
            ClassifierSpec::Knn(s) => write!(f, "knn-{}", s.k),
            ClassifierSpec::Lda(s) => write!(f, "lda-{}", s.mode),
            ClassifierSpec::Rf(s) => {
                let m = match s.max_features {
                    MaxFeatures::Sqrt => "sqrt".to_string(),
                    MaxFeatures::Count(c) => c.to_string(),
                };
                write!(
                    f,
                    "rf(trees={},max_features={m},min_leaf={})",
                    s.num_trees, s.min_leaf
                )
            }
        }
    }
}

/// The default search grid for a kernel family: `C` in {0.1, 1, 10, 100}
/// crossed with `gamma` in {1/d, 0.01, 0.1, 1} for the rbf and sigmoid
/// kernels (`coef0` fixed at 0); the linear kernel searches `C` only.
pub fn default_svm_grid(kind: KernelKind, dim: usize) -> Vec<ClassifierSpec> {
    let cs = [0.1, 1.0, 10.0, 100.0];
    let gammas = [1.0 / dim.max(1) as f64, 0.01, 0.1, 1.0];
    let mut grid = Vec::new();
    for &c in &cs {
        match kind {
            KernelKind::Linear => grid.push(ClassifierSpec::Svm(SvmSpec {
                kernel: KernelParams::linear(),
                c,
            })),
            KernelKind::Rbf => {
                for &g in &gammas {
                    grid.push(ClassifierSpec::Svm(SvmSpec {
                        kernel: KernelParams::rbf(g),
                        c,
                    }));
                }
            }
            KernelKind::Sigmoid => {
                for &g in &gammas {
                    grid.push(ClassifierSpec::Svm(SvmSpec {
                        kernel: KernelParams::sigmoid(g, 0.0),
                        c,
                    }));
                }
            }
        }
    }
    grid
}

/// A trained classifier of any variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum TrainedModel {
    Svm(SvmModel),
    Knn(KnnModel),
    Lda(LdaModel),
    Rf(RfModel),
}

/// Train `spec` on `set`.
pub fn train_classifier(spec: &ClassifierSpec, set: &LabeledSampleSet) -> Result<TrainedModel> {
    spec.validate()?;
    if set.is_empty() {
        return Err(Error::EmptyInput("training set"));
    }
    Ok(match spec {
        ClassifierSpec::Svm(s) => TrainedModel::Svm(svm_train_multiclass(
            set,
            &s.kernel,
            s.c,
            &SmoOptions::default(),
        )?),
        ClassifierSpec::Knn(s) => TrainedModel::Knn(KnnModel::fit(set, s.k)?),
        ClassifierSpec::Lda(s) => TrainedModel::Lda(lda_fit(set, s.mode, s.ridge)?),
        ClassifierSpec::Rf(s) => TrainedModel::Rf(rf_fit(set, s)?),
    })
}

impl TrainedModel {
    /// Feature dimension the model was trained on.
    pub fn dim(&self) -> usize {
        match self {
            TrainedModel::Svm(m) => m.dim,
            TrainedModel::Knn(m) => m.train.dim(),
            TrainedModel::Lda(m) => m.dim,
            TrainedModel::Rf(m) => m.dim,
        }
    }

    pub fn predict(&self, x: &[f64]) -> Result<u16> {
        if x.len() != self.dim() {
            return Err(Error::FeatureDimMismatch {
                expected: self.dim(),
                actual: x.len(),
            });
        }
        Ok(match self {
            TrainedModel::Svm(m) => m.predict(x),
            TrainedModel::Knn(m) => m.predict(x)?,
            TrainedModel::Lda(m) => m.predict(x),
            TrainedModel::Rf(m) => m.predict(x),
        })
    }

    /// Predict every sample of `set`, in order (parallel over samples).
    pub fn predict_set(&self, set: &LabeledSampleSet) -> Result<Vec<u16>> {
        if set.dim() != self.dim() {
            return Err(Error::FeatureDimMismatch {
                expected: self.dim(),
                actual: set.dim(),
            });
        }
        (0..set.len())
            .into_par_iter()
            .map(|i| self.predict(set.feature(i)))
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn save_json(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load_json(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
