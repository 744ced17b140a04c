//! Confusion-matrix construction and the derived benchmark metrics:
//! per-class sensitivity / specificity / precision (one-vs-rest), overall
//! accuracy, Cohen's kappa, and wall-clock timing.
//!
//! Single-figure metrics are macro-averaged (unweighted mean) over the
//! classes present in the test set; the raw per-class values are always kept
//! so any alternative averaging can be recomputed.

use serde::{Deserialize, Serialize};
use std::time::Instant;

use crate::classifiers::TrainedModel;
use crate::error::{Error, Result};
use crate::hsi_data::LabeledSampleSet;

/// `C x C` count grid; rows are true classes, columns predicted classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    counts: Vec<u64>,
    num_classes: usize,
    total: u64,
}

impl ConfusionMatrix {
    /// Tally `(truth, predicted)` pairs; labels must lie in `[1, C]`.
    pub fn from_pairs(truth: &[u16], predicted: &[u16], num_classes: usize) -> Result<Self> {
        if truth.len() != predicted.len() {
            return Err(Error::LengthMismatch {
                left: truth.len(),
                right: predicted.len(),
            });
        }
        if truth.is_empty() {
            return Err(Error::EmptyInput("confusion matrix"));
        }
        let mut counts = vec![0u64; num_classes * num_classes];
        for (&t, &p) in truth.iter().zip(predicted) {
            for &l in [t, p].iter() {
                if l == 0 || l as usize > num_classes {
                    return Err(Error::LabelOutOfRange {
                        label: l,
                        num_classes,
                    });
                }
            }
            counts[(t as usize - 1) * num_classes + (p as usize - 1)] += 1;
        }
        Ok(Self {
            counts,
            num_classes,
            total: truth.len() as u64,
        })
    }

    /// Build from a dense grid (`grid[t][p]`, 0-indexed classes).
    pub fn from_grid(grid: &[Vec<u64>]) -> Result<Self> {
        let num_classes = grid.len();
        if num_classes == 0 || grid.iter().any(|r| r.len() != num_classes) {
            return Err(Error::InvalidConfig(
                "confusion grid must be square and non-empty".into(),
            ));
        }
        let mut counts = Vec::with_capacity(num_classes * num_classes);
        for row in grid {
            counts.extend_from_slice(row);
        }
        let total = counts.iter().sum();
        if total == 0 {
            return Err(Error::EmptyInput("confusion matrix"));
        }
        Ok(Self {
            counts,
            num_classes,
            total,
        })
    }

    pub fn count(&self, truth: u16, predicted: u16) -> u64 {
        self.counts[(truth as usize - 1) * self.num_classes + (predicted as usize - 1)]
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn row_sum(&self, class: u16) -> u64 {
        (1..=self.num_classes as u16)
            .map(|p| self.count(class, p))
            .sum()
    }

    pub fn col_sum(&self, class: u16) -> u64 {
        (1..=self.num_classes as u16)
            .map(|t| self.count(t, class))
            .sum()
    }

    pub fn trace(&self) -> u64 {
        (1..=self.num_classes as u16).map(|c| self.count(c, c)).sum()
    }
}

/// One-vs-rest reduction of a confusion matrix for one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryCounts {
    pub tp: u64,
    pub tn: u64,
    pub fp: u64,
    pub fn_: u64,
}

/// `TP = cm[c][c]`, `FN = row c - TP`, `FP = col c - TP`,
/// `TN = total - TP - FN - FP`.
pub fn per_class_binary_counts(cm: &ConfusionMatrix, class: u16) -> Result<BinaryCounts> {
    if class == 0 || class as usize > cm.num_classes {
        return Err(Error::LabelOutOfRange {
            label: class,
            num_classes: cm.num_classes,
        });
    }
    let tp = cm.count(class, class);
    let fn_ = cm.row_sum(class) - tp;
    let fp = cm.col_sum(class) - tp;
    let tn = cm.total - tp - fn_ - fp;
    Ok(BinaryCounts { tp, tn, fp, fn_ })
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// `TP / (TP + FN)`; 0 when the denominator is 0.
pub fn sensitivity(c: &BinaryCounts) -> f64 {
    ratio(c.tp, c.tp + c.fn_)
}

/// `TN / (TN + FP)`; 0 when the denominator is 0.
pub fn specificity(c: &BinaryCounts) -> f64 {
    ratio(c.tn, c.tn + c.fp)
}

/// `TP / (TP + FP)`; 0 when the denominator is 0.
pub fn precision(c: &BinaryCounts) -> f64 {
    ratio(c.tp, c.tp + c.fp)
}

/// Fraction of correctly classified samples, `trace / total`.
pub fn overall_accuracy(cm: &ConfusionMatrix) -> f64 {
    cm.trace() as f64 / cm.total as f64
}

/// Cohen's kappa with the marginal-product chance term, plus a flag for the
/// degenerate `p_e = 1` case (all mass in one true-and-predicted class),
/// where kappa is defined as 1 if `p_o = 1` and 0 otherwise.
///
/// Evaluated as `(total * trace - sum_c row_c col_c) / (total^2 - sum_c
/// row_c col_c)`: identical to `(p_o - p_e) / (1 - p_e)` but with exact
/// integer numerator and denominator, so the result is correctly rounded.
pub fn cohen_kappa_flagged(cm: &ConfusionMatrix) -> (f64, bool) {
    let marginal_product: u64 = (1..=cm.num_classes as u16)
        .map(|c| cm.row_sum(c) * cm.col_sum(c))
        .sum();
    let numerator = cm.total * cm.trace();
    let denominator = cm.total * cm.total;
    if denominator == marginal_product {
        let kappa = if cm.trace() == cm.total { 1.0 } else { 0.0 };
        return (kappa, true);
    }
    (
        (numerator as f64 - marginal_product as f64)
            / (denominator as f64 - marginal_product as f64),
        false,
    )
}

/// Cohen's kappa (see [`cohen_kappa_flagged`]).
pub fn cohen_kappa(cm: &ConfusionMatrix) -> f64 {
    cohen_kappa_flagged(cm).0
}

/// Sensitivity, specificity and precision of one class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub class: u16,
    /// Number of test samples truly in this class (confusion row sum).
    pub support: u64,
    pub sensitivity: f64,
    pub specificity: f64,
    pub precision: f64,
    /// True when any of the three denominators was 0 (metric forced to 0).
    pub degenerate: bool,
}

/// A full evaluation of one trained model on one test set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub confusion: ConfusionMatrix,
    pub per_class: Vec<ClassMetrics>,
    /// Macro averages over classes present in the test set.
    pub sensitivity: f64,
    pub specificity: f64,
    pub precision: f64,
    pub oa: f64,
    pub kappa: f64,
    pub kappa_degenerate: bool,
    pub train_seconds: f64,
    pub predict_seconds: f64,
}

impl EvalReport {
    /// Summarize a confusion matrix with externally supplied timings.
    pub fn from_confusion(
        confusion: ConfusionMatrix,
        train_seconds: f64,
        predict_seconds: f64,
    ) -> Self {
        let mut per_class = Vec::with_capacity(confusion.num_classes);
        let mut present = 0usize;
        let (mut sens_sum, mut spec_sum, mut prec_sum) = (0.0, 0.0, 0.0);
        for class in 1..=confusion.num_classes as u16 {
            let counts = per_class_binary_counts(&confusion, class).expect("class in range");
            let degenerate = counts.tp + counts.fn_ == 0
                || counts.tn + counts.fp == 0
                || counts.tp + counts.fp == 0;
            let m = ClassMetrics {
                class,
                support: confusion.row_sum(class),
                sensitivity: sensitivity(&counts),
                specificity: specificity(&counts),
                precision: precision(&counts),
                degenerate,
            };
            if m.support > 0 {
                present += 1;
                sens_sum += m.sensitivity;
                spec_sum += m.specificity;
                prec_sum += m.precision;
            }
            per_class.push(m);
        }
        let n = present.max(1) as f64;
        let oa = overall_accuracy(&confusion);
        let (kappa, kappa_degenerate) = cohen_kappa_flagged(&confusion);
        Self {
            confusion,
            per_class,
            sensitivity: sens_sum / n,
            specificity: spec_sum / n,
            precision: prec_sum / n,
            oa,
            kappa,
            kappa_degenerate,
            train_seconds,
            predict_seconds,
        }
    }

    /// Header of [`Self::to_csv_row`], in the conventional benchmark-table
    /// column order.
    pub fn csv_header() -> &'static str {
        "sensitivity,specificity,precision,oa,kappa,time_s"
    }

    /// One CSV row; `time_s` is train + predict wall clock.
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.sensitivity,
            self.specificity,
            self.precision,
            self.oa,
            self.kappa,
            self.train_seconds + self.predict_seconds
        )
    }

    /// Per-class metric table as CSV.
    pub fn per_class_csv(&self) -> String {
        let mut out =
            String::from("class,support,sensitivity,specificity,precision,degenerate\n");
        for m in &self.per_class {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                m.class,
                m.support,
                m.sensitivity,
                m.specificity,
                m.precision,
                u8::from(m.degenerate)
            ));
        }
        out
    }
}

/// Predict every test sample, assemble the confusion matrix and all metrics.
///
/// `train_seconds` is supplied by the caller (who timed training);
/// prediction is timed here.
pub fn evaluate(
    model: &TrainedModel,
    test: &LabeledSampleSet,
    train_seconds: f64,
) -> Result<EvalReport> {
    let started = Instant::now();
    let predictions = model.predict_set(test)?;
    let predict_seconds = started.elapsed().as_secs_f64();
    let confusion = ConfusionMatrix::from_pairs(test.labels(), &predictions, test.num_classes)?;
    Ok(EvalReport::from_confusion(
        confusion,
        train_seconds,
        predict_seconds,
    ))
}
