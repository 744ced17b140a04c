//! Greedy mutual-information band filter.
//!
//! The filter works in four steps: (1) compute the MI between the ground
//! truth and every band, (2) seed the selection with the top-ranked band,
//! (3) build an approximated reference map `G_est` by averaging the selected
//! bands with each candidate, and (4) keep the candidate only if it raises
//! `MI(GT, G_est)`. Candidates are visited once, in descending rank order;
//! rejected bands are never revisited.
//!
//! MI is always estimated over labeled (nonzero-GT) pixels only: the 0-label
//! background carries no class information and would dominate the histograms.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hsi_data::{quantize_values, GroundTruthMap, HsiCube};
use crate::info_theory::mutual_information;

/// How the reference map evolves when a candidate is accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum GestRule {
    /// `G_est` = pixel-wise arithmetic mean of all accepted bands.
    #[default]
    AllAcceptedMean,
    /// `G_est` = mean of the previous `G_est` and the candidate band,
    /// applied recursively. Exposed for comparison; the all-accepted mean is
    /// the default rule.
    PairwiseRecursive,
}

/// Tuning knobs for [`select_bands`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectionConfig {
    /// Stop once this many bands are accepted.
    pub max_bands: usize,
    /// Histogram levels used to quantize bands and `G_est` for MI estimation.
    pub levels: usize,
    /// Minimum MI gain a candidate must add to be retained.
    pub threshold: f64,
    pub gest_rule: GestRule,
}

impl SelectionConfig {
    pub fn new(max_bands: usize) -> Self {
        Self {
            max_bands,
            levels: 256,
            threshold: 0.0,
            gest_rule: GestRule::AllAcceptedMean,
        }
    }

    pub fn with_levels(mut self, levels: usize) -> Self {
        self.levels = levels;
        self
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn with_gest_rule(mut self, rule: GestRule) -> Self {
        self.gest_rule = rule;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.max_bands == 0 {
            return Err(Error::InvalidConfig("max_bands must be >= 1".into()));
        }
        if self.levels < 2 {
            return Err(Error::InvalidConfig("levels must be >= 2".into()));
        }
        if self.threshold < 0.0 {
            return Err(Error::InvalidConfig("threshold must be >= 0".into()));
        }
        Ok(())
    }
}

/// One candidate evaluation in the greedy loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub band_id: usize,
    pub trial_mi_bits: f64,
    pub accepted: bool,
    /// Accepted-set size after this trial.
    pub cumulative_selected: usize,
}

/// Outcome of a selection run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionState {
    /// Accepted band indices, in acceptance order (no duplicates).
    pub accepted: Vec<usize>,
    /// The reference map over all `H x W` pixels.
    pub gest: Vec<f64>,
    /// `MI(GT, quantized G_est)` in bits for the current accepted set.
    pub current_mi: f64,
    /// Every trial, including the seed band.
    pub trace: Vec<TrialRecord>,
}

impl SelectionState {
    /// Trace as CSV (`band_id,trial_mi_bits,accepted,cumulative_selected`).
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("band_id,trial_mi_bits,accepted,cumulative_selected\n");
        for t in &self.trace {
            out.push_str(&format!(
                "{},{},{},{}\n",
                t.band_id,
                t.trial_mi_bits,
                u8::from(t.accepted),
                t.cumulative_selected
            ));
        }
        out
    }
}

/// Pixel indices and labels of the labeled region.
struct LabeledView {
    indices: Vec<usize>,
    labels: Vec<u32>,
}

impl LabeledView {
    fn build(gt: &GroundTruthMap) -> Result<Self> {
        let mut indices = Vec::new();
        let mut labels = Vec::new();
        for (i, &l) in gt.labels.iter().enumerate() {
            if l != 0 {
                indices.push(i);
                labels.push(l as u32);
            }
        }
        if indices.is_empty() {
            return Err(Error::NoLabeledPixels);
        }
        Ok(Self { indices, labels })
    }

    /// MI between the labels and a full-frame map, quantized by its own
    /// extremes and then restricted to labeled pixels.
    fn mi_with_map(&self, map: &[f64], levels: usize) -> Result<f64> {
        let codes = quantize_values(map, levels)?;
        let restricted: Vec<u32> = self.indices.iter().map(|&i| codes[i]).collect();
        mutual_information(&restricted, &self.labels)
    }
}

fn check_dims(cube: &HsiCube, gt: &GroundTruthMap) -> Result<()> {
    if cube.height != gt.height || cube.width != gt.width {
        return Err(Error::DimensionMismatch {
            expected_h: cube.height,
            expected_w: cube.width,
            actual_h: gt.height,
            actual_w: gt.width,
        });
    }
    Ok(())
}

/// MI between the ground truth and every band, sorted descending.
///
/// Ties break toward the smaller band id. Bands are quantized by their own
/// extremes; MI is computed over labeled pixels only.
pub fn rank_bands_by_mi(
    cube: &HsiCube,
    gt: &GroundTruthMap,
    levels: usize,
) -> Result<Vec<(usize, f64)>> {
    check_dims(cube, gt)?;
    let view = LabeledView::build(gt)?;
    let mut ranked: Vec<(usize, f64)> = (0..cube.bands)
        .into_par_iter()
        .map(|b| {
            let values: Vec<f64> = cube.band(b)?.iter().map(|&v| v as f64).collect();
            Ok((b, view.mi_with_map(&values, levels)?))
        })
        .collect::<Result<_>>()?;
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    Ok(ranked)
}

/// Pixel-wise arithmetic mean of the given bands' raw values.
pub fn build_gest(cube: &HsiCube, accepted: &[usize]) -> Result<Vec<f64>> {
    if accepted.is_empty() {
        return Err(Error::EmptyBandIds);
    }
    let pixels = cube.pixels();
    let mut sum = vec![0.0f64; pixels];
    for &b in accepted {
        for (s, &v) in sum.iter_mut().zip(cube.band(b)?) {
            *s += v as f64;
        }
    }
    let n = accepted.len() as f64;
    for s in &mut sum {
        *s /= n;
    }
    Ok(sum)
}

/// Run the greedy filter and return the accepted bands, reference map, final
/// MI and the full trial trace.
///
/// The top-ranked band seeds the selection and is always accepted; every
/// later candidate is retained only if its trial MI exceeds the current MI
/// by more than `config.threshold`.
pub fn select_bands(
    cube: &HsiCube,
    gt: &GroundTruthMap,
    config: &SelectionConfig,
) -> Result<SelectionState> {
    config.validate()?;
    check_dims(cube, gt)?;
    let view = LabeledView::build(gt)?;
    let ranked = rank_bands_by_mi(cube, gt, config.levels)?;

    let pixels = cube.pixels();
    let (seed_band, _) = ranked[0];

    // Running state. `sum` backs the all-accepted mean; `gest` is the map
    // the pairwise rule folds into.
    let mut accepted = vec![seed_band];
    let mut sum: Vec<f64> = cube.band(seed_band)?.iter().map(|&v| v as f64).collect();
    let mut gest = sum.clone();
    let mut current_mi = view.mi_with_map(&gest, config.levels)?;
    let mut trace = vec![TrialRecord {
        band_id: seed_band,
        trial_mi_bits: current_mi,
        accepted: true,
        cumulative_selected: 1,
    }];

    let mut trial = vec![0.0f64; pixels];
    for &(band, _) in ranked.iter().skip(1) {
        if accepted.len() >= config.max_bands {
            break;
        }
        let band_values = cube.band(band)?;
        match config.gest_rule {
            GestRule::AllAcceptedMean => {
                let k = accepted.len() as f64 + 1.0;
                for ((t, &s), &v) in trial.iter_mut().zip(&sum).zip(band_values) {
                    *t = (s + v as f64) / k;
                }
            }
            GestRule::PairwiseRecursive => {
                for ((t, &g), &v) in trial.iter_mut().zip(&gest).zip(band_values) {
                    *t = (g + v as f64) / 2.0;
                }
            }
        }
        let trial_mi = view.mi_with_map(&trial, config.levels)?;
        let accept = trial_mi > current_mi + config.threshold;
        if accept {
            accepted.push(band);
            for (s, &v) in sum.iter_mut().zip(band_values) {
                *s += v as f64;
            }
            gest.copy_from_slice(&trial);
            current_mi = trial_mi;
        }
        trace.push(TrialRecord {
            band_id: band,
            trial_mi_bits: trial_mi,
            accepted: accept,
            cumulative_selected: accepted.len(),
        });
    }

    Ok(SelectionState {
        accepted,
        gest,
        current_mi,
        trace,
    })
}
