//! Cross-validated hyperparameter search on the training split only.

use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::{train_classifier, ClassifierSpec};
use crate::error::{Error, Result};
use crate::hsi_data::LabeledSampleSet;
use crate::util::rng_stream;

/// Seeded stratified fold assignment: per class, shuffled indices are dealt
/// round-robin across `folds`. Every present class must hold at least
/// `folds` samples.
pub fn stratified_folds(
    set: &LabeledSampleSet,
    folds: usize,
    seed: u64,
) -> Result<Vec<Vec<usize>>> {
    if folds < 2 {
        return Err(Error::InvalidConfig(format!(
            "cross validation needs >= 2 folds, got {folds}"
        )));
    }
    let mut per_class: Vec<Vec<usize>> = vec![Vec::new(); set.num_classes];
    for i in 0..set.len() {
        per_class[set.label(i) as usize - 1].push(i);
    }
    let mut assignment = vec![Vec::new(); folds];
    for (ci, members) in per_class.iter().enumerate() {
        if members.is_empty() {
            continue;
        }
        if members.len() < folds {
            return Err(Error::ClassTooSmall {
                class: ci as u16 + 1,
                count: members.len(),
                min: folds,
            });
        }
        let mut shuffled = members.clone();
        shuffled.shuffle(&mut rng_stream(seed, &[ci as u64 + 1]));
        for (pos, &idx) in shuffled.iter().enumerate() {
            assignment[pos % folds].push(idx);
        }
    }
    Ok(assignment)
}

/// Result of a grid search: the winning spec and each candidate's mean
/// fold overall accuracy (aligned with the candidate order).
#[derive(Debug, Clone)]
pub struct GridSearchOutcome {
    pub best: ClassifierSpec,
    pub mean_oa: Vec<f64>,
}

/// Pick the candidate with the highest mean fold overall accuracy.
///
/// Candidates are evaluated on a stratified k-fold split of `set` (which
/// should be the training portion only). Ties go to the earlier candidate.
/// A single-candidate grid is returned as-is after validating the fold
/// preconditions.
pub fn grid_search_cv(
    set: &LabeledSampleSet,
    candidates: &[ClassifierSpec],
    folds: usize,
    seed: u64,
) -> Result<GridSearchOutcome> {
    if candidates.is_empty() {
        return Err(Error::EmptyInput("hyperparameter grid"));
    }
    let assignment = stratified_folds(set, folds, seed)?;
    if candidates.len() == 1 {
        return Ok(GridSearchOutcome {
            best: candidates[0].clone(),
            mean_oa: Vec::new(),
        });
    }

    // (candidate, fold) cells are independent; evaluate them in parallel and
    // reduce in index order.
    let cells: Vec<(usize, usize)> = (0..candidates.len())
        .flat_map(|c| (0..folds).map(move |f| (c, f)))
        .collect();
    let oas: Vec<f64> = cells
        .par_iter()
        .map(|&(c, f)| {
            let held = &assignment[f];
            let train_idx: Vec<usize> = assignment
                .iter()
                .enumerate()
                .filter(|&(g, _)| g != f)
                .flat_map(|(_, idx)| idx.iter().copied())
                .collect();
            let train = set.subset(&train_idx);
            let model = train_classifier(&candidates[c], &train)?;
            let mut correct = 0usize;
            for &i in held {
                if model.predict(set.feature(i))? == set.label(i) {
                    correct += 1;
                }
            }
            Ok(correct as f64 / held.len() as f64)
        })
        .collect::<Result<_>>()?;

    let mean_oa: Vec<f64> = (0..candidates.len())
        .map(|c| (0..folds).map(|f| oas[c * folds + f]).sum::<f64>() / folds as f64)
        .collect();
    let mut best = 0usize;
    for c in 1..candidates.len() {
        if mean_oa[c] > mean_oa[best] {
            best = c;
        }
    }
    Ok(GridSearchOutcome {
        best: candidates[best].clone(),
        mean_oa,
    })
}
