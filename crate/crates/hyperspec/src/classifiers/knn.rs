//! K-nearest-neighbors classifier (Euclidean distance, brute force).
//!
//! Tie handling is pinned for reproducibility: equal distances order by
//! training-sample index, and a tied vote goes to the label of the nearest
//! neighbor among the tied classes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hsi_data::LabeledSampleSet;

/// KNN keeps the whole training set; prediction is a scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnModel {
    pub k: usize,
    pub train: LabeledSampleSet,
}

impl KnnModel {
    pub fn fit(train: &LabeledSampleSet, k: usize) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::EmptyInput("knn training set"));
        }
        if k == 0 {
            return Err(Error::InvalidConfig("knn k must be >= 1".into()));
        }
        if k > train.len() {
            return Err(Error::KTooLarge { k, n: train.len() });
        }
        Ok(Self {
            k,
            train: train.clone(),
        })
    }

    pub fn predict(&self, query: &[f64]) -> Result<u16> {
        knn_predict(&self.train, query, self.k)
    }
}

fn sq_dist(u: &[f64], v: &[f64]) -> f64 {
    u.iter()
        .zip(v)
        .map(|(a, b)| {
            let d = a - b;
            d * d
        })
        .sum()
}

/// Classify `query` by majority vote over its `k` nearest training samples.
pub fn knn_predict(train: &LabeledSampleSet, query: &[f64], k: usize) -> Result<u16> {
    if train.is_empty() {
        return Err(Error::EmptyInput("knn training set"));
    }
    if k == 0 {
        return Err(Error::InvalidConfig("knn k must be >= 1".into()));
    }
    if k > train.len() {
        return Err(Error::KTooLarge { k, n: train.len() });
    }
    if query.len() != train.dim() {
        return Err(Error::FeatureDimMismatch {
            expected: train.dim(),
            actual: query.len(),
        });
    }

    let n = train.len();
    let mut order: Vec<(f64, usize)> = (0..n)
        .map(|i| (sq_dist(train.feature(i), query), i))
        .collect();
    let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
    if k < n {
        order.select_nth_unstable_by(k - 1, cmp);
        order.truncate(k);
    }
    order.sort_unstable_by(cmp);

    let mut votes = vec![0usize; train.num_classes];
    for &(_, i) in &order {
        votes[train.label(i) as usize - 1] += 1;
    }
    let top = *votes.iter().max().expect("non-empty votes");
    let tied: Vec<u16> = (0..train.num_classes as u16)
        .filter(|&c| votes[c as usize] == top)
        .map(|c| c + 1)
        .collect();
    if tied.len() == 1 {
        return Ok(tied[0]);
    }
    // vote tie: nearest neighbor whose label belongs to a tied class decides
    for &(_, i) in &order {
        let l = train.label(i);
        if tied.contains(&l) {
            return Ok(l);
        }
    }
    unreachable!("a tied class always has at least one neighbor in the top k")
}
