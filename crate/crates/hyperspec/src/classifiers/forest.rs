//! Random forest of CART trees: seeded bootstrap per tree, random feature
//! subset per node, best split by weighted Gini impurity, majority voting.
//!
//! Per-tree RNG streams derive from `(seed, tree index)`, so growing trees in
//! parallel cannot change the forest.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hsi_data::LabeledSampleSet;
use crate::util::rng_stream;

/// Features examined per node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaxFeatures {
    /// `floor(sqrt(F))`, the usual forest default.
    Sqrt,
    Count(usize),
}

impl MaxFeatures {
    pub fn resolve(&self, total: usize) -> usize {
        match *self {
            MaxFeatures::Sqrt => ((total as f64).sqrt().floor() as usize).clamp(1, total),
            MaxFeatures::Count(m) => m.clamp(1, total),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RfParams {
    pub num_trees: usize,
    pub max_features: MaxFeatures,
    pub min_leaf: usize,
    pub seed: u64,
}

impl Default for RfParams {
    fn default() -> Self {
        Self {
            num_trees: 100,
            max_features: MaxFeatures::Sqrt,
            min_leaf: 1,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TreeNode {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        label: u16,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    nodes: Vec<TreeNode>,
}

impl DecisionTree {
    /// Assemble a tree from raw nodes (node 0 is the root).
    pub fn from_nodes(nodes: Vec<TreeNode>) -> Self {
        Self { nodes }
    }

    pub fn predict(&self, x: &[f64]) -> u16 {
        let mut at = 0usize;
        loop {
            match self.nodes[at] {
                TreeNode::Leaf { label } => return label,
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if x[feature] <= threshold { left } else { right };
                }
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RfModel {
    pub params: RfParams,
    pub trees: Vec<DecisionTree>,
    pub dim: usize,
    pub num_classes: usize,
}

fn gini_from_counts(counts: &[usize], total: usize) -> f64 {
    let t = total as f64;
    1.0 - counts
        .iter()
        .map(|&c| {
            let p = c as f64 / t;
            p * p
        })
        .sum::<f64>()
}

fn majority_label(counts: &[usize]) -> u16 {
    let mut best = 0usize;
    for i in 1..counts.len() {
        if counts[i] > counts[best] {
            best = i;
        }
    }
    best as u16 + 1
}

/// Draw `m` distinct feature indices with a partial Fisher-Yates shuffle.
fn draw_features(rng: &mut impl Rng, m: usize, total: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..total).collect();
    for i in 0..m {
        let j = rng.random_range(i..total);
        pool.swap(i, j);
    }
    pool.truncate(m);
    pool
}

struct TreeBuilder<'a> {
    set: &'a LabeledSampleSet,
    min_leaf: usize,
    m: usize,
    nodes: Vec<TreeNode>,
}

/// Exhaustive best split for one feature over the node's samples.
/// Returns `(weighted gini, threshold)` of the best position, if any
/// position satisfies the `min_leaf` constraint.
fn best_split_for_feature(
    set: &LabeledSampleSet,
    indices: &[usize],
    feature: usize,
    min_leaf: usize,
    num_classes: usize,
) -> Option<(f64, f64)> {
    let n = indices.len();
    let mut order: Vec<(f64, u16)> = indices
        .iter()
        .map(|&i| (set.feature(i)[feature], set.label(i)))
        .collect();
    order.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));

    let mut left_counts = vec![0usize; num_classes];
    let mut right_counts = vec![0usize; num_classes];
    for &(_, l) in &order {
        right_counts[l as usize - 1] += 1;
    }

    let mut best: Option<(f64, f64)> = None;
    for p in 1..n {
        let (v_prev, l_prev) = order[p - 1];
        left_counts[l_prev as usize - 1] += 1;
        right_counts[l_prev as usize - 1] -= 1;
        let v = order[p].0;
        if v_prev >= v {
            continue; // no threshold separates equal values
        }
        let (nl, nr) = (p, n - p);
        if nl < min_leaf || nr < min_leaf {
            continue;
        }
        let w = (nl as f64 * gini_from_counts(&left_counts, nl)
            + nr as f64 * gini_from_counts(&right_counts, nr))
            / n as f64;
        let threshold = 0.5 * (v_prev + v);
        if best.is_none_or(|(bw, _)| w < bw) {
            best = Some((w, threshold));
        }
    }
    best
}

impl TreeBuilder<'_> {
    fn grow(&mut self, indices: &[usize], rng: &mut impl Rng) -> usize {
        let num_classes = self.set.num_classes;
        let mut counts = vec![0usize; num_classes];
        for &i in indices {
            counts[self.set.label(i) as usize - 1] += 1;
        }
        let parent_gini = gini_from_counts(&counts, indices.len());
        let pure = counts.iter().filter(|&&c| c > 0).count() == 1;
        if pure || indices.len() < 2 * self.min_leaf {
            self.nodes.push(TreeNode::Leaf {
                label: majority_label(&counts),
            });
            return self.nodes.len() - 1;
        }

        let candidates = draw_features(rng, self.m, self.set.dim());
        let mut best: Option<(f64, usize, f64)> = None; // (weighted gini, feature, threshold)
        for &feature in &candidates {
            if let Some((w, thr)) = best_split_for_feature(
                self.set,
                indices,
                feature,
                self.min_leaf,
                num_classes,
            ) {
                if best.is_none_or(|(bw, _, _)| w < bw) {
                    best = Some((w, feature, thr));
                }
            }
        }
        let Some((w, feature, threshold)) = best else {
            self.nodes.push(TreeNode::Leaf {
                label: majority_label(&counts),
            });
            return self.nodes.len() - 1;
        };
        if w >= parent_gini {
            // no impurity-reducing split among the drawn features
            self.nodes.push(TreeNode::Leaf {
                label: majority_label(&counts),
            });
            return self.nodes.len() - 1;
        }

        let (left_idx, right_idx): (Vec<usize>, Vec<usize>) = indices
            .iter()
            .partition(|&&i| self.set.feature(i)[feature] <= threshold);

        let at = self.nodes.len();
        self.nodes.push(TreeNode::Leaf { label: 0 }); // placeholder
        let left = self.grow(&left_idx, rng);
        let right = self.grow(&right_idx, rng);
        self.nodes[at] = TreeNode::Split {
            feature,
            threshold,
            left,
            right,
        };
        at
    }
}

fn grow_tree(set: &LabeledSampleSet, params: &RfParams, tree_idx: usize) -> DecisionTree {
    let mut rng = rng_stream(params.seed, &[tree_idx as u64]);
    let n = set.len();
    let bootstrap: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
    let mut builder = TreeBuilder {
        set,
        min_leaf: params.min_leaf,
        m: params.max_features.resolve(set.dim()),
        nodes: Vec::new(),
    };
    builder.grow(&bootstrap, &mut rng);
    DecisionTree {
        nodes: builder.nodes,
    }
}

/// Grow `num_trees` CART trees on seeded bootstrap samples.
pub fn rf_fit(set: &LabeledSampleSet, params: &RfParams) -> Result<RfModel> {
    if set.is_empty() {
        return Err(Error::EmptyInput("random forest training set"));
    }
    if params.num_trees == 0 {
        return Err(Error::InvalidConfig("num_trees must be >= 1".into()));
    }
    if params.min_leaf == 0 {
        return Err(Error::InvalidConfig("min_leaf must be >= 1".into()));
    }
    let trees: Vec<DecisionTree> = (0..params.num_trees)
        .into_par_iter()
        .map(|t| grow_tree(set, params, t))
        .collect();
    Ok(RfModel {
        params: *params,
        trees,
        dim: set.dim(),
        num_classes: set.num_classes,
    })
}

impl RfModel {
    /// Majority vote over the trees; ties break toward the smaller class id.
    pub fn predict(&self, x: &[f64]) -> u16 {
        let mut votes = vec![0usize; self.num_classes];
        for tree in &self.trees {
            votes[tree.predict(x) as usize - 1] += 1;
        }
        majority_label(&votes)
    }

    /// Raw per-tree predictions (vote inspection).
    pub fn tree_votes(&self, x: &[f64]) -> Vec<u16> {
        self.trees.iter().map(|t| t.predict(x)).collect()
    }
}
