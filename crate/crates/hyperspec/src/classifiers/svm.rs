//! Soft-margin SVM trained by sequential minimal optimization, with a
//! one-vs-one reduction for multiclass problems.
//!
//! The solver keeps an error cache `E_i = f(x_i) - y_i` and repeatedly
//! optimizes the maximal violating pair: the most up-movable point with the
//! smallest error against the most down-movable point with the largest
//! error. The pair subproblem is solved analytically and clipped to the box
//! `[0, C]`; the dual equality constraint is preserved exactly by
//! construction. Iteration stops when the violation gap falls within the
//! KKT tolerance, after which the bias is centered so every multiplier
//! satisfies its KKT condition within `tol`. Everything is deterministic:
//! ties break toward the smaller index.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kernel::{kernel_eval_unchecked, KernelParams};
use crate::error::{Error, Result};
use crate::hsi_data::LabeledSampleSet;

/// Keep the full kernel matrix in memory up to this many samples.
const KERNEL_CACHE_LIMIT: usize = 2048;

/// Multipliers below this are treated as zero, above `C -` this as bound.
const ALPHA_EPS: f64 = 1e-8;

/// SMO stopping parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoOptions {
    /// KKT violation tolerance.
    pub tol: f64,
    /// Consecutive rounds without any multiplier change before giving up.
    pub max_passes: usize,
    /// Iteration budget per training sample (total budget is at least
    /// 10,000); hitting it clears the convergence flag.
    pub max_iter_per_sample: usize,
    /// Record the dual objective after every update (test diagnostics).
    pub log_objective: bool,
}

impl Default for SmoOptions {
    fn default() -> Self {
        Self {
            tol: 1e-3,
            max_passes: 5,
            max_iter_per_sample: 100,
            log_objective: false,
        }
    }
}

/// A trained binary machine: support vectors and their dual coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinarySvm {
    pub kernel: KernelParams,
    pub c: f64,
    /// Support vectors (training points with alpha > 0), in training order.
    pub support_vectors: Vec<Vec<f64>>,
    /// Dual multipliers of the support vectors (alpha, all positive).
    pub sv_alphas: Vec<f64>,
    /// Labels of the support vectors, each -1 or +1.
    pub sv_labels: Vec<f64>,
    /// Indices of the support vectors in the training subset.
    pub sv_indices: Vec<usize>,
    pub bias: f64,
    /// False when the solver ran out of budget with violations remaining.
    pub converged: bool,
    /// Dual objective after each update, when logging was requested.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objective_trace: Vec<f64>,
}

impl BinarySvm {
    /// Decision value `f(x) = sum alpha_i y_i K(x_i, x) + b`.
    pub fn decision(&self, x: &[f64]) -> f64 {
        let mut f = self.bias;
        for ((sv, &a), &y) in self
            .support_vectors
            .iter()
            .zip(&self.sv_alphas)
            .zip(&self.sv_labels)
        {
            f += a * y * kernel_eval_unchecked(&self.kernel, sv, x);
        }
        f
    }

    /// `sum alpha_i y_i` over all multipliers (zero at the dual optimum).
    pub fn dual_constraint_residual(&self) -> f64 {
        self.sv_alphas
            .iter()
            .zip(&self.sv_labels)
            .map(|(&a, &y)| a * y)
            .sum()
    }
}

/// Training problem view with an optional cached kernel matrix.
struct Problem<'a> {
    rows: Vec<&'a [f64]>,
    y: &'a [f64],
    kernel: KernelParams,
    cache: Option<Vec<f64>>,
    n: usize,
}

impl<'a> Problem<'a> {
    fn new(rows: Vec<&'a [f64]>, y: &'a [f64], kernel: KernelParams) -> Self {
        let n = rows.len();
        let cache = if n <= KERNEL_CACHE_LIMIT {
            let mut m = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..=i {
                    let k = kernel_eval_unchecked(&kernel, rows[i], rows[j]);
                    m[i * n + j] = k;
                    m[j * n + i] = k;
                }
            }
            Some(m)
        } else {
            None
        };
        Self {
            rows,
            y,
            kernel,
            cache,
            n,
        }
    }

    fn k(&self, i: usize, j: usize) -> f64 {
        match &self.cache {
            Some(m) => m[i * self.n + j],
            None => kernel_eval_unchecked(&self.kernel, self.rows[i], self.rows[j]),
        }
    }

    fn k_row(&self, i: usize, out: &mut Vec<f64>) {
        out.clear();
        match &self.cache {
            Some(m) => out.extend_from_slice(&m[i * self.n..(i + 1) * self.n]),
            None => out.extend(
                self.rows
                    .iter()
                    .map(|r| kernel_eval_unchecked(&self.kernel, self.rows[i], r)),
            ),
        }
    }
}

struct SmoState<'a> {
    problem: Problem<'a>,
    alpha: Vec<f64>,
    errors: Vec<f64>,
    bias: f64,
    c: f64,
    row_i: Vec<f64>,
    row_j: Vec<f64>,
}

impl SmoState<'_> {
    /// Solve the two-variable subproblem for (i, j); true if alpha moved.
    fn try_update(&mut self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let (yi, yj) = (self.problem.y[i], self.problem.y[j]);
        let (ai, aj) = (self.alpha[i], self.alpha[j]);
        let (lo, hi) = if yi != yj {
            ((aj - ai).max(0.0), (self.c + aj - ai).min(self.c))
        } else {
            ((ai + aj - self.c).max(0.0), (ai + aj).min(self.c))
        };
        if hi - lo < 1e-12 {
            return false;
        }
        let kii = self.problem.k(i, i);
        let kjj = self.problem.k(j, j);
        let kij = self.problem.k(i, j);
        let eta = kii + kjj - 2.0 * kij;
        // eta <= 0 can happen for indefinite kernels (sigmoid); the clipped
        // step is not guaranteed to improve the dual there, so skip the pair.
        if eta <= 0.0 {
            return false;
        }
        let aj_new = (aj + yj * (self.errors[i] - self.errors[j]) / eta).clamp(lo, hi);
        if (aj_new - aj).abs() < 1e-8 {
            return false;
        }
        let ai_new = ai + yi * yj * (aj - aj_new);

        let di = yi * (ai_new - ai);
        let dj = yj * (aj_new - aj);
        let b1 = self.bias - self.errors[i] - di * kii - dj * kij;
        let b2 = self.bias - self.errors[j] - di * kij - dj * kjj;
        let interior_i = ai_new > ALPHA_EPS && ai_new < self.c - ALPHA_EPS;
        let interior_j = aj_new > ALPHA_EPS && aj_new < self.c - ALPHA_EPS;
        let b_new = if interior_i {
            b1
        } else if interior_j {
            b2
        } else {
            0.5 * (b1 + b2)
        };
        let db = b_new - self.bias;

        let mut row_i = std::mem::take(&mut self.row_i);
        let mut row_j = std::mem::take(&mut self.row_j);
        self.problem.k_row(i, &mut row_i);
        self.problem.k_row(j, &mut row_j);
        for ((e, &ki), &kj) in self.errors.iter_mut().zip(&row_i).zip(&row_j) {
            *e += di * ki + dj * kj + db;
        }
        self.row_i = row_i;
        self.row_j = row_j;
        self.alpha[i] = ai_new;
        self.alpha[j] = aj_new;
        self.bias = b_new;
        true
    }

    /// Can this multiplier still move "up" (increase `y alpha`)?
    fn in_up_set(&self, t: usize) -> bool {
        let a = self.alpha[t];
        (self.problem.y[t] > 0.0 && a < self.c - ALPHA_EPS)
            || (self.problem.y[t] < 0.0 && a > ALPHA_EPS)
    }

    /// Can this multiplier still move "down"?
    fn in_low_set(&self, t: usize) -> bool {
        let a = self.alpha[t];
        (self.problem.y[t] > 0.0 && a > ALPHA_EPS)
            || (self.problem.y[t] < 0.0 && a < self.c - ALPHA_EPS)
    }

    fn dual_objective(&self) -> f64 {
        let mut obj: f64 = self.alpha.iter().sum();
        let active: Vec<usize> = (0..self.problem.n)
            .filter(|&i| self.alpha[i] > 0.0)
            .collect();
        for &i in &active {
            let ci = self.alpha[i] * self.problem.y[i];
            for &j in &active {
                obj -= 0.5 * ci * self.alpha[j] * self.problem.y[j] * self.problem.k(i, j);
            }
        }
        obj
    }
}

/// Train a binary soft-margin SVM with labels in {-1, +1}.
///
/// Returns the best iterate with `converged: false` instead of failing when
/// the iteration budget runs out with violations left.
pub fn svm_train_binary(
    samples: &[&[f64]],
    labels: &[f64],
    kernel: &KernelParams,
    c: f64,
    opts: &SmoOptions,
) -> Result<BinarySvm> {
    let n = samples.len();
    if n == 0 {
        return Err(Error::EmptyInput("svm training set"));
    }
    if labels.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: labels.len(),
        });
    }
    kernel.validate()?;
    if c <= 0.0 {
        return Err(Error::InvalidConfig(format!("C must be > 0, got {c}")));
    }
    let dim = samples[0].len();
    for s in samples {
        if s.len() != dim {
            return Err(Error::FeatureDimMismatch {
                expected: dim,
                actual: s.len(),
            });
        }
    }
    let mut has_pos = false;
    let mut has_neg = false;
    for &y in labels {
        match y {
            1.0 => has_pos = true,
            -1.0 => has_neg = true,
            other => {
                return Err(Error::InvalidConfig(format!(
                    "binary SVM labels must be -1 or +1, got {other}"
                )))
            }
        }
    }
    if !(has_pos && has_neg) {
        return Err(Error::SingleClass);
    }

    let problem = Problem::new(samples.to_vec(), labels, *kernel);
    let mut state = SmoState {
        problem,
        alpha: vec![0.0; n],
        errors: labels.iter().map(|&y| -y).collect(),
        bias: 0.0,
        c,
        row_i: Vec::with_capacity(n),
        row_j: Vec::with_capacity(n),
    };

    let budget = (n * opts.max_iter_per_sample).max(10_000);
    let mut quiet = 0usize;
    let mut objective_trace = Vec::new();
    for _ in 0..budget {
        // maximal violating pair over the error cache
        let mut up: Option<usize> = None;
        let mut low: Option<usize> = None;
        for t in 0..n {
            if state.in_up_set(t) && up.is_none_or(|u| state.errors[t] < state.errors[u]) {
                up = Some(t);
            }
            if state.in_low_set(t) && low.is_none_or(|l| state.errors[t] > state.errors[l]) {
                low = Some(t);
            }
        }
        let (Some(i), Some(j)) = (up, low) else { break };
        if state.errors[j] - state.errors[i] <= 2.0 * opts.tol {
            break; // KKT holds within tol once the bias is centered below
        }

        let mut moved = state.try_update(i, j);
        if !moved {
            // blocked pair (tiny box or non-positive curvature): walk the
            // next-most-violating partners in deterministic order
            let mut by_error: Vec<usize> = (0..n).collect();
            by_error.sort_unstable_by(|&a, &b| state.errors[a].total_cmp(&state.errors[b]));
            for &t in by_error.iter().rev() {
                if t != j && state.in_low_set(t) && state.try_update(i, t) {
                    moved = true;
                    break;
                }
            }
            if !moved {
                for &t in &by_error {
                    if t != i && state.in_up_set(t) && state.try_update(t, j) {
                        moved = true;
                        break;
                    }
                }
            }
        }
        if moved {
            quiet = 0;
        } else {
            quiet += 1;
            if quiet >= opts.max_passes {
                break;
            }
        }
        if opts.log_objective {
            objective_trace.push(state.dual_objective());
        }
    }

    // Center the bias between the extreme movable errors so both violation
    // directions share the slack; after a gap-converged exit every point
    // then satisfies its KKT condition within tol.
    let min_up = (0..n)
        .filter(|&t| state.in_up_set(t))
        .map(|t| state.errors[t])
        .fold(f64::INFINITY, f64::min);
    let max_low = (0..n)
        .filter(|&t| state.in_low_set(t))
        .map(|t| state.errors[t])
        .fold(f64::NEG_INFINITY, f64::max);
    if min_up.is_finite() && max_low.is_finite() {
        state.bias -= 0.5 * (min_up + max_low);
    }

    // Fresh decision values decide the convergence flag; the error cache can
    // drift over many incremental updates.
    let sv: Vec<usize> = (0..n).filter(|&i| state.alpha[i] > ALPHA_EPS).collect();
    let decisions: Vec<f64> = (0..n)
        .map(|k| {
            let mut f = state.bias;
            for &s in &sv {
                f += state.alpha[s] * labels[s] * state.problem.k(s, k);
            }
            f
        })
        .collect();
    let converged = (0..n).all(|i| {
        let r = (decisions[i] - labels[i]) * labels[i];
        !((r < -opts.tol && state.alpha[i] < c - ALPHA_EPS)
            || (r > opts.tol && state.alpha[i] > ALPHA_EPS))
    });

    Ok(BinarySvm {
        kernel: *kernel,
        c,
        support_vectors: sv.iter().map(|&i| samples[i].to_vec()).collect(),
        sv_alphas: sv.iter().map(|&i| state.alpha[i]).collect(),
        sv_labels: sv.iter().map(|&i| labels[i]).collect(),
        sv_indices: sv,
        bias: state.bias,
        converged,
        objective_trace,
    })
}

/// One binary machine of a one-vs-one model, separating `class_a` (+1)
/// from `class_b` (-1), with `class_a < class_b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairMachine {
    pub class_a: u16,
    pub class_b: u16,
    pub svm: BinarySvm,
}

/// One-vs-one multiclass SVM.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    pub kernel: KernelParams,
    pub c: f64,
    /// Distinct classes present in training, ascending.
    pub classes: Vec<u16>,
    pub machines: Vec<PairMachine>,
    pub dim: usize,
}

impl SvmModel {
    /// Pairwise-vote prediction. Vote ties break toward the class with the
    /// largest summed winning decision magnitude, then the smallest id.
    pub fn predict(&self, x: &[f64]) -> u16 {
        let mut votes = vec![0usize; self.classes.len()];
        let mut magnitude = vec![0.0f64; self.classes.len()];
        for m in &self.machines {
            let f = m.svm.decision(x);
            let winner = if f >= 0.0 { m.class_a } else { m.class_b };
            let idx = self.classes.binary_search(&winner).expect("known class");
            votes[idx] += 1;
            magnitude[idx] += f.abs();
        }
        let mut best = 0usize;
        for i in 1..self.classes.len() {
            if votes[i] > votes[best]
                || (votes[i] == votes[best] && magnitude[i] > magnitude[best])
            {
                best = i;
            }
        }
        self.classes[best]
    }

    /// True when every pair machine reached KKT tolerance.
    pub fn all_converged(&self) -> bool {
        self.machines.iter().all(|m| m.svm.converged)
    }
}

/// Train one binary machine per unordered class pair (one-vs-one).
pub fn svm_train_multiclass(
    set: &LabeledSampleSet,
    kernel: &KernelParams,
    c: f64,
    opts: &SmoOptions,
) -> Result<SvmModel> {
    let mut classes: Vec<u16> = set.labels().to_vec();
    classes.sort_unstable();
    classes.dedup();
    if classes.len() < 2 {
        return Err(Error::SingleClass);
    }

    let mut pairs = Vec::new();
    for (ai, &a) in classes.iter().enumerate() {
        for &b in &classes[ai + 1..] {
            pairs.push((a, b));
        }
    }

    let machines: Vec<PairMachine> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut rows: Vec<&[f64]> = Vec::new();
            let mut y = Vec::new();
            for i in 0..set.len() {
                let l = set.label(i);
                if l == a {
                    rows.push(set.feature(i));
                    y.push(1.0);
                } else if l == b {
                    rows.push(set.feature(i));
                    y.push(-1.0);
                }
            }
            let svm = svm_train_binary(&rows, &y, kernel, c, opts)?;
            Ok(PairMachine {
                class_a: a,
                class_b: b,
                svm,
            })
        })
        .collect::<Result<_>>()?;

    Ok(SvmModel {
        kernel: *kernel,
        c,
        classes,
        machines,
        dim: set.dim(),
    })
}
