//! Linear discriminant analysis with a shared (pooled) within-class
//! covariance, in full and diagonal variants.
//!
//! The Gaussian discriminant `x . a_c - 0.5 mu_c . a_c + ln prior_c` with
//! `a_c = Sigma^-1 mu_c` is evaluated through a Cholesky factorization of the
//! ridged pooled covariance; the matrix is never inverted explicitly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hsi_data::LabeledSampleSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LdaMode {
    Linear,
    DiagLinear,
}

impl std::fmt::Display for LdaMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LdaMode::Linear => write!(f, "linear"),
            LdaMode::DiagLinear => write!(f, "diaglinear"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdaModel {
    pub mode: LdaMode,
    pub ridge: f64,
    /// Classes present in training, ascending.
    pub classes: Vec<u16>,
    pub means: Vec<Vec<f64>>,
    pub log_priors: Vec<f64>,
    /// Per-class solved directions `a_c = Sigma^-1 mu_c`.
    pub coefs: Vec<Vec<f64>>,
    /// `-0.5 mu_c . a_c + ln prior_c`.
    pub intercepts: Vec<f64>,
    pub dim: usize,
}

/// Lower-triangular Cholesky factor of a symmetric matrix stored row-major.
/// Fails with the offending dimension when a pivot is not positive.
fn cholesky(a: &[f64], d: usize) -> Result<Vec<f64>> {
    let mut l = vec![0.0f64; d * d];
    for j in 0..d {
        let mut diag = a[j * d + j];
        for k in 0..j {
            diag -= l[j * d + k] * l[j * d + k];
        }
        if diag <= 0.0 || !diag.is_finite() {
            return Err(Error::SingularCovariance { dim: j });
        }
        let ljj = diag.sqrt();
        l[j * d + j] = ljj;
        for i in j + 1..d {
            let mut s = a[i * d + j];
            for k in 0..j {
                s -= l[i * d + k] * l[j * d + k];
            }
            l[i * d + j] = s / ljj;
        }
    }
    Ok(l)
}

/// Solve `L L^T x = b` by forward then backward substitution.
fn cholesky_solve(l: &[f64], d: usize, b: &[f64]) -> Vec<f64> {
    let mut z = vec![0.0f64; d];
    for i in 0..d {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i * d + k] * z[k];
        }
        z[i] = s / l[i * d + i];
    }
    let mut x = vec![0.0f64; d];
    for i in (0..d).rev() {
        let mut s = z[i];
        for k in i + 1..d {
            s -= l[k * d + i] * x[k];
        }
        x[i] = s / l[i * d + i];
    }
    x
}

/// Fit an LDA model with ridge-stabilized pooled covariance.
///
/// `ridge` scales the mean of the covariance diagonal; the default 1e-6
/// keeps highly correlated bands invertible without noticeably moving the
/// boundary.
pub fn lda_fit(set: &LabeledSampleSet, mode: LdaMode, ridge: f64) -> Result<LdaModel> {
    if set.is_empty() {
        return Err(Error::EmptyInput("lda training set"));
    }
    if ridge < 0.0 {
        return Err(Error::InvalidConfig(format!(
            "ridge must be >= 0, got {ridge}"
        )));
    }
    let d = set.dim();
    let n = set.len();

    let counts = set.class_counts();
    let classes: Vec<u16> = (0..set.num_classes as u16)
        .filter(|&c| counts[c as usize] > 0)
        .map(|c| c + 1)
        .collect();
    for &c in &classes {
        let count = counts[c as usize - 1];
        if count < 2 {
            return Err(Error::ClassTooSmall {
                class: c,
                count,
                min: 2,
            });
        }
    }

    // class means
    let mut means = vec![vec![0.0f64; d]; classes.len()];
    for i in 0..n {
        let ci = classes.binary_search(&set.label(i)).expect("present class");
        for (m, &v) in means[ci].iter_mut().zip(set.feature(i)) {
            *m += v;
        }
    }
    for (ci, &c) in classes.iter().enumerate() {
        let nc = counts[c as usize - 1] as f64;
        for m in &mut means[ci] {
            *m /= nc;
        }
    }

    // pooled within-class covariance, normalized by n - C
    let denom = (n - classes.len()) as f64;
    if denom <= 0.0 {
        return Err(Error::InvalidConfig(
            "pooled covariance needs more samples than classes".into(),
        ));
    }
    let mut cov = vec![0.0f64; d * d];
    let mut centered = vec![0.0f64; d];
    for i in 0..n {
        let ci = classes.binary_search(&set.label(i)).expect("present class");
        for ((cv, &v), &m) in centered.iter_mut().zip(set.feature(i)).zip(&means[ci]) {
            *cv = v - m;
        }
        match mode {
            LdaMode::Linear => {
                for r in 0..d {
                    let cr = centered[r];
                    for col in r..d {
                        cov[r * d + col] += cr * centered[col];
                    }
                }
            }
            LdaMode::DiagLinear => {
                for (r, &cv) in centered.iter().enumerate() {
                    cov[r * d + r] += cv * cv;
                }
            }
        }
    }
    for r in 0..d {
        for col in r..d {
            cov[r * d + col] /= denom;
            cov[col * d + r] = cov[r * d + col];
        }
    }
    if mode == LdaMode::DiagLinear {
        // keep only the diagonal
        for r in 0..d {
            for col in 0..d {
                if r != col {
                    cov[r * d + col] = 0.0;
                }
            }
        }
    }

    let mean_diag = (0..d).map(|r| cov[r * d + r]).sum::<f64>() / d as f64;
    let boost = ridge * mean_diag;
    for r in 0..d {
        cov[r * d + r] += boost;
    }

    // solve a_c = Sigma^-1 mu_c through the factorization
    let coefs: Vec<Vec<f64>> = match mode {
        LdaMode::Linear => {
            let l = cholesky(&cov, d)?;
            means.iter().map(|mu| cholesky_solve(&l, d, mu)).collect()
        }
        LdaMode::DiagLinear => {
            for r in 0..d {
                let v = cov[r * d + r];
                if v <= 0.0 || !v.is_finite() {
                    return Err(Error::SingularCovariance { dim: r });
                }
            }
            means
                .iter()
                .map(|mu| {
                    mu.iter()
                        .enumerate()
                        .map(|(r, &m)| m / cov[r * d + r])
                        .collect()
                })
                .collect()
        }
    };

    let mut log_priors = Vec::with_capacity(classes.len());
    let mut intercepts = Vec::with_capacity(classes.len());
    for (ci, &c) in classes.iter().enumerate() {
        let prior = counts[c as usize - 1] as f64 / n as f64;
        let mdot: f64 = means[ci].iter().zip(&coefs[ci]).map(|(m, a)| m * a).sum();
        log_priors.push(prior.ln());
        intercepts.push(-0.5 * mdot + prior.ln());
    }

    Ok(LdaModel {
        mode,
        ridge,
        classes,
        means,
        log_priors,
        coefs,
        intercepts,
        dim: d,
    })
}

impl LdaModel {
    /// Discriminant scores per class, aligned with `self.classes`.
    pub fn scores(&self, x: &[f64]) -> Vec<f64> {
        self.coefs
            .iter()
            .zip(&self.intercepts)
            .map(|(a, &b)| x.iter().zip(a).map(|(&xi, &ai)| xi * ai).sum::<f64>() + b)
            .collect()
    }

    /// Argmax class; ties break toward the smaller class id.
    pub fn predict(&self, x: &[f64]) -> u16 {
        let scores = self.scores(x);
        let mut best = 0usize;
        for i in 1..scores.len() {
            if scores[i] > scores[best] {
                best = i;
            }
        }
        self.classes[best]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set_1d(values: &[(f64, u16)]) -> LabeledSampleSet {
        let features: Vec<f64> = values.iter().map(|&(v, _)| v).collect();
        let labels: Vec<u16> = values.iter().map(|&(_, l)| l).collect();
        let num_classes = labels.iter().copied().max().unwrap() as usize;
        LabeledSampleSet::from_parts(features, labels, vec![0], num_classes).unwrap()
    }

    #[test]
    fn one_dimensional_boundary_at_midpoint() {
        // A = {0, 1}, B = {4, 5}: equal priors and variances put the
        // boundary exactly at (0.5 + 4.5) / 2 = 2.5
        let set = set_1d(&[(0.0, 1), (1.0, 1), (4.0, 2), (5.0, 2)]);
        let model = lda_fit(&set, LdaMode::Linear, 1e-6).unwrap();
        assert_eq!(model.predict(&[2.0]), 1);
        assert_eq!(model.predict(&[3.0]), 2);

        // score difference is linear in x; its root is the boundary
        let g = |x: f64| {
            let s = model.scores(&[x]);
            s[0] - s[1]
        };
        let (x0, x1) = (0.0, 5.0);
        let boundary = x0 - g(x0) * (x1 - x0) / (g(x1) - g(x0));
        assert!((boundary - 2.5).abs() < 1e-9, "boundary = {boundary}");
    }

    fn diag_cov_set() -> LabeledSampleSet {
        // two features varying independently: pooled covariance is diagonal
        let pts = [
            (0.0, 0.0, 1u16),
            (2.0, 0.0, 1),
            (0.0, 2.0, 1),
            (2.0, 2.0, 1),
            (10.0, 10.0, 2),
            (12.0, 10.0, 2),
            (10.0, 12.0, 2),
            (12.0, 12.0, 2),
        ];
        let mut features = Vec::new();
        let mut labels = Vec::new();
        for &(x, y, l) in &pts {
            features.push(x);
            features.push(y);
            labels.push(l);
        }
        LabeledSampleSet::from_parts(features, labels, vec![0, 1], 2).unwrap()
    }

    #[test]
    fn diaglinear_equals_linear_on_diagonal_covariance() {
        let set = diag_cov_set();
        let lin = lda_fit(&set, LdaMode::Linear, 0.0).unwrap();
        let diag = lda_fit(&set, LdaMode::DiagLinear, 0.0).unwrap();
        for x in [[1.0, 1.0], [6.0, 6.0], [11.0, 11.0], [3.0, 9.0]] {
            assert_eq!(lin.predict(&x), diag.predict(&x));
        }
    }

    #[test]
    fn class_means_classify_to_their_class() {
        let set = diag_cov_set();
        let model = lda_fit(&set, LdaMode::Linear, 1e-6).unwrap();
        for (ci, &c) in model.classes.clone().iter().enumerate() {
            let mu = model.means[ci].clone();
            assert_eq!(model.predict(&mu), c);
        }
    }

    #[test]
    fn score_differences_are_shift_invariant() {
        // adding a constant vector to all features adds the same offset to
        // every class score, so pairwise score differences (and hence the
        // argmax) carry over up to rounding
        let set = diag_cov_set();
        let model = lda_fit(&set, LdaMode::Linear, 1e-6).unwrap();
        let shift = [13.0, -4.0];
        let mut features = Vec::new();
        for i in 0..set.len() {
            let f = set.feature(i);
            features.push(f[0] + shift[0]);
            features.push(f[1] + shift[1]);
        }
        let shifted =
            LabeledSampleSet::from_parts(features, set.labels().to_vec(), vec![0, 1], 2).unwrap();
        let model2 = lda_fit(&shifted, LdaMode::Linear, 1e-6).unwrap();
        for x in [[1.0, 1.0], [11.0, 11.0], [4.0, 8.0], [9.0, 2.0], [6.0, 6.0]] {
            let moved = [x[0] + shift[0], x[1] + shift[1]];
            let s1 = model.scores(&x);
            let s2 = model2.scores(&moved);
            let g1 = s1[0] - s1[1];
            let g2 = s2[0] - s2[1];
            assert!(
                (g1 - g2).abs() <= 1e-6 * (1.0 + g1.abs()),
                "score gap moved under shift: {g1} vs {g2}"
            );
            if g1.abs() > 1e-6 {
                assert_eq!(model.predict(&x), model2.predict(&moved));
            }
        }
    }

    #[test]
    fn singular_covariance_names_dimension() {
        // feature 1 is constant: zero variance everywhere, ridge 0 keeps it 0
        let set = LabeledSampleSet::from_parts(
            vec![0.0, 5.0, 1.0, 5.0, 10.0, 5.0, 11.0, 5.0],
            vec![1, 1, 2, 2],
            vec![0, 1],
            2,
        )
        .unwrap();
        match lda_fit(&set, LdaMode::DiagLinear, 0.0) {
            Err(Error::SingularCovariance { dim }) => assert_eq!(dim, 1),
            other => panic!("expected singular covariance, got {other:?}"),
        }
        // ridge rescues it because feature 0 contributes to the mean diagonal
        assert!(lda_fit(&set, LdaMode::DiagLinear, 1e-6).is_ok());
    }

    #[test]
    fn rejects_tiny_classes() {
        let set = set_1d(&[(0.0, 1), (1.0, 1), (9.0, 2)]);
        assert!(matches!(
            lda_fit(&set, LdaMode::Linear, 1e-6),
            Err(Error::ClassTooSmall { class: 2, .. })
        ));
    }
}
