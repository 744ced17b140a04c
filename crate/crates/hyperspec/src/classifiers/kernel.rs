//! Kernel functions for the SVM.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    Linear,
    Rbf,
    Sigmoid,
}

impl std::fmt::Display for KernelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KernelKind::Linear => write!(f, "linear"),
            KernelKind::Rbf => write!(f, "rbf"),
            KernelKind::Sigmoid => write!(f, "sigmoid"),
        }
    }
}

/// Kernel selection plus its shape parameters.
///
/// `gamma` must be positive for the rbf and sigmoid kernels; `coef0` only
/// affects the sigmoid kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    pub kind: KernelKind,
    pub gamma: f64,
    pub coef0: f64,
}

impl KernelParams {
    pub fn linear() -> Self {
        Self {
            kind: KernelKind::Linear,
            gamma: 1.0,
            coef0: 0.0,
        }
    }

    pub fn rbf(gamma: f64) -> Self {
        Self {
            kind: KernelKind::Rbf,
            gamma,
            coef0: 0.0,
        }
    }

    pub fn sigmoid(gamma: f64, coef0: f64) -> Self {
        Self {
            kind: KernelKind::Sigmoid,
            gamma,
            coef0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            KernelKind::Linear => Ok(()),
            KernelKind::Rbf | KernelKind::Sigmoid => {
                if self.gamma > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidConfig(format!(
                        "gamma must be > 0 for the {} kernel, got {}",
                        self.kind, self.gamma
                    )))
                }
            }
        }
    }
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
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

/// Evaluate the kernel on two equal-length vectors.
///
/// linear: `u . v`; rbf: `exp(-gamma * ||u - v||^2)`;
/// sigmoid: `tanh(gamma * u . v + coef0)`.
pub fn kernel_eval(params: &KernelParams, u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::FeatureDimMismatch {
            expected: u.len(),
            actual: v.len(),
        });
    }
    Ok(kernel_eval_unchecked(params, u, v))
}

/// As [`kernel_eval`], without the dimension check (hot path).
pub(crate) fn kernel_eval_unchecked(params: &KernelParams, u: &[f64], v: &[f64]) -> f64 {
    match params.kind {
        KernelKind::Linear => dot(u, v),
        KernelKind::Rbf => (-params.gamma * sq_dist(u, v)).exp(),
        KernelKind::Sigmoid => (params.gamma * dot(u, v) + params.coef0).tanh(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rbf_at_zero_distance_is_one() {
        let u = [1.5, -2.0, 3.0];
        assert_eq!(kernel_eval(&KernelParams::rbf(0.7), &u, &u).unwrap(), 1.0);
    }

    #[test]
    fn linear_is_dot_product() {
        let k = kernel_eval(&KernelParams::linear(), &[1.0, 2.0], &[3.0, 4.0]).unwrap();
        assert_eq!(k, 11.0);
    }

    #[test]
    fn sigmoid_of_orthogonal_vectors_is_zero() {
        let k = kernel_eval(&KernelParams::sigmoid(1.0, 0.0), &[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(k, 0.0);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(kernel_eval(&KernelParams::linear(), &[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn gamma_must_be_positive() {
        assert!(KernelParams::rbf(0.0).validate().is_err());
        assert!(KernelParams::sigmoid(-1.0, 0.0).validate().is_err());
        assert!(KernelParams::linear().validate().is_ok());
    }
}
