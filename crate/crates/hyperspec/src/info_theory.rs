//! Histogram-based entropy and mutual information over discrete symbols.
//!
//! Probabilities are plug-in (maximum likelihood) estimates from counts; no
//! bias correction is applied. All logarithms are base 2, so every quantity
//! is in bits. The `0 * log 0 := 0` convention is used throughout.
//!
//! Mutual information is available through two algebraic routes that must
//! agree to 1e-12:
//!
//! * [`mutual_information`] — entropy route, `H(X) + H(Y) - H(X, Y)`;
//! * [`mutual_information_direct`] — direct double sum,
//!   `sum p(x,y) * log2( p(x,y) / (p(x) p(y)) )`.

use crate::error::{Error, Result};

/// Empirical distribution of one discrete variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram1D {
    counts: Vec<u64>,
    total: u64,
}

impl Histogram1D {
    /// Build from raw per-symbol counts.
    pub fn from_counts(counts: Vec<u64>) -> Self {
        let total = counts.iter().sum();
        Self { counts, total }
    }

    /// Count occurrences of each symbol in `symbols`.
    ///
    /// The histogram is sized to the largest symbol seen.
    pub fn from_symbols(symbols: &[u32]) -> Self {
        let size = symbols.iter().map(|&s| s as usize + 1).max().unwrap_or(0);
        let mut counts = vec![0u64; size];
        for &s in symbols {
            counts[s as usize] += 1;
        }
        Self::from_counts(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

/// Empirical joint distribution of two discrete variables.
///
/// `counts` is indexed `(x symbol, y symbol)`; marginal sums over rows and
/// columns reproduce the two [`Histogram1D`]s built from the same data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointHistogram {
    counts: Vec<u64>,
    nx: usize,
    ny: usize,
    total: u64,
}

impl JointHistogram {
    /// Count paired occurrences over two equal-length symbol sequences.
    pub fn from_pairs(x: &[u32], y: &[u32]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: y.len(),
            });
        }
        if x.is_empty() {
            return Err(Error::EmptyInput("joint histogram"));
        }
        let nx = x.iter().map(|&s| s as usize + 1).max().unwrap_or(0);
        let ny = y.iter().map(|&s| s as usize + 1).max().unwrap_or(0);
        let mut counts = vec![0u64; nx * ny];
        for (&xs, &ys) in x.iter().zip(y) {
            counts[xs as usize * ny + ys as usize] += 1;
        }
        Ok(Self {
            counts,
            nx,
            ny,
            total: x.len() as u64,
        })
    }

    /// Build from a dense count grid (rows = x symbols, columns = y symbols).
    pub fn from_grid(grid: &[Vec<u64>]) -> Self {
        let nx = grid.len();
        let ny = grid.first().map_or(0, Vec::len);
        let mut counts = Vec::with_capacity(nx * ny);
        for row in grid {
            counts.extend_from_slice(row);
        }
        let total = counts.iter().sum();
        Self {
            counts,
            nx,
            ny,
            total,
        }
    }

    pub fn count(&self, x: usize, y: usize) -> u64 {
        self.counts[x * self.ny + y]
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Marginal distribution of the x variable (row sums).
    pub fn marginal_x(&self) -> Histogram1D {
        let counts = self
            .counts
            .chunks_exact(self.ny)
            .map(|row| row.iter().sum())
            .collect();
        Histogram1D::from_counts(counts)
    }

    /// Marginal distribution of the y variable (column sums).
    pub fn marginal_y(&self) -> Histogram1D {
        let mut counts = vec![0u64; self.ny];
        for row in self.counts.chunks_exact(self.ny) {
            for (c, &v) in counts.iter_mut().zip(row) {
                *c += v;
            }
        }
        Histogram1D::from_counts(counts)
    }
}

/// Shannon entropy `H(X) = -sum p(x) log2 p(x)` in bits.
pub fn entropy(h: &Histogram1D) -> Result<f64> {
    if h.total == 0 {
        return Err(Error::EmptyInput("entropy of an empty histogram"));
    }
    let total = h.total as f64;
    let mut sum = 0.0;
    for &c in &h.counts {
        if c > 0 {
            let p = c as f64 / total;
            sum -= p * p.log2();
        }
    }
    Ok(sum)
}

/// Joint entropy `H(X, Y)` in bits.
pub fn joint_entropy(j: &JointHistogram) -> Result<f64> {
    if j.total == 0 {
        return Err(Error::EmptyInput("entropy of an empty joint histogram"));
    }
    let total = j.total as f64;
    let mut sum = 0.0;
    for &c in &j.counts {
        if c > 0 {
            let p = c as f64 / total;
            sum -= p * p.log2();
        }
    }
    Ok(sum)
}

/// Clamp the tiny negative residue the entropy route can leave behind.
fn clamp_residue(mi: f64) -> f64 {
    if mi < 0.0 && mi > -1e-12 {
        0.0
    } else {
        mi
    }
}

/// Mutual information between two symbol sequences via the entropy route:
/// `I(X, Y) = H(X) + H(Y) - H(X, Y)`.
///
/// Tiny negative floating residue (> -1e-12) is clamped to 0.
pub fn mutual_information(x: &[u32], y: &[u32]) -> Result<f64> {
    let joint = JointHistogram::from_pairs(x, y)?;
    mutual_information_of(&joint)
}

/// Entropy-route MI of a prebuilt joint histogram.
pub fn mutual_information_of(joint: &JointHistogram) -> Result<f64> {
    let hx = entropy(&joint.marginal_x())?;
    let hy = entropy(&joint.marginal_y())?;
    let hxy = joint_entropy(joint)?;
    Ok(clamp_residue(hx + hy - hxy))
}

/// Mutual information via the direct double sum:
/// `I(X, Y) = sum_{x,y} p(x,y) log2( p(x,y) / (p(x) p(y)) )`.
///
/// Kept as an independent route; it must agree with
/// [`mutual_information`] to 1e-12 on any input.
pub fn mutual_information_direct(x: &[u32], y: &[u32]) -> Result<f64> {
    let joint = JointHistogram::from_pairs(x, y)?;
    let px = joint.marginal_x();
    let py = joint.marginal_y();
    let total = joint.total as f64;
    let mut sum = 0.0;
    for xi in 0..joint.nx {
        for yi in 0..joint.ny {
            let c = joint.count(xi, yi);
            if c > 0 {
                let pxy = c as f64 / total;
                let pxpy = (px.counts[xi] as f64 / total) * (py.counts[yi] as f64 / total);
                sum += pxy * (pxy / pxpy).log2();
            }
        }
    }
    Ok(clamp_residue(sum))
}
