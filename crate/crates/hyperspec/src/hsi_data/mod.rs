//! Hyperspectral cubes, ground-truth rasters, quantization, labeled-sample
//! extraction and seeded stratified splits.
//!
//! A cube is stored band-sequential: band 0's full `H x W` row-major block,
//! then band 1, and so on. Ground-truth label 0 marks unlabeled pixels and is
//! never a training or test class.

mod io;

pub use io::{load_cube, load_ground_truth, save_cube, save_ground_truth};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::rng_stream;

/// An `H x W x B` radiance cube of real-valued samples.
#[derive(Debug, Clone, PartialEq)]
pub struct HsiCube {
    pub height: usize,
    pub width: usize,
    pub bands: usize,
    /// Band-sequential samples: band-major, then row-major within a band.
    pub data: Vec<f32>,
}

impl HsiCube {
    /// Construct a cube, enforcing shape and finiteness invariants.
    pub fn new(height: usize, width: usize, bands: usize, data: Vec<f32>) -> Result<Self> {
        if height == 0 || width == 0 || bands == 0 {
            return Err(Error::InvalidConfig(format!(
                "cube dimensions must be >= 1, got {height}x{width}x{bands}"
            )));
        }
        if data.len() != height * width * bands {
            return Err(Error::InvalidConfig(format!(
                "cube data length {} does not match {height}x{width}x{bands}",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample {
                path: "<memory>".into(),
                offset: (pos * 4) as u64,
            });
        }
        Ok(Self {
            height,
            width,
            bands,
            data,
        })
    }

    /// Number of pixels per band.
    pub fn pixels(&self) -> usize {
        self.height * self.width
    }

    /// The `H x W` row-major slice of one band.
    pub fn band(&self, band: usize) -> Result<&[f32]> {
        if band >= self.bands {
            return Err(Error::BandOutOfRange {
                band,
                bands: self.bands,
            });
        }
        let p = self.pixels();
        Ok(&self.data[band * p..(band + 1) * p])
    }

    pub fn value(&self, band: usize, row: usize, col: usize) -> f32 {
        self.data[band * self.pixels() + row * self.width + col]
    }
}

/// Per-pixel class labels; 0 means unlabeled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruthMap {
    pub height: usize,
    pub width: usize,
    /// Row-major class ids; 0 is reserved for unlabeled pixels.
    pub labels: Vec<u16>,
    /// Highest label present (labels range over `0..=num_classes`).
    pub num_classes: usize,
}

impl GroundTruthMap {
    pub fn new(height: usize, width: usize, labels: Vec<u16>) -> Result<Self> {
        if labels.len() != height * width {
            return Err(Error::InvalidConfig(format!(
                "ground truth length {} does not match {height}x{width}",
                labels.len()
            )));
        }
        let num_classes = labels.iter().copied().max().unwrap_or(0) as usize;
        Ok(Self {
            height,
            width,
            labels,
            num_classes,
        })
    }

    /// Classes in `1..=num_classes` with no pixels at all.
    ///
    /// Gaps are legal but worth a warning: they survive as empty classes in
    /// every downstream report.
    pub fn empty_classes(&self) -> Vec<u16> {
        let mut seen = vec![false; self.num_classes + 1];
        for &l in &self.labels {
            seen[l as usize] = true;
        }
        (1..=self.num_classes as u16)
            .filter(|&c| !seen[c as usize])
            .collect()
    }

    /// Number of pixels with a nonzero label.
    pub fn labeled_pixels(&self) -> usize {
        self.labels.iter().filter(|&&l| l != 0).count()
    }
}

/// One band discretized to `levels` integer codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantizedBand {
    pub height: usize,
    pub width: usize,
    pub levels: usize,
    pub codes: Vec<u32>,
}

/// Min-max quantization of arbitrary real values to `levels` codes.
///
/// `code = floor((v - min) / (max - min) * levels)` clamped to
/// `[0, levels - 1]`; a constant sequence maps everything to code 0.
pub fn quantize_values(values: &[f64], levels: usize) -> Result<Vec<u32>> {
    if levels < 2 {
        return Err(Error::InvalidConfig(format!(
            "quantization levels must be >= 2, got {levels}"
        )));
    }
    if values.is_empty() {
        return Err(Error::EmptyInput("quantize_values"));
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = max - min;
    if range == 0.0 {
        return Ok(vec![0; values.len()]);
    }
    let levels_f = levels as f64;
    Ok(values
        .iter()
        .map(|&v| {
            let code = ((v - min) / range * levels_f).floor();
            (code.max(0.0) as u32).min(levels as u32 - 1)
        })
        .collect())
}

/// Quantize one cube band by its own extremes.
pub fn quantize_band(cube: &HsiCube, band: usize, levels: usize) -> Result<QuantizedBand> {
    let values: Vec<f64> = cube.band(band)?.iter().map(|&v| v as f64).collect();
    let codes = quantize_values(&values, levels)?;
    Ok(QuantizedBand {
        height: cube.height,
        width: cube.width,
        levels,
        codes,
    })
}

/// Flattened (feature vector, label) pairs over a fixed band subset.
///
/// Features are stored as one row-major `n x d` block; `band_ids` records
/// which cube band each feature column came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledSampleSet {
    features: Vec<f64>,
    labels: Vec<u16>,
    pub band_ids: Vec<usize>,
    pub num_classes: usize,
}

impl LabeledSampleSet {
    pub fn from_parts(
        features: Vec<f64>,
        labels: Vec<u16>,
        band_ids: Vec<usize>,
        num_classes: usize,
    ) -> Result<Self> {
        let d = band_ids.len();
        if d == 0 {
            return Err(Error::EmptyBandIds);
        }
        if features.len() != labels.len() * d {
            return Err(Error::FeatureDimMismatch {
                expected: labels.len() * d,
                actual: features.len(),
            });
        }
        for &l in &labels {
            if l == 0 || l as usize > num_classes {
                return Err(Error::LabelOutOfRange {
                    label: l,
                    num_classes,
                });
            }
        }
        Ok(Self {
            features,
            labels,
            band_ids,
            num_classes,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Feature dimension (= number of selected bands).
    pub fn dim(&self) -> usize {
        self.band_ids.len()
    }

    pub fn feature(&self, i: usize) -> &[f64] {
        let d = self.dim();
        &self.features[i * d..(i + 1) * d]
    }

    pub fn label(&self, i: usize) -> u16 {
        self.labels[i]
    }

    pub fn labels(&self) -> &[u16] {
        &self.labels
    }

    /// Per-class sample counts, indexed by `class - 1`.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.num_classes];
        for &l in &self.labels {
            counts[l as usize - 1] += 1;
        }
        counts
    }

    /// New set containing the given sample indices, in order.
    pub fn subset(&self, indices: &[usize]) -> Self {
        let d = self.dim();
        let mut features = Vec::with_capacity(indices.len() * d);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            features.extend_from_slice(self.feature(i));
            labels.push(self.labels[i]);
        }
        Self {
            features,
            labels,
            band_ids: self.band_ids.clone(),
            num_classes: self.num_classes,
        }
    }

    /// Keep only the first `d` feature columns (a prefix of `band_ids`).
    ///
    /// Band sets produced by the greedy selection are nested, so a sweep over
    /// band counts reuses one extraction and truncates.
    pub fn truncate_features(&self, d: usize) -> Result<Self> {
        if d == 0 || d > self.dim() {
            return Err(Error::InvalidConfig(format!(
                "cannot truncate {}-dim samples to {d} features",
                self.dim()
            )));
        }
        let full = self.dim();
        let mut features = Vec::with_capacity(self.len() * d);
        for i in 0..self.len() {
            features.extend_from_slice(&self.features[i * full..i * full + d]);
        }
        Ok(Self {
            features,
            labels: self.labels.clone(),
            band_ids: self.band_ids[..d].to_vec(),
            num_classes: self.num_classes,
        })
    }
}

/// Extract one sample per labeled pixel, row-major pixel order.
///
/// Feature vectors hold the raw (unquantized) cube values at `band_ids`;
/// quantization exists only for mutual-information estimation.
pub fn extract_labeled_samples(
    cube: &HsiCube,
    gt: &GroundTruthMap,
    band_ids: &[usize],
) -> Result<LabeledSampleSet> {
    if band_ids.is_empty() {
        return Err(Error::EmptyBandIds);
    }
    if cube.height != gt.height || cube.width != gt.width {
        return Err(Error::DimensionMismatch {
            expected_h: cube.height,
            expected_w: cube.width,
            actual_h: gt.height,
            actual_w: gt.width,
        });
    }
    let mut seen = vec![false; cube.bands];
    for &b in band_ids {
        if b >= cube.bands {
            return Err(Error::BandOutOfRange {
                band: b,
                bands: cube.bands,
            });
        }
        if seen[b] {
            return Err(Error::DuplicateBandId { band: b });
        }
        seen[b] = true;
    }

    let pixels = cube.pixels();
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for p in 0..pixels {
        let label = gt.labels[p];
        if label == 0 {
            continue;
        }
        for &b in band_ids {
            features.push(cube.data[b * pixels + p] as f64);
        }
        labels.push(label);
    }
    if labels.is_empty() {
        return Err(Error::NoLabeledPixels);
    }
    LabeledSampleSet::from_parts(features, labels, band_ids.to_vec(), gt.num_classes)
}

/// Stratified split parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    /// Fraction of each class assigned to training, strictly in (0, 1).
    pub train_fraction: f64,
    pub seed: u64,
}

impl SplitSpec {
    pub fn new(train_fraction: f64, seed: u64) -> Self {
        Self {
            train_fraction,
            seed,
        }
    }

    /// The 50/50 protocol with the given seed.
    pub fn half(seed: u64) -> Self {
        Self::new(0.5, seed)
    }
}

/// Seeded stratified split: class `c` with `n_c` samples sends
/// `ceil(n_c * fraction)` shuffled samples to train and the rest to test.
///
/// Same spec, same split — independent of thread count; the shuffle stream
/// for each class is derived from `(seed, class)`.
pub fn stratified_split(
    set: &LabeledSampleSet,
    spec: &SplitSpec,
) -> Result<(LabeledSampleSet, LabeledSampleSet)> {
    if !(spec.train_fraction > 0.0 && spec.train_fraction < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "train fraction must be strictly between 0 and 1, got {}",
            spec.train_fraction
        )));
    }
    let mut per_class: Vec<Vec<usize>> = vec![Vec::new(); set.num_classes];
    for i in 0..set.len() {
        per_class[set.label(i) as usize - 1].push(i);
    }
    for (ci, members) in per_class.iter().enumerate() {
        if !members.is_empty() && members.len() < 2 {
            return Err(Error::ClassTooSmall {
                class: ci as u16 + 1,
                count: members.len(),
                min: 2,
            });
        }
    }

    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    for (ci, members) in per_class.iter().enumerate() {
        if members.is_empty() {
            continue;
        }
        let mut shuffled = members.clone();
        let mut rng = rng_stream(spec.seed, &[ci as u64 + 1]);
        shuffled.shuffle(&mut rng);
        let take = (members.len() as f64 * spec.train_fraction).ceil() as usize;
        let take = take.min(members.len());
        train_idx.extend_from_slice(&shuffled[..take]);
        test_idx.extend_from_slice(&shuffled[take..]);
    }
    Ok((set.subset(&train_idx), set.subset(&test_idx)))
}

/// Per-feature affine transform fitted on training data only.
///
/// Zero-variance features keep scale 1 so constant bands pass through
/// unchanged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl Standardizer {
    /// Fit per-feature mean and standard deviation on `train`.
    pub fn fit(train: &LabeledSampleSet) -> Self {
        let d = train.dim();
        let n = train.len() as f64;
        let mut means = vec![0.0; d];
        for i in 0..train.len() {
            for (m, &v) in means.iter_mut().zip(train.feature(i)) {
                *m += v;
            }
        }
        for m in &mut means {
            *m /= n;
        }
        let mut vars = vec![0.0; d];
        for i in 0..train.len() {
            for ((s, &v), &m) in vars.iter_mut().zip(train.feature(i)).zip(&means) {
                let dv = v - m;
                *s += dv * dv;
            }
        }
        let stds = vars
            .iter()
            .map(|&s| {
                let sd = (s / n).sqrt();
                if sd > 0.0 && sd.is_finite() {
                    sd
                } else {
                    1.0
                }
            })
            .collect();
        Self { means, stds }
    }

    pub fn transform_vec(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(self.means.iter().zip(&self.stds))
            .map(|(&v, (&m, &s))| (v - m) / s)
            .collect()
    }

    pub fn transform(&self, set: &LabeledSampleSet) -> LabeledSampleSet {
        let d = set.dim();
        let mut features = Vec::with_capacity(set.len() * d);
        for i in 0..set.len() {
            features.extend(self.transform_vec(set.feature(i)));
        }
        LabeledSampleSet {
            features,
            labels: set.labels.to_vec(),
            band_ids: set.band_ids.clone(),
            num_classes: set.num_classes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_cube() -> HsiCube {
        // 1x2 image, 2 bands
        HsiCube::new(1, 2, 2, vec![1.0, 2.0, 10.0, 20.0]).unwrap()
    }

    #[test]
    fn cube_rejects_bad_shapes_and_nan() {
        assert!(HsiCube::new(0, 2, 1, vec![]).is_err());
        assert!(HsiCube::new(2, 2, 1, vec![1.0; 3]).is_err());
        assert!(matches!(
            HsiCube::new(1, 2, 1, vec![1.0, f32::NAN]),
            Err(Error::NonFiniteSample { offset: 4, .. })
        ));
    }

    #[test]
    fn ground_truth_tracks_max_label_and_empty_classes() {
        let gt = GroundTruthMap::new(2, 2, vec![0, 1, 1, 3]).unwrap();
        assert_eq!(gt.num_classes, 3);
        assert_eq!(gt.empty_classes(), vec![2]);
        assert_eq!(gt.labeled_pixels(), 3);

        let none = GroundTruthMap::new(2, 2, vec![0, 0, 0, 0]).unwrap();
        assert_eq!(none.num_classes, 0);
    }

    #[test]
    fn quantize_two_levels() {
        let cube = HsiCube::new(1, 2, 1, vec![0.0, 1.0]).unwrap();
        let q = quantize_band(&cube, 0, 2).unwrap();
        assert_eq!(q.codes, vec![0, 1]);
    }

    #[test]
    fn quantize_constant_band_is_all_zero() {
        let cube = HsiCube::new(2, 2, 1, vec![5.0; 4]).unwrap();
        for levels in [2, 16, 256] {
            assert_eq!(
                quantize_band(&cube, 0, levels).unwrap().codes,
                vec![0, 0, 0, 0]
            );
        }
    }

    #[test]
    fn quantize_four_even_levels() {
        // direct formula: floor((v - 0) / 1 * 4) clamped
        let cube = HsiCube::new(1, 4, 1, vec![0.0, 0.25, 0.5, 1.0]).unwrap();
        let q = quantize_band(&cube, 0, 4).unwrap();
        assert_eq!(q.codes, vec![0, 1, 2, 3]);
    }

    #[test]
    fn quantize_band_out_of_range() {
        let cube = tiny_cube();
        assert!(matches!(
            quantize_band(&cube, 2, 4),
            Err(Error::BandOutOfRange { band: 2, bands: 2 })
        ));
    }

    #[test]
    fn quantize_is_monotone() {
        let values: Vec<f64> = vec![-3.0, -1.0, 0.0, 0.5, 2.0, 7.0, 7.5, 8.0];
        let codes = quantize_values(&values, 5).unwrap();
        for w in codes.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn extract_respects_labels_and_order() {
        let cube = tiny_cube();
        let gt = GroundTruthMap::new(1, 2, vec![1, 0]).unwrap();
        let set = extract_labeled_samples(&cube, &gt, &[0, 1]).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.label(0), 1);
        assert_eq!(set.feature(0), &[1.0, 10.0]);
    }

    #[test]
    fn extract_errors() {
        let cube = tiny_cube();
        let all_zero = GroundTruthMap::new(1, 2, vec![0, 0]).unwrap();
        assert!(matches!(
            extract_labeled_samples(&cube, &all_zero, &[0]),
            Err(Error::NoLabeledPixels)
        ));
        let gt = GroundTruthMap::new(1, 2, vec![1, 1]).unwrap();
        assert!(matches!(
            extract_labeled_samples(&cube, &gt, &[]),
            Err(Error::EmptyBandIds)
        ));
        assert!(matches!(
            extract_labeled_samples(&cube, &gt, &[0, 0]),
            Err(Error::DuplicateBandId { band: 0 })
        ));
        assert!(matches!(
            extract_labeled_samples(&cube, &gt, &[9]),
            Err(Error::BandOutOfRange { .. })
        ));
    }

    #[test]
    fn extract_count_matches_nonzero_pixels() {
        use rand::Rng;
        let mut rng = crate::util::rng_stream(31, &[4]);
        for _ in 0..20 {
            let (h, w, b) = (
                rng.random_range(2..8),
                rng.random_range(2..8),
                rng.random_range(1..4),
            );
            let data: Vec<f32> = (0..h * w * b).map(|_| rng.random_range(-5.0..5.0)).collect();
            let cube = HsiCube::new(h, w, b, data).unwrap();
            let labels: Vec<u16> = (0..h * w).map(|_| rng.random_range(0..4)).collect();
            let gt = GroundTruthMap::new(h, w, labels).unwrap();
            let bands: Vec<usize> = (0..b).collect();
            match extract_labeled_samples(&cube, &gt, &bands) {
                Ok(set) => assert_eq!(set.len(), gt.labeled_pixels()),
                Err(Error::NoLabeledPixels) => assert_eq!(gt.labeled_pixels(), 0),
                Err(e) => panic!("unexpected error: {e}"),
            }
        }
    }

    fn one_class_set(n: usize) -> LabeledSampleSet {
        LabeledSampleSet::from_parts((0..n).map(|i| i as f64).collect(), vec![1; n], vec![0], 1)
            .unwrap()
    }

    #[test]
    fn split_two_samples_goes_one_and_one() {
        let set = one_class_set(2);
        let (train, test) = stratified_split(&set, &SplitSpec::half(9)).unwrap();
        assert_eq!(train.len(), 1);
        assert_eq!(test.len(), 1);
    }

    #[test]
    fn split_is_deterministic() {
        let set = one_class_set(31);
        let spec = SplitSpec::half(1234);
        let (a_train, a_test) = stratified_split(&set, &spec).unwrap();
        let (b_train, b_test) = stratified_split(&set, &spec).unwrap();
        assert_eq!(a_train, b_train);
        assert_eq!(a_test, b_test);
    }

    #[test]
    fn split_100_is_disjoint_half_and_half() {
        let set = one_class_set(100);
        for seed in [0u64, 1, 77] {
            let (train, test) = stratified_split(&set, &SplitSpec::half(seed)).unwrap();
            assert_eq!(train.len(), 50);
            assert_eq!(test.len(), 50);
            // disjointness via the unique feature value of each sample
            let mut seen: Vec<f64> = (0..train.len())
                .map(|i| train.feature(i)[0])
                .chain((0..test.len()).map(|i| test.feature(i)[0]))
                .collect();
            seen.sort_by(f64::total_cmp);
            seen.dedup();
            assert_eq!(seen.len(), 100);
        }
    }

    #[test]
    fn split_rejects_singleton_class() {
        let set = LabeledSampleSet::from_parts(vec![0.0, 1.0, 2.0], vec![1, 1, 2], vec![0], 2)
            .unwrap();
        assert!(matches!(
            stratified_split(&set, &SplitSpec::half(0)),
            Err(Error::ClassTooSmall { class: 2, .. })
        ));
    }

    #[test]
    fn split_rejects_bad_fraction() {
        let set = one_class_set(4);
        for f in [0.0, 1.0, -0.5, 1.5] {
            assert!(stratified_split(&set, &SplitSpec::new(f, 0)).is_err());
        }
    }

    #[test]
    fn odd_class_ceils_toward_train() {
        let set = one_class_set(5);
        let (train, test) = stratified_split(&set, &SplitSpec::half(3)).unwrap();
        assert_eq!(train.len(), 3);
        assert_eq!(test.len(), 2);
    }

    #[test]
    fn truncate_features_keeps_prefix() {
        let set = LabeledSampleSet::from_parts(
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
            vec![1, 1],
            vec![7, 8, 9],
            1,
        )
        .unwrap();
        let cut = set.truncate_features(2).unwrap();
        assert_eq!(cut.band_ids, vec![7, 8]);
        assert_eq!(cut.feature(0), &[1.0, 2.0]);
        assert_eq!(cut.feature(1), &[4.0, 5.0]);
    }

    #[test]
    fn standardizer_zero_mean_unit_variance_on_train() {
        let set = LabeledSampleSet::from_parts(
            vec![0.0, 10.0, 2.0, 10.0, 4.0, 10.0, 6.0, 10.0],
            vec![1, 1, 1, 1],
            vec![0, 1],
            1,
        )
        .unwrap();
        let std = Standardizer::fit(&set);
        let out = std.transform(&set);
        let mean0: f64 = (0..4).map(|i| out.feature(i)[0]).sum::<f64>() / 4.0;
        let var0: f64 = (0..4).map(|i| out.feature(i)[0].powi(2)).sum::<f64>() / 4.0;
        assert!(mean0.abs() < 1e-12);
        assert!((var0 - 1.0).abs() < 1e-12);
        // constant feature passes through unscaled
        assert_eq!(out.feature(0)[1], 0.0);
        assert_eq!(std.stds[1], 1.0);
    }
}
