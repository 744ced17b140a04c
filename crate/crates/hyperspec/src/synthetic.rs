//! Seeded synthetic scenes for demos and end-to-end tests.
//!
//! A planted scene stripes the image into `num_classes` horizontal class
//! regions (with a one-pixel unlabeled border) and emits two kinds of bands:
//! informative bands whose values grow with the class id under Gaussian
//! jitter, and distractor bands of label-independent low-cardinality noise.
//! Informative bands come first; roughly 40% of the bands are distractors.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::hsi_data::{GroundTruthMap, HsiCube};
use crate::util::rng_stream;

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random::<f64>().max(1e-12);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Build a `height x width x bands` cube with `num_classes` planted classes.
///
/// Identical arguments produce identical scenes. Panics if the image is too
/// small to hold a labeled interior (height or width < 3) or if
/// `num_classes` is 0.
pub fn planted_scene(
    height: usize,
    width: usize,
    bands: usize,
    num_classes: usize,
    seed: u64,
) -> (HsiCube, GroundTruthMap) {
    assert!(height >= 3 && width >= 3, "scene too small for a labeled interior");
    assert!(num_classes >= 1 && num_classes <= u16::MAX as usize);
    assert!(bands >= 1);

    // horizontal stripes over the interior rows; border stays unlabeled
    let interior_rows = height - 2;
    let mut labels = vec![0u16; height * width];
    for row in 1..height - 1 {
        let class = ((row - 1) * num_classes / interior_rows).min(num_classes - 1) as u16 + 1;
        for col in 1..width - 1 {
            labels[row * width + col] = class;
        }
    }
    let gt = GroundTruthMap::new(height, width, labels).expect("consistent raster");

    let informative = (bands as f64 * 0.6).ceil() as usize;
    let informative = informative.clamp(1, bands);
    let pixels = height * width;
    let mut data = Vec::with_capacity(pixels * bands);
    for band in 0..bands {
        let mut rng = rng_stream(seed, &[band as u64 + 1]);
        if band < informative {
            // class-graded response: step `scale` per class id, sigma 1.2
            let scale = 2.0 + 1.5 * (band as f64 / informative.max(1) as f64);
            let offset = rng.random_range(-5.0..5.0);
            for &l in &gt.labels {
                let v = offset + scale * l as f64 + 1.2 * gaussian(&mut rng);
                data.push(v as f32);
            }
        } else {
            // low-cardinality distractor, independent of the labels
            for _ in 0..pixels {
                data.push(rng.random_range(0..6) as f32);
            }
        }
    }
    let cube = HsiCube::new(height, width, bands, data).expect("consistent cube");
    (cube, gt)
}
