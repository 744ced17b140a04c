//! Classification-map rendering to binary PPM.
//!
//! The palette is fixed and bit-exact: class 0 is black, class `c >= 1` is
//! `HSV(137.508 * c mod 360, 1, 1)` converted to RGB with round-half-up.
//! The golden-angle hue step spreads any number of classes.

use rayon::prelude::*;
use std::path::Path;

use super::PipelineModel;
use crate::error::{Error, Result};
use crate::hsi_data::{GroundTruthMap, HsiCube};

/// Per-pixel predicted class ids (0 = masked / unlabeled).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationMap {
    pub height: usize,
    pub width: usize,
    pub labels: Vec<u16>,
}

fn round_channel(x: f64) -> u8 {
    (x * 255.0 + 0.5).floor() as u8
}

/// Fixed palette color of a class id.
pub fn class_color(class: u16) -> [u8; 3] {
    if class == 0 {
        return [0, 0, 0];
    }
    let h = (137.508 * class as f64) % 360.0;
    let sector = h / 60.0;
    let f = sector - sector.floor();
    let (r, g, b) = match sector.floor() as u32 % 6 {
        0 => (1.0, f, 0.0),
        1 => (1.0 - f, 1.0, 0.0),
        2 => (0.0, 1.0, f),
        3 => (0.0, 1.0 - f, 1.0),
        4 => (f, 0.0, 1.0),
        _ => (1.0, 0.0, 1.0 - f),
    };
    [round_channel(r), round_channel(g), round_channel(b)]
}

/// Predict every pixel of the cube (labeled and unlabeled alike).
pub fn render_map(model: &PipelineModel, cube: &HsiCube) -> Result<ClassificationMap> {
    for &b in &model.band_ids {
        if b >= cube.bands {
            return Err(Error::BandOutOfRange {
                band: b,
                bands: cube.bands,
            });
        }
    }
    let labels: Vec<u16> = (0..cube.pixels())
        .into_par_iter()
        .map(|p| model.predict_pixel(cube, p))
        .collect::<Result<_>>()?;
    Ok(ClassificationMap {
        height: cube.height,
        width: cube.width,
        labels,
    })
}

/// Companion variant with unlabeled (gt = 0) pixels forced to 0.
pub fn mask_map(map: &ClassificationMap, gt: &GroundTruthMap) -> Result<ClassificationMap> {
    if map.height != gt.height || map.width != gt.width {
        return Err(Error::DimensionMismatch {
            expected_h: map.height,
            expected_w: map.width,
            actual_h: gt.height,
            actual_w: gt.width,
        });
    }
    let labels = map
        .labels
        .iter()
        .zip(&gt.labels)
        .map(|(&p, &g)| if g == 0 { 0 } else { p })
        .collect();
    Ok(ClassificationMap {
        height: map.height,
        width: map.width,
        labels,
    })
}

/// The ground truth itself as a map (for side-by-side rendering).
pub fn render_ground_truth(gt: &GroundTruthMap) -> ClassificationMap {
    ClassificationMap {
        height: gt.height,
        width: gt.width,
        labels: gt.labels.clone(),
    }
}

/// Write a binary P6 PPM using the fixed palette.
pub fn write_ppm(map: &ClassificationMap, path: impl AsRef<Path>) -> Result<()> {
    let mut bytes = format!("P6\n{} {}\n255\n", map.width, map.height).into_bytes();
    bytes.reserve(map.labels.len() * 3);
    for &l in &map.labels {
        bytes.extend_from_slice(&class_color(l));
    }
    std::fs::write(path, bytes)?;
    Ok(())
}
