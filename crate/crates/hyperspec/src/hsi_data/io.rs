//! Raw cube and ground-truth file formats.
//!
//! Cube: `<name>.hsib` holds raw little-endian IEEE-754 f32, band-sequential
//! (band 0's full `H x W` row-major block, then band 1, ...). The sidecar
//! `<name>.hsib.json` pins the shape:
//! `{"height":H,"width":W,"bands":B,"dtype":"f32le","order":"bsq"}`.
//!
//! Ground truth: `<name>.gt` holds raw little-endian u16, row-major, with
//! sidecar `{"height":H,"width":W}`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{GroundTruthMap, HsiCube};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct CubeHeader {
    height: usize,
    width: usize,
    bands: usize,
    dtype: String,
    order: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct GtHeader {
    height: usize,
    width: usize,
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(".json");
    std::path::PathBuf::from(s)
}

fn read_sidecar<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let sidecar = sidecar_path(path);
    let text = fs::read_to_string(&sidecar).map_err(|e| Error::Header {
        path: sidecar.display().to_string(),
        reason: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Header {
        path: sidecar.display().to_string(),
        reason: e.to_string(),
    })
}

/// Load a cube and validate it against its JSON sidecar.
pub fn load_cube(path: impl AsRef<Path>) -> Result<HsiCube> {
    let path = path.as_ref();
    let header: CubeHeader = read_sidecar(path)?;
    if header.dtype != "f32le" || header.order != "bsq" {
        return Err(Error::Header {
            path: sidecar_path(path).display().to_string(),
            reason: format!(
                "unsupported dtype/order {:?}/{:?} (expected \"f32le\"/\"bsq\")",
                header.dtype, header.order
            ),
        });
    }
    if header.height == 0 || header.width == 0 || header.bands == 0 {
        return Err(Error::Header {
            path: sidecar_path(path).display().to_string(),
            reason: format!(
                "dimensions must be >= 1, got {}x{}x{}",
                header.height, header.width, header.bands
            ),
        });
    }
    let bytes = fs::read(path)?;
    let expected = (header.height * header.width * header.bands * 4) as u64;
    if bytes.len() as u64 != expected {
        return Err(Error::SizeMismatch {
            path: path.display().to_string(),
            expected,
            actual: bytes.len() as u64,
        });
    }
    let mut data = Vec::with_capacity(bytes.len() / 4);
    for (i, chunk) in bytes.chunks_exact(4).enumerate() {
        let v = f32::from_le_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]);
        if !v.is_finite() {
            return Err(Error::NonFiniteSample {
                path: path.display().to_string(),
                offset: (i * 4) as u64,
            });
        }
        data.push(v);
    }
    HsiCube::new(header.height, header.width, header.bands, data)
}

/// Write a cube and its sidecar.
pub fn save_cube(cube: &HsiCube, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut bytes = Vec::with_capacity(cube.data.len() * 4);
    for v in &cube.data {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    fs::write(path, bytes)?;
    let header = CubeHeader {
        height: cube.height,
        width: cube.width,
        bands: cube.bands,
        dtype: "f32le".into(),
        order: "bsq".into(),
    };
    fs::write(sidecar_path(path), serde_json::to_string(&header)?)?;
    Ok(())
}

/// Load a ground-truth raster, requiring it to match the paired cube's shape.
pub fn load_ground_truth(
    path: impl AsRef<Path>,
    expected_dims: (usize, usize),
) -> Result<GroundTruthMap> {
    let path = path.as_ref();
    let header: GtHeader = read_sidecar(path)?;
    if (header.height, header.width) != expected_dims {
        return Err(Error::DimensionMismatch {
            expected_h: expected_dims.0,
            expected_w: expected_dims.1,
            actual_h: header.height,
            actual_w: header.width,
        });
    }
    let bytes = fs::read(path)?;
    let expected = (header.height * header.width * 2) as u64;
    if bytes.len() as u64 != expected {
        return Err(Error::SizeMismatch {
            path: path.display().to_string(),
            expected,
            actual: bytes.len() as u64,
        });
    }
    let labels: Vec<u16> = bytes
        .chunks_exact(2)
        .map(|c| u16::from_le_bytes([c[0], c[1]]))
        .collect();
    GroundTruthMap::new(header.height, header.width, labels)
}

/// Write a ground-truth raster and its sidecar.
pub fn save_ground_truth(gt: &GroundTruthMap, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut bytes = Vec::with_capacity(gt.labels.len() * 2);
    for l in &gt.labels {
        bytes.extend_from_slice(&l.to_le_bytes());
    }
    fs::write(path, bytes)?;
    let header = GtHeader {
        height: gt.height,
        width: gt.width,
    };
    fs::write(sidecar_path(path), serde_json::to_string(&header)?)?;
    Ok(())
}
