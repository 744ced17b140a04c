//! Cube and ground-truth file I/O.
//!
//! Writes a small synthetic scene to disk in the toolkit's raw format
//! (`.hsib` = little-endian f32, band-sequential, with a JSON sidecar;
//! `.gt` = little-endian u16, row-major), reloads it and verifies the
//! round-trip is bit-identical.
//!
//! Run: cargo run --example cube_io

use hyperspec::hsi_data::{load_cube, load_ground_truth, save_cube, save_ground_truth};
use hyperspec::synthetic::planted_scene;

fn main() -> hyperspec::Result<()> {
    let dir = std::env::temp_dir().join("hyperspec_cube_io_demo");
    std::fs::create_dir_all(&dir)?;

    let (cube, gt) = planted_scene(24, 24, 8, 4, 7);
    println!(
        "scene: {}x{} pixels, {} bands, {} classes, {} labeled pixels",
        cube.height,
        cube.width,
        cube.bands,
        gt.num_classes,
        gt.labeled_pixels()
    );

    let cube_path = dir.join("scene.hsib");
    let gt_path = dir.join("scene.gt");
    save_cube(&cube, &cube_path)?;
    save_ground_truth(&gt, &gt_path)?;

    println!("\nwrote {}", cube_path.display());
    println!(
        "sidecar: {}",
        std::fs::read_to_string(dir.join("scene.hsib.json"))?
    );

    let cube_back = load_cube(&cube_path)?;
    let gt_back = load_ground_truth(&gt_path, (cube.height, cube.width))?;
    assert_eq!(cube_back, cube);
    assert_eq!(gt_back, gt);
    println!("round-trip: bit-identical OK");

    // loading catches corrupted payloads with a precise diagnostic
    let bytes = std::fs::read(&cube_path)?;
    std::fs::write(&cube_path, &bytes[..bytes.len() - 4])?;
    match load_cube(&cube_path) {
        Err(e) => println!("truncated payload rejected: {e}"),
        Ok(_) => println!("UNEXPECTED: truncated cube loaded"),
    }
    Ok(())
}
