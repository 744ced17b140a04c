//! Classification-map rendering.
//!
//! Trains a classifier on selected bands, predicts every pixel of the cube
//! and writes three PPM images: the full predicted map, a masked variant
//! (black wherever the ground truth is unlabeled) and the ground truth
//! itself, all under the fixed golden-angle palette.
//!
//! Run: cargo run --example render_map

use hyperspec::band_selection::{select_bands, SelectionConfig};
use hyperspec::classifiers::{train_classifier, ClassifierSpec, KnnSpec};
use hyperspec::hsi_data::{extract_labeled_samples, stratified_split, SplitSpec, Standardizer};
use hyperspec::pipeline::{
    class_color, mask_map, render_ground_truth, render_map, write_ppm, PipelineModel,
};
use hyperspec::synthetic::planted_scene;

fn main() -> hyperspec::Result<()> {
    let dir = std::env::temp_dir().join("hyperspec_render_demo");
    std::fs::create_dir_all(&dir)?;
    let (cube, gt) = planted_scene(40, 40, 10, 5, 31);

    let selection = select_bands(&cube, &gt, &SelectionConfig::new(4).with_levels(16))?;
    let set = extract_labeled_samples(&cube, &gt, &selection.accepted)?;
    let (train, _) = stratified_split(&set, &SplitSpec::half(8))?;
    let standardizer = Standardizer::fit(&train);
    let model = PipelineModel {
        classifier_id: "knn-1".into(),
        band_ids: selection.accepted.clone(),
        standardizer: Some(standardizer.clone()),
        num_classes: gt.num_classes,
        model: train_classifier(
            &ClassifierSpec::Knn(KnnSpec { k: 1 }),
            &standardizer.transform(&train),
        )?,
    };

    let map = render_map(&model, &cube)?;
    let masked = mask_map(&map, &gt)?;
    write_ppm(&map, dir.join("predicted.ppm"))?;
    write_ppm(&masked, dir.join("predicted_masked.ppm"))?;
    write_ppm(&render_ground_truth(&gt), dir.join("ground_truth.ppm"))?;

    println!("palette (class -> RGB):");
    for c in 0..=gt.num_classes as u16 {
        let [r, g, b] = class_color(c);
        let name = if c == 0 { " (unlabeled)" } else { "" };
        println!("  {c:>3} -> #{r:02x}{g:02x}{b:02x}{name}");
    }

    let agree = masked
        .labels
        .iter()
        .zip(&gt.labels)
        .filter(|&(_, &g)| g != 0)
        .filter(|&(&p, &g)| p == g)
        .count();
    println!(
        "\nmasked map agrees with the ground truth on {agree}/{} labeled pixels",
        gt.labeled_pixels()
    );
    println!("wrote 3 maps under {}", dir.display());
    Ok(())
}
