//! Cross-validated hyperparameter search.
//!
//! Searches the default C x gamma grid for an RBF SVM with stratified
//! 5-fold cross validation on the training split only, then evaluates the
//! winner on held-out data.
//!
//! Run: cargo run --example grid_search

use hyperspec::classifiers::{
    default_svm_grid, grid_search_cv, train_classifier, KernelKind,
};
use hyperspec::hsi_data::{extract_labeled_samples, stratified_split, SplitSpec, Standardizer};
use hyperspec::synthetic::planted_scene;

fn main() -> hyperspec::Result<()> {
    let (cube, gt) = planted_scene(24, 24, 8, 3, 9);
    let set = extract_labeled_samples(&cube, &gt, &[0, 1, 2, 3])?;
    let (train, test) = stratified_split(&set, &SplitSpec::half(4))?;
    let standardizer = Standardizer::fit(&train);
    let train = standardizer.transform(&train);
    let test = standardizer.transform(&test);

    let grid = default_svm_grid(KernelKind::Rbf, train.dim());
    println!("searching {} candidates with 5-fold CV...", grid.len());
    let outcome = grid_search_cv(&train, &grid, 5, 21)?;

    println!("\n{:<36} {:>9}", "candidate", "mean OA");
    for (spec, oa) in grid.iter().zip(&outcome.mean_oa) {
        let marker = if *spec == outcome.best { "  <- best" } else { "" };
        println!("{:<36} {:>9.4}{marker}", spec.to_string(), oa);
    }

    let model = train_classifier(&outcome.best, &train)?;
    let predictions = model.predict_set(&test)?;
    let correct = predictions
        .iter()
        .zip(test.labels())
        .filter(|(p, t)| p == t)
        .count();
    println!(
        "\nwinner {} reaches {:.4} accuracy on held-out data",
        outcome.best,
        correct as f64 / test.len() as f64
    );
    Ok(())
}
