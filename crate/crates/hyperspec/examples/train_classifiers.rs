//! The four classifiers behind one train/predict contract.
//!
//! Trains an SVM (RBF kernel, one-vs-one), a random forest, linear LDA and
//! 3-NN on the same split of a planted scene and compares test accuracy.
//! Also shows the JSON model round-trip.
//!
//! Run: cargo run --example train_classifiers

use hyperspec::classifiers::{
    train_classifier, ClassifierSpec, KernelParams, KnnSpec, LdaSpec, RfParams, SvmSpec,
    TrainedModel,
};
use hyperspec::hsi_data::{extract_labeled_samples, stratified_split, SplitSpec, Standardizer};
use hyperspec::synthetic::planted_scene;

fn main() -> hyperspec::Result<()> {
    let (cube, gt) = planted_scene(26, 26, 10, 4, 3);
    let set = extract_labeled_samples(&cube, &gt, &[0, 1, 2, 3, 4, 5])?;
    let (train, test) = stratified_split(&set, &SplitSpec::half(17))?;
    println!(
        "{} training / {} test samples over {} bands",
        train.len(),
        test.len(),
        train.dim()
    );

    // scale-sensitive learners get standardized features (fit on train only)
    let standardizer = Standardizer::fit(&train);
    let train_std = standardizer.transform(&train);
    let test_std = standardizer.transform(&test);

    let roster: Vec<(ClassifierSpec, bool)> = vec![
        (
            ClassifierSpec::Svm(SvmSpec {
                kernel: KernelParams::rbf(0.1),
                c: 10.0,
            }),
            true,
        ),
        (
            ClassifierSpec::Rf(RfParams {
                num_trees: 100,
                seed: 5,
                ..RfParams::default()
            }),
            false,
        ),
        (ClassifierSpec::Lda(LdaSpec::default()), true),
        (ClassifierSpec::Knn(KnnSpec { k: 3 }), true),
    ];

    println!("\n{:<34} {:>10}", "classifier", "test acc");
    for (spec, standardized) in &roster {
        let (tr, te) = if *standardized {
            (&train_std, &test_std)
        } else {
            (&train, &test)
        };
        let model = train_classifier(spec, tr)?;
        let predictions = model.predict_set(te)?;
        let correct = predictions
            .iter()
            .zip(te.labels())
            .filter(|(p, t)| p == t)
            .count();
        println!(
            "{:<34} {:>10.4}",
            spec.to_string(),
            correct as f64 / te.len() as f64
        );

        // models serialize to self-describing JSON and reload exactly
        let json = model.to_json()?;
        let back = TrainedModel::from_json(&json)?;
        assert_eq!(back.predict_set(te)?, predictions);
    }
    println!("\nJSON round-trip preserved every prediction OK");
    Ok(())
}
