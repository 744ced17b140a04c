//! Confusion-matrix metrics.
//!
//! Evaluates a trained classifier and walks through everything the report
//! carries: the confusion matrix, per-class sensitivity / specificity /
//! precision, overall accuracy, Cohen's kappa and the CSV forms.
//!
//! Run: cargo run --example evaluate_metrics

use hyperspec::classifiers::{train_classifier, ClassifierSpec, LdaSpec};
use hyperspec::evaluation::{evaluate, EvalReport};
use hyperspec::hsi_data::{extract_labeled_samples, stratified_split, SplitSpec};
use hyperspec::synthetic::planted_scene;

fn main() -> hyperspec::Result<()> {
    let (cube, gt) = planted_scene(24, 24, 6, 4, 13);
    let set = extract_labeled_samples(&cube, &gt, &[0, 1, 2])?;
    let (train, test) = stratified_split(&set, &SplitSpec::half(2))?;

    let started = std::time::Instant::now();
    let model = train_classifier(&ClassifierSpec::Lda(LdaSpec::default()), &train)?;
    let train_seconds = started.elapsed().as_secs_f64();
    let report = evaluate(&model, &test, train_seconds)?;

    println!("confusion matrix (rows = truth, columns = predicted):");
    print!("{:>8}", "");
    for p in 1..=report.confusion.num_classes() {
        print!("{p:>8}");
    }
    println!();
    for t in 1..=report.confusion.num_classes() as u16 {
        print!("{t:>8}");
        for p in 1..=report.confusion.num_classes() as u16 {
            print!("{:>8}", report.confusion.count(t, p));
        }
        println!();
    }

    println!("\nper-class metrics:");
    println!(
        "{:>6} {:>8} {:>12} {:>12} {:>11}",
        "class", "support", "sensitivity", "specificity", "precision"
    );
    for m in &report.per_class {
        println!(
            "{:>6} {:>8} {:>12.4} {:>12.4} {:>11.4}",
            m.class, m.support, m.sensitivity, m.specificity, m.precision
        );
    }

    println!("\nmacro sensitivity = {:.4}", report.sensitivity);
    println!("macro specificity = {:.4}", report.specificity);
    println!("macro precision   = {:.4}", report.precision);
    println!("overall accuracy  = {:.4}", report.oa);
    println!("Cohen's kappa     = {:.4}", report.kappa);
    println!(
        "train / predict   = {:.4}s / {:.4}s",
        report.train_seconds, report.predict_seconds
    );

    println!("\nCSV row ({}):", EvalReport::csv_header());
    println!("{}", report.to_csv_row());
    Ok(())
}
