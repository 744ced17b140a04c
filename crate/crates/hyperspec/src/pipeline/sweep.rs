//! The accuracy-vs-band-count sweep and its report files.

use std::fs;
use std::time::Instant;

use super::render::{mask_map, render_map, write_ppm};
use super::{ExperimentConfig, PipelineModel};
use crate::band_selection::{select_bands, SelectionConfig, SelectionState};
use crate::classifiers::{grid_search_cv, train_classifier, ClassifierSpec};
use crate::error::Result;
use crate::evaluation::{evaluate, EvalReport};
use crate::hsi_data::{
    extract_labeled_samples, load_cube, load_ground_truth, stratified_split, LabeledSampleSet,
    SplitSpec, Standardizer,
};
use crate::util::derive_seed;

// Seed stream tags.
const SPLIT_STREAM: u64 = 1;
const CV_STREAM: u64 = 2;
const RF_STREAM: u64 = 3;

/// One (classifier, band count) evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub classifier_id: String,
    pub requested_bands: usize,
    /// Bands actually used; smaller than requested when the selection ran
    /// out of candidates (shortfall).
    pub actual_bands: usize,
    pub shortfall: bool,
    pub best_spec: ClassifierSpec,
    pub report: EvalReport,
}

/// Everything a sweep produces before files are written.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub selection: SelectionState,
    /// Models trained at the largest band count, in roster order.
    pub models: Vec<PipelineModel>,
    pub warnings: Vec<String>,
}

impl SweepResult {
    /// Rows of the largest band count, in roster order.
    pub fn summary_rows(&self) -> Vec<&SweepRow> {
        let Some(last) = self.rows.iter().map(|r| r.requested_bands).max() else {
            return Vec::new();
        };
        self.rows
            .iter()
            .filter(|r| r.requested_bands == last)
            .collect()
    }

    pub fn row(&self, classifier_id: &str, requested_bands: usize) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.classifier_id == classifier_id && r.requested_bands == requested_bands)
    }
}

/// Run the full sweep: one selection pass, one stratified split, then a
/// cross-validated train/evaluate cell for every (band count, roster entry).
pub fn run_sweep(config: &ExperimentConfig) -> Result<SweepResult> {
    config.validate()?;
    let cube = load_cube(&config.cube_path)?;
    let gt = load_ground_truth(&config.gt_path, (cube.height, cube.width))?;

    let mut warnings: Vec<String> = gt
        .empty_classes()
        .iter()
        .map(|c| format!("class {c} empty"))
        .collect();

    let max_bands = *config.band_counts.last().expect("validated non-empty");
    let selection = select_bands(
        &cube,
        &gt,
        &SelectionConfig {
            max_bands: max_bands.min(cube.bands),
            levels: config.levels,
            threshold: config.threshold,
            gest_rule: config.gest_rule,
        },
    )?;

    let full_set = extract_labeled_samples(&cube, &gt, &selection.accepted)?;
    let split_spec = SplitSpec::new(
        config.train_fraction,
        derive_seed(config.seed, &[SPLIT_STREAM]),
    );
    let (train_full, test_full) = stratified_split(&full_set, &split_spec)?;

    let mut rows = Vec::with_capacity(config.band_counts.len() * config.roster.len());
    let mut models = Vec::new();
    for &requested in &config.band_counts {
        let actual = requested.min(selection.accepted.len());
        let shortfall = actual < requested;
        if shortfall {
            warnings.push(format!(
                "requested {requested} bands but selection accepted only {actual}"
            ));
        }
        let train_raw = train_full.truncate_features(actual)?;
        let test_raw = test_full.truncate_features(actual)?;
        let standardizer = config.standardize.then(|| Standardizer::fit(&train_raw));
        let (train_std, test_std) = match &standardizer {
            Some(s) => (Some(s.transform(&train_raw)), Some(s.transform(&test_raw))),
            None => (None, None),
        };

        let is_last = requested == max_bands;
        for (ri, entry) in config.roster.iter().enumerate() {
            let standardized = entry.family.wants_standardization() && config.standardize;
            let (train_in, test_in): (&LabeledSampleSet, &LabeledSampleSet) = if standardized {
                (
                    train_std.as_ref().expect("standardizer fitted"),
                    test_std.as_ref().expect("standardizer fitted"),
                )
            } else {
                (&train_raw, &test_raw)
            };

            let tags = [ri as u64, requested as u64];
            let candidates = entry.family.candidates(
                train_in.dim(),
                derive_seed(config.seed, &[RF_STREAM, tags[0], tags[1]]),
            );
            let best = grid_search_cv(
                train_in,
                &candidates,
                config.cv_folds,
                derive_seed(config.seed, &[CV_STREAM, tags[0], tags[1]]),
            )?
            .best;

            let started = Instant::now();
            let model = train_classifier(&best, train_in)?;
            let train_seconds = started.elapsed().as_secs_f64();
            let mut report = evaluate(&model, test_in, train_seconds)?;
            if !config.timing {
                report.train_seconds = 0.0;
                report.predict_seconds = 0.0;
            }

            if is_last {
                models.push(PipelineModel {
                    classifier_id: entry.id.clone(),
                    band_ids: train_raw.band_ids.clone(),
                    standardizer: standardized.then(|| {
                        standardizer.clone().expect("standardizer fitted")
                    }),
                    num_classes: full_set.num_classes,
                    model,
                });
            }

            rows.push(SweepRow {
                classifier_id: entry.id.clone(),
                requested_bands: requested,
                actual_bands: actual,
                shortfall,
                best_spec: best,
                report,
            });
        }
    }

    Ok(SweepResult {
        rows,
        selection,
        models,
        warnings,
    })
}

/// Write `sweep.csv`, `summary.csv`, `per_class.csv` and
/// `selection_trace.csv` into the configured output directory.
pub fn emit_reports(config: &ExperimentConfig, result: &SweepResult) -> Result<()> {
    fs::create_dir_all(&config.out_dir)?;

    let mut sweep = String::from(
        "classifier,requested_bands,actual_bands,shortfall,sensitivity,specificity,precision,oa,kappa,time_s,train_s,predict_s\n",
    );
    for row in &result.rows {
        let r = &row.report;
        sweep.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.classifier_id,
            row.requested_bands,
            row.actual_bands,
            u8::from(row.shortfall),
            r.to_csv_row(),
            r.train_seconds,
            r.predict_seconds
        ));
    }
    fs::write(config.out_dir.join("sweep.csv"), sweep)?;

    let mut summary = format!("classifier,{}\n", EvalReport::csv_header());
    let mut per_class =
        String::from("classifier,class,support,sensitivity,specificity,precision,degenerate\n");
    for row in result.summary_rows() {
        summary.push_str(&format!(
            "{},{}\n",
            row.classifier_id,
            row.report.to_csv_row()
        ));
        for m in &row.report.per_class {
            per_class.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.classifier_id,
                m.class,
                m.support,
                m.sensitivity,
                m.specificity,
                m.precision,
                u8::from(m.degenerate)
            ));
        }
    }
    fs::write(config.out_dir.join("summary.csv"), summary)?;
    fs::write(config.out_dir.join("per_class.csv"), per_class)?;
    fs::write(
        config.out_dir.join("selection_trace.csv"),
        result.selection.trace_csv(),
    )?;
    Ok(())
}

/// Run the sweep, write all reports, and (per config) render classification
/// maps and save the final models.
pub fn run_experiment(config: &ExperimentConfig) -> Result<SweepResult> {
    let result = run_sweep(config)?;
    emit_reports(config, &result)?;

    if config.save_models {
        let dir = config.out_dir.join("models");
        fs::create_dir_all(&dir)?;
        for model in &result.models {
            model.save_json(dir.join(format!("{}.json", model.classifier_id)))?;
        }
    }

    if config.render_maps {
        let cube = load_cube(&config.cube_path)?;
        let gt = load_ground_truth(&config.gt_path, (cube.height, cube.width))?;
        let dir = config.out_dir.join("maps");
        fs::create_dir_all(&dir)?;
        write_ppm(
            &super::render_ground_truth(&gt),
            dir.join("ground_truth.ppm"),
        )?;
        for model in &result.models {
            let map = render_map(model, &cube)?;
            write_ppm(&map, dir.join(format!("{}.ppm", model.classifier_id)))?;
            let masked = mask_map(&map, &gt)?;
            write_ppm(
                &masked,
                dir.join(format!("{}_masked.ppm", model.classifier_id)),
            )?;
        }
    }
    Ok(result)
}
