//! `hyperspec-bench`: run band-selection sweeps, selection traces and map
//! rendering from the command line. Flags override same-named config keys.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hyperspec::hsi_data::{load_cube, load_ground_truth};
use hyperspec::pipeline::{
    mask_map, render_map, run_experiment, write_ppm, ExperimentConfig, PipelineModel,
};

#[derive(Parser)]
#[command(
    name = "hyperspec-bench",
    about = "Hyperspectral band selection and classifier benchmarking",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full sweep: selection, splits, training, reports, maps.
    Run(RunArgs),
    /// Run band selection only and write the trace CSV.
    Select(RunArgs),
    /// Classify every pixel with a saved model and write a PPM map.
    Render(RenderArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Flat key=value config file; every key can be overridden by the
    /// same-named flag below.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    cube: Option<PathBuf>,
    #[arg(long)]
    gt: Option<PathBuf>,
    /// Comma-separated band counts, e.g. 10,20,30.
    #[arg(long)]
    bands: Option<String>,
    /// "all-paper" or a comma-separated roster (svm-rbf, rf, knn-1, ...).
    #[arg(long)]
    classifiers: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_name = "FRACTION")]
    train_fraction: Option<f64>,
    /// Histogram levels for mutual-information estimation.
    #[arg(long)]
    levels: Option<usize>,
    /// Minimum MI gain for accepting a band.
    #[arg(long)]
    threshold: Option<f64>,
    /// Reference-map update rule: mean | pairwise.
    #[arg(long)]
    gest_rule: Option<String>,
    #[arg(long)]
    cv_folds: Option<usize>,
    #[arg(long)]
    standardize: Option<bool>,
    #[arg(long)]
    render_maps: Option<bool>,
    #[arg(long)]
    save_models: Option<bool>,
    /// Report wall-clock times (disable for byte-reproducible outputs).
    #[arg(long)]
    timing: Option<bool>,
}

#[derive(Args)]
struct RenderArgs {
    /// Saved pipeline model JSON (out/models/NAME.json).
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    cube: PathBuf,
    /// Optional ground truth; adds a masked map next to the plain one.
    #[arg(long)]
    gt: Option<PathBuf>,
    /// Output PPM path.
    #[arg(long)]
    out: PathBuf,
}

impl RunArgs {
    fn build_config(&self) -> hyperspec::Result<ExperimentConfig> {
        let mut config = ExperimentConfig::default();
        if let Some(path) = &self.config {
            config.apply_file(path)?;
        }
        // CLI flags win over file keys
        if let Some(v) = &self.cube {
            config.cube_path = v.clone();
        }
        if let Some(v) = &self.gt {
            config.gt_path = v.clone();
        }
        if let Some(v) = &self.out {
            config.out_dir = v.clone();
        }
        if let Some(v) = &self.bands {
            config.apply_kv("bands", v)?;
        }
        if let Some(v) = &self.classifiers {
            config.apply_kv("classifiers", v)?;
        }
        if let Some(v) = self.seed {
            config.seed = v;
        }
        if let Some(v) = self.train_fraction {
            config.train_fraction = v;
        }
        if let Some(v) = self.levels {
            config.levels = v;
        }
        if let Some(v) = self.threshold {
            config.threshold = v;
        }
        if let Some(v) = &self.gest_rule {
            config.apply_kv("gest-rule", v)?;
        }
        if let Some(v) = self.cv_folds {
            config.cv_folds = v;
        }
        if let Some(v) = self.standardize {
            config.standardize = v;
        }
        if let Some(v) = self.render_maps {
            config.render_maps = v;
        }
        if let Some(v) = self.save_models {
            config.save_models = v;
        }
        if let Some(v) = self.timing {
            config.timing = v;
        }
        config.validate()?;
        Ok(config)
    }
}

fn cmd_run(args: &RunArgs) -> hyperspec::Result<()> {
    let config = args.build_config()?;
    let result = run_experiment(&config)?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    println!(
        "selected {} band(s): {:?}",
        result.selection.accepted.len(),
        result.selection.accepted
    );
    println!(
        "wrote {} sweep row(s) to {}",
        result.rows.len(),
        config.out_dir.display()
    );
    for row in result.summary_rows() {
        println!(
            "  {:<14} bands={:<3} oa={:.4} kappa={:.4}",
            row.classifier_id, row.actual_bands, row.report.oa, row.report.kappa
        );
    }
    Ok(())
}

fn cmd_select(args: &RunArgs) -> hyperspec::Result<()> {
    let config = args.build_config()?;
    let cube = load_cube(&config.cube_path)?;
    let gt = load_ground_truth(&config.gt_path, (cube.height, cube.width))?;
    for c in gt.empty_classes() {
        eprintln!("warning: class {c} empty");
    }
    let max_bands = config.band_counts.last().copied().unwrap_or(cube.bands);
    let state = hyperspec::band_selection::select_bands(
        &cube,
        &gt,
        &hyperspec::band_selection::SelectionConfig {
            max_bands: max_bands.min(cube.bands),
            levels: config.levels,
            threshold: config.threshold,
            gest_rule: config.gest_rule,
        },
    )?;
    std::fs::create_dir_all(&config.out_dir)?;
    let trace_path = config.out_dir.join("selection_trace.csv");
    std::fs::write(&trace_path, state.trace_csv())?;
    println!(
        "selected {} band(s): {:?}",
        state.accepted.len(),
        state.accepted
    );
    println!("final MI(GT, G_est) = {:.6} bits", state.current_mi);
    println!("trace written to {}", trace_path.display());
    Ok(())
}

fn cmd_render(args: &RenderArgs) -> hyperspec::Result<()> {
    let model = PipelineModel::load_json(&args.model)?;
    let cube = load_cube(&args.cube)?;
    let map = render_map(&model, &cube)?;
    write_ppm(&map, &args.out)?;
    println!("wrote {}", args.out.display());
    if let Some(gt_path) = &args.gt {
        let gt = load_ground_truth(gt_path, (cube.height, cube.width))?;
        let masked = mask_map(&map, &gt)?;
        let masked_path = masked_path_for(&args.out);
        write_ppm(&masked, &masked_path)?;
        println!("wrote {}", masked_path.display());
    }
    Ok(())
}

fn masked_path_for(out: &std::path::Path) -> PathBuf {
    let stem = out.file_stem().unwrap_or_default().to_string_lossy();
    let masked_name = match out.extension() {
        Some(ext) => format!("{stem}_masked.{}", ext.to_string_lossy()),
        None => format!("{stem}_masked"),
    };
    out.with_file_name(masked_name)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Select(args) => cmd_select(args),
        Command::Render(args) => cmd_render(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
