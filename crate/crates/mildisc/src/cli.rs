//! Command-line front end: discretize datasets, apply stored schemes,
//! evaluate discretizers through the tree classifier, compare them across a
//! manifest of datasets, and inspect scheme files.
//!
//! Every command is deterministic given its full flag set; all randomness
//! flows from `--seed`. Exit codes: 0 success, 2 usage, 3 I/O or data
//! problems, 4 internal contract violations.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::dataset::{arff, csv, load_entry, load_manifest, Dataset};
use crate::discretize::{apply_schemes, discretize_dataset, DiscretizerConfig};
use crate::error::{Error, Result};
use crate::eval::{compare, DatasetSource, ExperimentConfig};
use crate::scheme::{read_schemes, write_schemes, Algorithm};

#[derive(Debug, Parser)]
#[command(
    name = "mildisc",
    version,
    about = "Supervised discretization toolkit: interval-merging discretizers, \
             classic baselines, and a repeated-holdout evaluation harness."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discretize every continuous attribute and save the scheme file.
    Discretize(DiscretizeArgs),
    /// Relabel a dataset with a previously saved scheme file (never refits).
    Apply(ApplyArgs),
    /// Score one discretizer on one dataset over repeated holdout splits.
    Evaluate(EvaluateArgs),
    /// Build the full dataset-by-discretizer accuracy table from a manifest.
    Compare(CompareArgs),
    /// Summarize a scheme file; optionally re-emit it.
    Inspect(InspectArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Dataset file (.csv with a header row, or .arff).
    pub input: PathBuf,
    /// Force the input format instead of trusting the file extension.
    #[arg(long, value_parser = ["csv", "arff"])]
    pub format: Option<String>,
    /// Class column (0-based) for CSV inputs; default is the last column.
    #[arg(long)]
    pub class_index: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Discretizer to fit.
    #[arg(long, default_value = "modified-mil")]
    pub algo: Algorithm,
    /// Subintervals per class value for the interval-merging discretizers.
    #[arg(long, default_value_t = 20)]
    pub c: u32,
    /// Merge-threshold divisor for the interval-merging discretizers.
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    /// Bin count for equal-width and equal-frequency.
    #[arg(long, default_value_t = 10)]
    pub bins: u32,
    /// Seed for every random choice (imputation draws, splits).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl FitArgs {
    fn config(&self) -> DiscretizerConfig {
        DiscretizerConfig::from_parts(self.algo, self.c, self.k, self.bins, self.seed)
    }
}

#[derive(Debug, Args)]
pub struct DiscretizeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub fit: FitArgs,
    /// Where to write the discretized CSV (default: <input>-discretized.csv).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Where to write the scheme JSON (default: <input>-schemes.json).
    #[arg(long)]
    pub scheme_out: Option<PathBuf>,
    /// Fit attributes in parallel (results are identical either way).
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Scheme file produced by `discretize`.
    #[arg(long)]
    pub schemes: PathBuf,
    /// Where to write the relabeled CSV (default: <input>-applied.csv).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Holdout repetitions.
    #[arg(long, default_value_t = 50)]
    pub runs: u32,
    /// Fraction of each class drawn into the train half.
    #[arg(long, default_value_t = 0.30)]
    pub train_fraction: f64,
    /// Run the experiment's repetitions in parallel.
    #[arg(long)]
    pub parallel: bool,
    /// Where to write the structured JSON report.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Where to also write the text table (it always goes to stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl ExperimentArgs {
    fn config(&self, seed: u64) -> ExperimentConfig {
        ExperimentConfig {
            runs: self.runs,
            train_fraction: self.train_fraction,
            master_seed: seed,
            parallel: self.parallel,
        }
    }
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub fit: FitArgs,
    #[command(flatten)]
    pub experiment: ExperimentArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// JSON manifest listing the datasets to include.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Comma-separated discretizers (default: all five).
    #[arg(long, value_delimiter = ',')]
    pub algos: Option<Vec<Algorithm>>,
    #[command(flatten)]
    pub fit: FitArgs,
    #[command(flatten)]
    pub experiment: ExperimentArgs,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    /// Scheme file to summarize.
    pub schemes: PathBuf,
    /// Re-emit the schemes to this path after validation.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn read_dataset(args: &InputArgs) -> Result<Dataset> {
    let format = match &args.format {
        Some(f) => f.clone(),
        None => args
            .input
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase())
            .ok_or_else(|| {
                Error::Param(format!(
                    "cannot infer the format of `{}`; pass --format",
                    args.input.display()
                ))
            })?,
    };
    match format.as_str() {
        "csv" => csv::read_csv_with(
            &args.input,
            &csv::CsvOptions {
                class_index: args.class_index,
                kinds: Vec::new(),
            },
        ),
        "arff" => {
            if args.class_index.is_some() {
                return Err(Error::Param(
                    "--class-index applies to CSV inputs only; the last \
                     declared attribute is the class in ARFF"
                        .into(),
                ));
            }
            arff::read_arff(&args.input)
        }
        other => Err(Error::Param(format!("unsupported format `{other}`"))),
    }
}

fn sibling(input: &Path, suffix: &str) -> PathBuf {
    let stem = input
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("output");
    input.with_file_name(format!("{stem}{suffix}"))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.into(),
        source,
    })
}

fn cmd_discretize(args: &DiscretizeArgs) -> Result<String> {
    let ds = read_dataset(&args.input)?;
    let fit = discretize_dataset(&ds, &args.fit.config(), args.parallel)?;

    let out_path = args
        .output
        .clone()
        .unwrap_or_else(|| sibling(&args.input.input, "-discretized.csv"));
    let scheme_path = args
        .scheme_out
        .clone()
        .unwrap_or_else(|| sibling(&args.input.input, "-schemes.json"));
    csv::write_csv(&fit.dataset, &out_path)?;
    write_schemes(&scheme_path, &fit.schemes)?;

    let mut out = String::new();
    out.push_str(&format!(
        "{}: {} rows, {} attributes ({} continuous)\n",
        args.input.input.display(),
        ds.example_count(),
        ds.attributes.len(),
        ds.continuous_attribute_indices().len(),
    ));
    for scheme in &fit.schemes {
        out.push_str(&format!(
            "  {}: {} regions, labels 1..{}\n",
            scheme.attribute,
            scheme.regions.len(),
            scheme.regions.len()
        ));
    }
    for name in &fit.skipped {
        out.push_str(&format!("  {name}: skipped (all values missing)\n"));
    }
    out.push_str(&format!("wrote {}\n", out_path.display()));
    out.push_str(&format!("wrote {}\n", scheme_path.display()));
    Ok(out)
}

fn cmd_apply(args: &ApplyArgs) -> Result<String> {
    let ds = read_dataset(&args.input)?;
    let schemes = read_schemes(&args.schemes)?;
    let (applied, stats) = apply_schemes(&ds, &schemes)?;
    let out_path = args
        .output
        .clone()
        .unwrap_or_else(|| sibling(&args.input.input, "-applied.csv"));
    csv::write_csv(&applied, &out_path)?;

    let mut out = String::new();
    out.push_str(&format!(
        "applied {} schemes to {} rows\n",
        schemes.len(),
        applied.example_count()
    ));
    out.push_str(&format!(
        "  missing values mapped to the first region: {}\n",
        stats.missing_mapped
    ));
    out.push_str(&format!(
        "  values below a fitted range: {}\n  values above a fitted range: {}\n",
        stats.below_range, stats.above_range
    ));
    out.push_str(&format!("wrote {}\n", out_path.display()));
    Ok(out)
}

fn run_table(
    datasets: Vec<(String, DatasetSource)>,
    configs: &[DiscretizerConfig],
    exp: &ExperimentConfig,
    args: &ExperimentArgs,
) -> Result<String> {
    let report = compare(&datasets, configs, exp)?;
    let text = crate::eval::render_report(&report);
    if let Some(path) = &args.json {
        write_text(path, &report.to_json())?;
    }
    if let Some(path) = &args.output {
        write_text(path, &text)?;
    }
    Ok(text)
}

fn cmd_evaluate(args: &EvaluateArgs) -> Result<String> {
    let name = args
        .input
        .input
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("dataset")
        .to_string();
    let source = DatasetSource::Ready(read_dataset(&args.input)?);
    let exp = args.experiment.config(args.fit.seed);
    run_table(
        vec![(name, source)],
        &[args.fit.config()],
        &exp,
        &args.experiment,
    )
}

fn cmd_compare(args: &CompareArgs) -> Result<String> {
    let manifest = load_manifest(&args.manifest)?;
    let dir = args
        .manifest
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));

    let mut notes = String::new();
    let mut datasets = Vec::new();
    for entry in &manifest.datasets {
        match load_entry(&dir, entry) {
            Ok(loaded) => {
                for w in &loaded.warnings {
                    notes.push_str(&format!("note: {}: {w}\n", loaded.name));
                }
                datasets.push((loaded.name, DatasetSource::Ready(loaded.dataset)));
            }
            Err(e) => {
                datasets.push((entry.name.clone(), DatasetSource::Failed(e.to_string())));
            }
        }
    }

    let algos = args
        .algos
        .clone()
        .unwrap_or_else(|| Algorithm::ALL.to_vec());
    let configs: Vec<DiscretizerConfig> = algos
        .iter()
        .map(|&a| DiscretizerConfig::from_parts(a, args.fit.c, args.fit.k, args.fit.bins, args.fit.seed))
        .collect();

    let exp = args.experiment.config(args.fit.seed);
    let table = run_table(datasets, &configs, &exp, &args.experiment)?;
    Ok(format!("{notes}{table}"))
}

fn cmd_inspect(args: &InspectArgs) -> Result<String> {
    let schemes = read_schemes(&args.schemes)?;
    let mut out = String::new();
    out.push_str(&format!(
        "{}: {} attribute scheme(s)\n",
        args.schemes.display(),
        schemes.len()
    ));
    for scheme in &schemes {
        out.push_str(&format!(
            "\n{} ({}, fitted on [{}, {}])\n",
            scheme.attribute, scheme.algorithm, scheme.d_min, scheme.d_max
        ));
        for region in &scheme.regions {
            let upper = if region.upper.is_finite() {
                format!("{}", region.upper)
            } else {
                "inf".to_string()
            };
            out.push_str(&format!(
                "  label {:>3}: [{}, {}) holds {} training values across {} subinterval(s)",
                region.label, region.lower, upper, region.total_cts, region.span
            ));
            if let Some(mid) = region.midpoint {
                out.push_str(&format!(", midpoint {mid}"));
            }
            out.push('\n');
        }
    }
    if let Some(path) = &args.output {
        write_schemes(path, &schemes)?;
        out.push_str(&format!("\nwrote {}\n", path.display()));
    }
    Ok(out)
}

/// Runs one parsed command and returns what it prints to stdout.
pub fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Discretize(args) => cmd_discretize(args),
        Command::Apply(args) => cmd_apply(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Inspect(args) => cmd_inspect(args),
    }
}
