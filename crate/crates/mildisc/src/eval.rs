//! Repeated-holdout evaluation of discretizers through a common classifier.
//!
//! Each run draws a fresh stratified split, fits every scheme on the train
//! half only, relabels both halves with those schemes, trains an unpruned
//! gain-ratio decision tree, and scores it on the held-out rows. The tree
//! stands in for the original study's classifier, so absolute accuracies
//! are not comparable to other implementations; relative rankings are the
//! point. Dispersion is the population standard deviation.

use rayon::prelude::*;
use serde::Serialize;

use crate::dataset::{stratified_split, Dataset, SplitPair};
use crate::discretize::{apply_schemes, discretize_dataset, DatasetDiscretization, DiscretizerConfig};
use crate::error::{Error, Result};
use crate::rng::{mix2, mix3};
use crate::tree::{accuracy, train_tree};

/// Salt for per-run seeds, so run r's randomness never depends on the
/// number of runs requested.
const RUN_SALT: u64 = 0x52_554E;
/// Salt separating the discretizer's seed from the split's.
const FIT_SALT: u64 = 0x46_4954;

pub const CLASSIFIER_NOTE: &str =
    "unpruned gain-ratio decision tree (substituted for the original study's classifier; \
     absolute accuracies are not comparable across implementations)";
pub const DISPERSION_NOTE: &str = "population standard deviation over the per-run accuracies";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub runs: u32,
    pub train_fraction: f64,
    pub master_seed: u64,
    pub parallel: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            runs: 50,
            train_fraction: 0.30,
            master_seed: 0,
            parallel: false,
        }
    }
}

impl ExperimentConfig {
    fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::Param("runs must be at least 1".into()));
        }
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(Error::Param(format!(
                "train fraction must lie strictly between 0 and 1, got {}",
                self.train_fraction
            )));
        }
        Ok(())
    }
}

/// Seed for run `r` (1-based), independent of the total number of runs.
pub fn run_seed(exp: &ExperimentConfig, r: u32) -> u64 {
    mix3(exp.master_seed, RUN_SALT, r as u64)
}

fn with_run_context(err: Error, r: u32) -> Error {
    let tag = format!("run {r}: ");
    match err {
        Error::Param(m) => Error::Param(format!("{tag}{m}")),
        Error::Unusable(m) => Error::Unusable(format!("{tag}{m}")),
        Error::Mismatch(m) => Error::Mismatch(format!("{tag}{m}")),
        Error::Internal(m) => Error::Internal(format!("{tag}{m}")),
        Error::EmptyDataset => Error::Unusable(format!("{tag}dataset has no rows")),
        other => other,
    }
}

/// Removes the named attributes from a dataset, keeping everything else.
fn drop_attributes(ds: &Dataset, names: &[String]) -> Result<Dataset> {
    if names.is_empty() {
        return Ok(ds.clone());
    }
    let keep: Vec<usize> = (0..ds.attributes.len())
        .filter(|&i| !names.contains(&ds.attributes[i].name))
        .collect();
    let class_index = keep
        .iter()
        .position(|&i| i == ds.class_index)
        .ok_or_else(|| Error::Internal("class attribute cannot be dropped".into()))?;
    Ok(Dataset {
        attributes: keep.iter().map(|&i| ds.attributes[i].clone()).collect(),
        rows: ds
            .rows
            .iter()
            .map(|row| keep.iter().map(|&i| row[i]).collect())
            .collect(),
        class_index,
        dropped_rows: ds.dropped_rows,
    })
}

/// The split and train-only fit behind one run. Exposed so tests can verify
/// that held-out rows play no part in fitting.
pub fn fit_run(
    ds: &Dataset,
    config: &DiscretizerConfig,
    exp: &ExperimentConfig,
    r: u32,
) -> Result<(SplitPair, DatasetDiscretization)> {
    let seed = run_seed(exp, r);
    let split = stratified_split(ds, exp.train_fraction, seed)?;
    let fit_config = config.clone().with_seed(mix2(seed, FIT_SALT));
    let fit = discretize_dataset(&split.train, &fit_config, false)?;
    Ok((split, fit))
}

/// One holdout run: split, fit on the train half, relabel both halves with
/// the fitted schemes, train, score.
pub fn run_once(
    ds: &Dataset,
    config: &DiscretizerConfig,
    exp: &ExperimentConfig,
    r: u32,
) -> Result<f64> {
    let (split, fit) = fit_run(ds, config, exp, r)?;
    let train = drop_attributes(&split.train, &fit.skipped)?;
    let test = drop_attributes(&split.test, &fit.skipped)?;
    let (train, _) = apply_schemes(&train, &fit.schemes)?;
    let (test, _) = apply_schemes(&test, &fit.schemes)?;
    let model = train_tree(&train)?;
    accuracy(&model, &test)
}

pub(crate) fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub accuracies: Vec<f64>,
    pub mean: f64,
    pub sd: f64,
}

/// Runs the full repeated-holdout experiment for one dataset and one
/// discretizer. Deterministic given the configuration; a failing run aborts
/// the experiment with the run index attached.
pub fn run_experiment(
    ds: &Dataset,
    config: &DiscretizerConfig,
    exp: &ExperimentConfig,
) -> Result<ExperimentResult> {
    exp.validate()?;
    let runs: Vec<u32> = (1..=exp.runs).collect();
    let outcomes: Vec<(u32, Result<f64>)> = if exp.parallel {
        runs.par_iter()
            .map(|&r| (r, run_once(ds, config, exp, r)))
            .collect()
    } else {
        runs.iter()
            .map(|&r| (r, run_once(ds, config, exp, r)))
            .collect()
    };
    let mut accuracies = Vec::with_capacity(outcomes.len());
    for (r, outcome) in outcomes {
        accuracies.push(outcome.map_err(|e| with_run_context(e, r))?);
    }
    let (mean, sd) = mean_sd(&accuracies);
    Ok(ExperimentResult {
        accuracies,
        mean,
        sd,
    })
}

/// A dataset as handed to [`compare`]: either loaded, or a loading failure
/// to be reported in that dataset's cells.
#[derive(Debug, Clone)]
pub enum DatasetSource {
    Ready(Dataset),
    Failed(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportCell {
    pub dataset: String,
    pub discretizer: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sd: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_run: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub runs: u32,
    pub train_fraction: f64,
    pub master_seed: u64,
    pub classifier: String,
    pub dispersion: String,
    pub datasets: Vec<String>,
    pub discretizers: Vec<String>,
    pub cells: Vec<ReportCell>,
}

impl EvalReport {
    pub fn cell(&self, dataset: &str, discretizer: &str) -> Option<&ReportCell> {
        self.cells
            .iter()
            .find(|c| c.dataset == dataset && c.discretizer == discretizer)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}

/// Cross product of datasets and discretizers. A failure in one cell is
/// recorded there; the rest of the table still fills in.
pub fn compare(
    datasets: &[(String, DatasetSource)],
    configs: &[DiscretizerConfig],
    exp: &ExperimentConfig,
) -> Result<EvalReport> {
    exp.validate()?;
    if configs.is_empty() {
        return Err(Error::Param("no discretizers selected".into()));
    }
    if datasets.is_empty() {
        return Err(Error::Param("no datasets selected".into()));
    }
    let mut cells = Vec::with_capacity(datasets.len() * configs.len());
    for (name, source) in datasets {
        for config in configs {
            let outcome = match source {
                DatasetSource::Failed(e) => Err(e.clone()),
                DatasetSource::Ready(ds) => {
                    run_experiment(ds, config, exp).map_err(|e| e.to_string())
                }
            };
            cells.push(match outcome {
                Ok(res) => ReportCell {
                    dataset: name.clone(),
                    discretizer: config.name().to_string(),
                    mean: Some(res.mean),
                    sd: Some(res.sd),
                    per_run: Some(res.accuracies),
                    error: None,
                },
                Err(e) => ReportCell {
                    dataset: name.clone(),
                    discretizer: config.name().to_string(),
                    mean: None,
                    sd: None,
                    per_run: None,
                    error: Some(e),
                },
            });
        }
    }
    Ok(EvalReport {
        runs: exp.runs,
        train_fraction: exp.train_fraction,
        master_seed: exp.master_seed,
        classifier: CLASSIFIER_NOTE.to_string(),
        dispersion: DISPERSION_NOTE.to_string(),
        datasets: datasets.iter().map(|(n, _)| n.clone()).collect(),
        discretizers: configs.iter().map(|c| c.name().to_string()).collect(),
        cells,
    })
}

/// Renders the report as an aligned text table: one row per dataset, one
/// column per discretizer, `mean ± sd` in each cell. Failed cells show
/// `n/a` and their errors are listed under the table.
pub fn render_report(report: &EvalReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "Accuracy, mean \u{b1} s.d. over {} runs ({:.0}% train / {:.0}% test, seed {})\n",
        report.runs,
        report.train_fraction * 100.0,
        (1.0 - report.train_fraction) * 100.0,
        report.master_seed
    ));
    out.push_str(&format!("Classifier: {}\n", report.classifier));
    out.push_str(&format!("Dispersion: {}\n\n", report.dispersion));

    let cell_text = |c: &ReportCell| match (c.mean, c.sd) {
        (Some(mean), Some(sd)) => format!("{mean:.2} \u{b1} {sd:.2}"),
        _ => "n/a".to_string(),
    };

    let mut widths: Vec<usize> = Vec::new();
    let name_width = report
        .datasets
        .iter()
        .map(|d| d.len())
        .chain(std::iter::once("dataset".len()))
        .max()
        .unwrap_or(7);
    for disc in &report.discretizers {
        let mut w = disc.len();
        for cell in report.cells.iter().filter(|c| &c.discretizer == disc) {
            w = w.max(cell_text(cell).len());
        }
        widths.push(w);
    }

    out.push_str(&format!("{:<name_width$}", "dataset"));
    for (disc, w) in report.discretizers.iter().zip(&widths) {
        out.push_str(&format!("  {disc:<w$}"));
    }
    out.push('\n');
    let total = name_width + widths.iter().map(|w| w + 2).sum::<usize>();
    out.push_str(&"-".repeat(total));
    out.push('\n');

    let mut failures: Vec<&ReportCell> = Vec::new();
    for dataset in &report.datasets {
        out.push_str(&format!("{dataset:<name_width$}"));
        for (disc, w) in report.discretizers.iter().zip(&widths) {
            let text = match report.cell(dataset, disc) {
                Some(cell) => {
                    if cell.error.is_some() {
                        failures.push(cell);
                    }
                    cell_text(cell)
                }
                None => "n/a".to_string(),
            };
            out.push_str(&format!("  {text:<w$}"));
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    }

    if !failures.is_empty() {
        out.push_str("\nfailures:\n");
        for cell in failures {
            out.push_str(&format!(
                "  {} / {}: {}\n",
                cell.dataset,
                cell.discretizer,
                cell.error.as_deref().unwrap_or("unknown")
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{AttributeSpec, Cell};
    use crate::fixtures::survival_dataset;

    /// Two well-separated value clusters, one per class: any sensible cut
    /// between them lets the tree memorize the rule, so every run scores
    /// 100 regardless of the split.
    fn separable_dataset() -> Dataset {
        let mut rows = Vec::new();
        for i in 0..30 {
            rows.push(vec![
                Cell::Number(i as f64 / 30.0),
                Cell::Code(1),
            ]);
            rows.push(vec![
                Cell::Number(10.0 + i as f64 / 30.0),
                Cell::Code(2),
            ]);
        }
        Dataset {
            attributes: vec![
                AttributeSpec::continuous("x"),
                AttributeSpec::class("label", vec!["lo".into(), "hi".into()]),
            ],
            rows,
            class_index: 1,
            dropped_rows: 0,
        }
    }

    fn quick_exp() -> ExperimentConfig {
        ExperimentConfig {
            runs: 8,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn defaults_match_the_protocol() {
        let exp = ExperimentConfig::default();
        assert_eq!(exp.runs, 50);
        assert_eq!(exp.train_fraction, 0.30);
    }

    #[test]
    fn separable_data_scores_a_perfect_hundred_every_run() {
        let ds = separable_dataset();
        let exp = quick_exp();
        for config in [
            DiscretizerConfig::Mil(Default::default()),
            DiscretizerConfig::ModifiedMil(Default::default()),
            DiscretizerConfig::EqualWidth { bins: 4, seed: 0 },
            DiscretizerConfig::EqualFrequency { bins: 4, seed: 0 },
            DiscretizerConfig::Mdlp { seed: 0 },
        ] {
            let res = run_experiment(&ds, &config, &exp).unwrap();
            assert_eq!(res.mean, 100.0, "{}", config.name());
            assert_eq!(res.sd, 0.0, "{}", config.name());
            assert_eq!(res.accuracies.len(), 8);
        }
    }

    #[test]
    fn mean_and_sd_are_population_statistics() {
        let (mean, sd) = mean_sd(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(mean, 2.5);
        assert!((sd - 1.25f64.sqrt()).abs() < 1e-12);
        let (mean, sd) = mean_sd(&[7.0]);
        assert_eq!(mean, 7.0);
        assert_eq!(sd, 0.0);
    }

    #[test]
    fn experiments_are_deterministic_and_parallel_matches_serial() {
        let ds = survival_dataset();
        let config = DiscretizerConfig::ModifiedMil(Default::default());
        let serial = quick_exp();
        let parallel = ExperimentConfig {
            parallel: true,
            ..serial
        };
        let a = run_experiment(&ds, &config, &serial).unwrap();
        let b = run_experiment(&ds, &config, &serial).unwrap();
        let c = run_experiment(&ds, &config, &parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn adding_runs_never_changes_earlier_runs() {
        let ds = survival_dataset();
        let config = DiscretizerConfig::Mil(Default::default());
        let short = run_experiment(&ds, &config, &quick_exp()).unwrap();
        let long = run_experiment(
            &ds,
            &config,
            &ExperimentConfig {
                runs: 12,
                ..quick_exp()
            },
        )
        .unwrap();
        assert_eq!(short.accuracies[..], long.accuracies[..8]);
    }

    #[test]
    fn failures_carry_the_run_index() {
        let ds = separable_dataset();
        let config = DiscretizerConfig::EqualWidth { bins: 0, seed: 0 };
        let err = run_experiment(&ds, &config, &quick_exp()).unwrap_err();
        assert!(matches!(err, Error::Param(_)));
        assert!(
            err.to_string().contains("run 1:"),
            "message was: {err}"
        );
    }

    #[test]
    fn bad_experiment_parameters_are_rejected() {
        let ds = separable_dataset();
        let config = DiscretizerConfig::Mil(Default::default());
        for exp in [
            ExperimentConfig {
                runs: 0,
                ..Default::default()
            },
            ExperimentConfig {
                train_fraction: 0.0,
                ..Default::default()
            },
            ExperimentConfig {
                train_fraction: 1.0,
                ..Default::default()
            },
        ] {
            assert!(matches!(
                run_experiment(&ds, &config, &exp),
                Err(Error::Param(_))
            ));
        }
    }

    #[test]
    fn schemes_come_from_the_train_half_alone() {
        let ds = survival_dataset();
        let config = DiscretizerConfig::Mil(Default::default());
        let exp = quick_exp();
        let (split, fit) = fit_run(&ds, &config, &exp, 3).unwrap();

        // Refit independently on the train half: identical schemes.
        let seed = mix2(run_seed(&exp, 3), FIT_SALT);
        let refit =
            discretize_dataset(&split.train, &config.clone().with_seed(seed), false).unwrap();
        assert_eq!(fit.schemes, refit.schemes);

        // Perturbing a held-out row's measurements leaves the fit unchanged.
        let mut tampered = ds.clone();
        let target = &split.test.rows[0];
        let pos = tampered.rows.iter().position(|r| r == target).unwrap();
        tampered.rows[pos][0] = Cell::Number(9_999.0);
        let (_, fit2) = fit_run(&tampered, &config, &exp, 3).unwrap();
        assert_eq!(fit.schemes, fit2.schemes);
    }

    #[test]
    fn compare_fills_every_cell_and_tolerates_failures() {
        let ds = separable_dataset();
        let datasets = vec![
            ("separable".to_string(), DatasetSource::Ready(ds)),
            (
                "ghost".to_string(),
                DatasetSource::Failed("file not found".to_string()),
            ),
        ];
        let configs = vec![
            DiscretizerConfig::Mil(Default::default()),
            DiscretizerConfig::EqualWidth { bins: 0, seed: 0 },
        ];
        let report = compare(&datasets, &configs, &quick_exp()).unwrap();
        assert_eq!(report.cells.len(), 4);

        let good = report.cell("separable", "mil").unwrap();
        assert_eq!(good.mean, Some(100.0));
        assert_eq!(good.per_run.as_ref().unwrap().len(), 8);

        let bins = report.cell("separable", "equal-width").unwrap();
        assert!(bins.error.as_ref().unwrap().contains("run 1"));

        let ghost = report.cell("ghost", "mil").unwrap();
        assert_eq!(ghost.error.as_deref(), Some("file not found"));

        let text = render_report(&report);
        assert!(text.contains("dataset"));
        assert!(text.contains("100.00 \u{b1} 0.00"));
        assert!(text.contains("n/a"));
        assert!(text.contains("failures:"));
        assert!(text.contains("ghost / mil: file not found"));
        assert!(text.contains("substituted for the original study's classifier"));
        assert!(text.contains("population standard deviation"));

        let json = report.to_json();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["runs"], 8);
        assert_eq!(parsed["cells"][0]["dataset"], "separable");
        assert!(parsed["cells"][0]["per_run"].is_array());
    }

    #[test]
    fn compare_refuses_empty_selections() {
        let ds = separable_dataset();
        let datasets = vec![("d".to_string(), DatasetSource::Ready(ds))];
        assert!(matches!(
            compare(&datasets, &[], &quick_exp()),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            compare(
                &[],
                &[DiscretizerConfig::Mil(Default::default())],
                &quick_exp()
            ),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn all_missing_attributes_are_dropped_consistently() {
        // One attribute is informative, the other is entirely missing; the
        // harness must drop the dead column from both halves and still work.
        let mut ds = separable_dataset();
        ds.attributes.insert(1, AttributeSpec::continuous("dead"));
        ds.class_index = 2;
        for row in &mut ds.rows {
            row.insert(1, Cell::Missing);
        }
        let config = DiscretizerConfig::Mil(Default::default());
        let res = run_experiment(&ds, &config, &quick_exp()).unwrap();
        assert_eq!(res.mean, 100.0);
    }
}
