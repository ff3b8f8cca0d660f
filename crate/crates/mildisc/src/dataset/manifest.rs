//! Dataset manifests: a JSON index of named datasets used by the batch
//! evaluation commands. Entry paths are resolved relative to the manifest
//! file itself, so a manifest can travel with its data directory.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dataset::split::stratified_split;
use crate::dataset::{arff, csv, Dataset};
use crate::error::{Error, Result};

/// Fixed seed for manifest-driven subsampling, so a capped dataset is the
/// same rows in every run and process.
const SUBSAMPLE_SEED: u64 = 0x5AB5;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub datasets: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub path: String,
    /// "csv" or "arff"; inferred from the file extension when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    /// Class column override for CSV files (0-based).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_index: Option<usize>,
    /// Advisory row count; a mismatch produces a warning, not an error.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_examples: Option<usize>,
    /// Advisory class count; a mismatch produces a warning, not an error.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_classes: Option<usize>,
    /// Cap on rows; larger datasets are stratified-sampled down to this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subsample: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

#[derive(Debug, Clone)]
pub struct LoadedDataset {
    pub name: String,
    pub dataset: Dataset,
    pub warnings: Vec<String>,
}

pub fn load_manifest(path: impl AsRef<Path>) -> Result<Manifest> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.into(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.into(),
        msg: e.to_string(),
    })
}

/// Loads one manifest entry; `manifest_dir` anchors relative paths.
pub fn load_entry(manifest_dir: &Path, entry: &ManifestEntry) -> Result<LoadedDataset> {
    let data_path: PathBuf = {
        let p = Path::new(&entry.path);
        if p.is_absolute() {
            p.into()
        } else {
            manifest_dir.join(p)
        }
    };

    let format = match &entry.format {
        Some(f) => f.to_ascii_lowercase(),
        None => match data_path.extension().and_then(|e| e.to_str()) {
            Some(ext) => ext.to_ascii_lowercase(),
            None => {
                return Err(Error::Param(format!(
                    "dataset `{}`: cannot infer format of `{}`; set \"format\"",
                    entry.name, entry.path
                )))
            }
        },
    };

    let mut dataset = match format.as_str() {
        "csv" => {
            let options = csv::CsvOptions {
                class_index: entry.class_index,
                kinds: Vec::new(),
            };
            csv::read_csv_with(&data_path, &options)?
        }
        "arff" => arff::read_arff(&data_path)?,
        other => {
            return Err(Error::Param(format!(
                "dataset `{}`: unsupported format `{other}`",
                entry.name
            )))
        }
    };

    let mut warnings = Vec::new();
    if dataset.dropped_rows > 0 {
        warnings.push(format!(
            "{} rows dropped for missing class values",
            dataset.dropped_rows
        ));
    }
    if let Some(expected) = entry.expected_examples {
        let found = dataset.example_count();
        if found != expected {
            warnings.push(format!("expected {expected} examples, found {found}"));
        }
    }
    if let Some(expected) = entry.expected_classes {
        let found = dataset.class_count();
        if found != expected {
            warnings.push(format!("expected {expected} class values, found {found}"));
        }
    }

    if let Some(cap) = entry.subsample {
        if cap == 0 {
            return Err(Error::Param(format!(
                "dataset `{}`: subsample must be at least 1",
                entry.name
            )));
        }
        let m = dataset.example_count();
        if m > cap {
            let fraction = cap as f64 / m as f64;
            dataset = stratified_split(&dataset, fraction, SUBSAMPLE_SEED)?.train;
            warnings.push(format!(
                "subsampled from {m} to {} rows (stratified, fixed seed)",
                dataset.example_count()
            ));
        }
    }

    Ok(LoadedDataset {
        name: entry.name.clone(),
        dataset,
        warnings,
    })
}
