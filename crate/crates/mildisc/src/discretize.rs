//! Dataset-level discretization: fits one scheme per continuous attribute
//! with any of the five discretizers, rewrites the columns as ordinal
//! labels, and applies stored schemes to new data.
//!
//! All discretizers run on identical inputs: columns are completed with the
//! same imputation before fitting, so algorithm comparisons measure the
//! binning strategy rather than missing-value handling. Per-attribute work
//! is independent and deterministically seeded, which makes the optional
//! parallel mode produce byte-identical results to the serial one.

use rayon::prelude::*;

use crate::baselines;
use crate::dataset::{column_stats, AttrKind, AttributeSpec, Cell, Dataset};
use crate::error::{Error, Result};
use crate::mil::{self, InitialPartition, MilParams};
use crate::scheme::{
    apply_scheme, validate_scheme, Algorithm, AttributeScheme, Region, SchemeParams,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiscretizerConfig {
    Mil(MilParams),
    ModifiedMil(MilParams),
    EqualWidth { bins: u32, seed: u64 },
    EqualFrequency { bins: u32, seed: u64 },
    Mdlp { seed: u64 },
}

impl DiscretizerConfig {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            DiscretizerConfig::Mil(_) => Algorithm::Mil,
            DiscretizerConfig::ModifiedMil(_) => Algorithm::ModifiedMil,
            DiscretizerConfig::EqualWidth { .. } => Algorithm::EqualWidth,
            DiscretizerConfig::EqualFrequency { .. } => Algorithm::EqualFrequency,
            DiscretizerConfig::Mdlp { .. } => Algorithm::Mdlp,
        }
    }

    pub fn name(&self) -> &'static str {
        self.algorithm().name()
    }

    pub fn seed(&self) -> u64 {
        match self {
            DiscretizerConfig::Mil(p) | DiscretizerConfig::ModifiedMil(p) => p.seed,
            DiscretizerConfig::EqualWidth { seed, .. }
            | DiscretizerConfig::EqualFrequency { seed, .. }
            | DiscretizerConfig::Mdlp { seed } => *seed,
        }
    }

    /// Same configuration with a different seed; the evaluation harness
    /// uses this to give every run its own derived seed.
    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            DiscretizerConfig::Mil(p) => DiscretizerConfig::Mil(MilParams { seed, ..p }),
            DiscretizerConfig::ModifiedMil(p) => {
                DiscretizerConfig::ModifiedMil(MilParams { seed, ..p })
            }
            DiscretizerConfig::EqualWidth { bins, .. } => {
                DiscretizerConfig::EqualWidth { bins, seed }
            }
            DiscretizerConfig::EqualFrequency { bins, .. } => {
                DiscretizerConfig::EqualFrequency { bins, seed }
            }
            DiscretizerConfig::Mdlp { .. } => DiscretizerConfig::Mdlp { seed },
        }
    }

    /// Builds a config from an algorithm tag plus the generic knobs.
    pub fn from_parts(algorithm: Algorithm, c: u32, k: u32, bins: u32, seed: u64) -> Self {
        match algorithm {
            Algorithm::Mil => DiscretizerConfig::Mil(MilParams { c, k, seed }),
            Algorithm::ModifiedMil => DiscretizerConfig::ModifiedMil(MilParams { c, k, seed }),
            Algorithm::EqualWidth => DiscretizerConfig::EqualWidth { bins, seed },
            Algorithm::EqualFrequency => DiscretizerConfig::EqualFrequency { bins, seed },
            Algorithm::Mdlp => DiscretizerConfig::Mdlp { seed },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetDiscretization {
    pub schemes: Vec<AttributeScheme>,
    /// The input dataset with continuous attributes rewritten as ordinal
    /// labels. Attributes that could not be fitted are removed.
    pub dataset: Dataset,
    /// Names of continuous attributes skipped because every value was
    /// missing.
    pub skipped: Vec<String>,
}

fn labeled_spec(name: &str, region_count: usize) -> AttributeSpec {
    AttributeSpec {
        name: name.to_string(),
        kind: AttrKind::Nominal,
        values: (1..=region_count).map(|l| l.to_string()).collect(),
    }
}

/// Completes a column with the shared imputation, without building a grid:
/// only the range and the example count matter for the draw.
fn complete_column(column: &[Option<f64>], seed: u64, attr_salt: u64) -> Result<Vec<f64>> {
    let stats = column_stats(column)
        .ok_or_else(|| Error::Unusable("attribute has no non-missing values".into()))?;
    let part = InitialPartition {
        d_min: stats.min,
        d_max: stats.max,
        n: 1,
        h: stats.max - stats.min,
        m: column.len(),
    };
    Ok(mil::impute_for_dataset(column, &part, seed, attr_salt))
}

fn fit_regions_from(fit: baselines::FittedRegions) -> (f64, f64, Vec<Region>) {
    (fit.d_min, fit.d_max, fit.regions)
}

/// Fits one attribute and returns its scheme plus the per-row labels.
fn fit_attribute(
    ds: &Dataset,
    attr_index: usize,
    config: &DiscretizerConfig,
) -> Result<(AttributeScheme, Vec<u32>)> {
    let name = ds.attributes[attr_index].name.clone();
    let column = ds.column(attr_index)?;
    let class_count = ds.class_count();
    let salt = attr_index as u64;

    match config {
        DiscretizerConfig::Mil(params) | DiscretizerConfig::ModifiedMil(params) => {
            let out = mil::pipeline(
                &column,
                class_count,
                params,
                &name,
                config.algorithm(),
                salt,
            )?;
            Ok((out.scheme, out.labels))
        }
        DiscretizerConfig::EqualWidth { bins, seed }
        | DiscretizerConfig::EqualFrequency { bins, seed } => {
            let completed = complete_column(&column, *seed, salt)?;
            let wrapped: Vec<Option<f64>> = completed.iter().map(|&v| Some(v)).collect();
            let fit = match config {
                DiscretizerConfig::EqualWidth { .. } => baselines::equal_width(&wrapped, *bins)?,
                _ => baselines::equal_frequency(&wrapped, *bins)?,
            };
            let (d_min, d_max, regions) = fit_regions_from(fit);
            let scheme = AttributeScheme {
                attribute: name,
                algorithm: config.algorithm(),
                params: SchemeParams::Binned {
                    bins: *bins,
                    seed: *seed,
                },
                d_min,
                d_max,
                regions,
            };
            validate_scheme(&scheme)?;
            let labels = completed
                .iter()
                .map(|&v| apply_scheme(&scheme, Some(v)))
                .collect();
            Ok((scheme, labels))
        }
        DiscretizerConfig::Mdlp { seed } => {
            let completed = complete_column(&column, *seed, salt)?;
            let fit = baselines::mdlp(&completed, &ds.class_codes())?;
            let (d_min, d_max, regions) = fit_regions_from(fit);
            let scheme = AttributeScheme {
                attribute: name,
                algorithm: Algorithm::Mdlp,
                params: SchemeParams::Seeded { seed: *seed },
                d_min,
                d_max,
                regions,
            };
            validate_scheme(&scheme)?;
            let labels = completed
                .iter()
                .map(|&v| apply_scheme(&scheme, Some(v)))
                .collect();
            Ok((scheme, labels))
        }
    }
}

/// Discretizes every continuous attribute of a dataset.
pub fn discretize_dataset(
    ds: &Dataset,
    config: &DiscretizerConfig,
    parallel: bool,
) -> Result<DatasetDiscretization> {
    ds.validate()?;
    let targets = ds.continuous_attribute_indices();

    // All-missing columns cannot be fitted; they are dropped with a note.
    let mut skipped = Vec::new();
    let mut usable = Vec::new();
    for &i in &targets {
        let column = ds.column(i)?;
        if column_stats(&column).is_none() {
            skipped.push(ds.attributes[i].name.clone());
        } else {
            usable.push(i);
        }
    }

    let fit_one = |&i: &usize| fit_attribute(ds, i, config).map(|r| (i, r));
    let fitted: Result<Vec<(usize, (AttributeScheme, Vec<u32>))>> = if parallel {
        usable.par_iter().map(fit_one).collect()
    } else {
        usable.iter().map(fit_one).collect()
    };
    let mut fitted = fitted?;
    fitted.sort_by_key(|(i, _)| *i);

    let mut schemes = Vec::with_capacity(fitted.len());
    let mut by_index: Vec<Option<(AttributeScheme, Vec<u32>)>> =
        (0..ds.attributes.len()).map(|_| None).collect();
    for (i, pair) in fitted {
        schemes.push(pair.0.clone());
        by_index[i] = Some(pair);
    }

    let mut attributes = Vec::new();
    let mut keep: Vec<usize> = Vec::new();
    for (i, spec) in ds.attributes.iter().enumerate() {
        if skipped.contains(&spec.name) {
            continue;
        }
        keep.push(i);
        match &by_index[i] {
            Some((scheme, _)) => attributes.push(labeled_spec(&spec.name, scheme.regions.len())),
            None => attributes.push(spec.clone()),
        }
    }
    let class_index = keep
        .iter()
        .position(|&i| i == ds.class_index)
        .ok_or_else(|| Error::Internal("class attribute vanished".into()))?;

    let rows: Vec<Vec<Cell>> = ds
        .rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            keep.iter()
                .map(|&i| match &by_index[i] {
                    Some((_, labels)) => Cell::Code(labels[r]),
                    None => row[i],
                })
                .collect()
        })
        .collect();

    let dataset = Dataset {
        attributes,
        rows,
        class_index,
        dropped_rows: ds.dropped_rows,
    };
    dataset.validate()?;
    Ok(DatasetDiscretization {
        schemes,
        dataset,
        skipped,
    })
}

/// Counters from applying schemes to a dataset.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ApplyStats {
    /// Missing cells mapped to the first region.
    pub missing_mapped: usize,
    /// Values below the fitted minimum, mapped to the first region.
    pub below_range: usize,
    /// Values at or above the last region's lower bound that exceed d_max.
    pub above_range: usize,
}

/// Applies stored schemes to a dataset by attribute name.
///
/// Every scheme must match a continuous attribute; mismatches are listed in
/// one error. Attributes without a scheme pass through unchanged.
pub fn apply_schemes(ds: &Dataset, schemes: &[AttributeScheme]) -> Result<(Dataset, ApplyStats)> {
    ds.validate()?;
    let mut problems = Vec::new();
    let mut plan: Vec<(usize, &AttributeScheme)> = Vec::new();
    for scheme in schemes {
        match ds.attribute_index(&scheme.attribute) {
            None => problems.push(format!("`{}` is not in the dataset", scheme.attribute)),
            Some(i) if ds.attributes[i].kind != AttrKind::Continuous => {
                problems.push(format!("`{}` is not continuous", scheme.attribute))
            }
            Some(i) => {
                if plan.iter().any(|(j, _)| *j == i) {
                    problems.push(format!("duplicate scheme for `{}`", scheme.attribute));
                } else {
                    plan.push((i, scheme));
                }
            }
        }
    }
    if !problems.is_empty() {
        return Err(Error::Mismatch(problems.join("; ")));
    }

    let mut stats = ApplyStats::default();
    let mut attributes = ds.attributes.clone();
    let mut rows = ds.rows.clone();
    for (i, scheme) in plan {
        validate_scheme(scheme)?;
        attributes[i] = labeled_spec(&scheme.attribute, scheme.regions.len());
        for row in rows.iter_mut() {
            let value = match row[i] {
                Cell::Number(x) => Some(x),
                Cell::Missing => None,
                Cell::Code(_) => unreachable!("validated continuous column"),
            };
            match value {
                None => stats.missing_mapped += 1,
                Some(v) if v < scheme.d_min => stats.below_range += 1,
                Some(v) if v > scheme.d_max => stats.above_range += 1,
                _ => {}
            }
            row[i] = Cell::Code(apply_scheme(scheme, value));
        }
    }

    let out = Dataset {
        attributes,
        rows,
        class_index: ds.class_index,
        dropped_rows: ds.dropped_rows,
    };
    out.validate()?;
    Ok((out, stats))
}
