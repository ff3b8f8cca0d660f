//! Supervised discretization by minimum-information-loss merging.
//!
//! The algorithm runs in four passes over a column, each linear in the
//! number of examples m:
//!
//! 1. range scan: d_min, d_max, missing count;
//! 2. imputation: missing slots get a deterministic pseudo-random value
//!    strictly inside (d_min, d_max);
//! 3. histogram: the range is cut into n = c * s uniform subintervals
//!    (s = class count) and per-subinterval frequencies are tallied;
//! 4. labeling: every value is mapped to the label of its merged region.
//!
//! Between passes 3 and 4, adjacent subintervals are merged left to right:
//! a growing region absorbs its right neighbor while its observed mass
//! stays below ceil(expected mass / k), where the expectation grows by
//! m/n per absorbed subinterval. Merging touches only the n counters, so
//! it costs O(n) time and space.

use std::cell::Cell;

use crate::dataset::column_stats;
use crate::error::{Error, Result};
use crate::rng::{mix2, mix3, SplitMix64};
use crate::scheme::{validate_scheme, Algorithm, AttributeScheme, Region, SchemeParams};

const IMPUTE_SALT: u64 = 0x494D50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MilParams {
    /// Subintervals per class value in the initial grid.
    pub c: u32,
    /// Merge divisor: a region keeps absorbing while it holds less than
    /// ceil(expected/k) values.
    pub k: u32,
    /// Seed for the imputation draws.
    pub seed: u64,
}

impl Default for MilParams {
    fn default() -> Self {
        MilParams {
            c: 20,
            k: 3,
            seed: 0,
        }
    }
}

impl MilParams {
    pub fn validate(&self) -> Result<()> {
        if self.c < 1 {
            return Err(Error::Param(format!("c must be at least 1, got {}", self.c)));
        }
        if self.k < 1 {
            return Err(Error::Param(format!("k must be at least 1, got {}", self.k)));
        }
        Ok(())
    }
}

/// The uniform initial grid over a column's observed range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialPartition {
    pub d_min: f64,
    pub d_max: f64,
    /// Number of subintervals, clamped to [1, max(1, m - 1)].
    pub n: usize,
    /// Subinterval width (d_max - d_min) / n.
    pub h: f64,
    /// Number of examples, missing included.
    pub m: usize,
}

impl InitialPartition {
    /// Grid boundary j, for j in 0..n. All bound computations go through
    /// here so binning and region bounds agree bit for bit.
    pub fn boundary(&self, j: usize) -> f64 {
        self.d_min + j as f64 * self.h
    }

    /// Expected frequency per subinterval, m / n.
    pub fn ts_base(&self) -> f64 {
        self.m as f64 / self.n as f64
    }

    /// 1-based subinterval of a value. Subintervals are half-open except
    /// the last, which includes d_max; out-of-range values clamp to the
    /// nearest end.
    pub fn bin_index(&self, v: f64) -> usize {
        if v >= self.d_max {
            return self.n;
        }
        if v <= self.d_min {
            return 1;
        }
        let mut lo = 1usize;
        let mut hi = self.n;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if v < self.boundary(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    }
}

/// Observed per-subinterval frequencies of a completed column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CtsProfile {
    /// counts[j - 1] is the frequency of subinterval j.
    pub counts: Vec<u64>,
}

/// Read-only column handle that counts full traversals, so tests can pin
/// the number of passes the pipeline makes.
pub(crate) struct Metered<'a, T> {
    data: &'a [T],
    passes: &'a Cell<u32>,
}

impl<'a, T> Metered<'a, T> {
    pub(crate) fn new(data: &'a [T], passes: &'a Cell<u32>) -> Self {
        Metered { data, passes }
    }

    pub(crate) fn scan(&self) -> std::slice::Iter<'a, T> {
        self.passes.set(self.passes.get() + 1);
        self.data.iter()
    }

    pub(crate) fn len(&self) -> usize {
        self.data.len()
    }
}

pub fn init_partition(
    values: &[Option<f64>],
    class_count: usize,
    params: &MilParams,
) -> Result<InitialPartition> {
    let passes = Cell::new(0);
    init_partition_metered(&Metered::new(values, &passes), class_count, params)
}

fn init_partition_metered(
    values: &Metered<'_, Option<f64>>,
    class_count: usize,
    params: &MilParams,
) -> Result<InitialPartition> {
    params.validate()?;
    if class_count < 1 {
        return Err(Error::Param("class count must be at least 1".into()));
    }
    let m = values.len();
    if m == 0 {
        return Err(Error::Unusable("attribute column is empty".into()));
    }
    let collected: Vec<Option<f64>> = values.scan().copied().collect();
    let stats = column_stats(&collected)
        .ok_or_else(|| Error::Unusable("attribute has no non-missing values".into()))?;
    let requested = params.c as usize * class_count;
    let n = requested.min(m.saturating_sub(1)).max(1);
    let h = (stats.max - stats.min) / n as f64;
    Ok(InitialPartition {
        d_min: stats.min,
        d_max: stats.max,
        n,
        h,
        m,
    })
}

/// The replacement formula: d_min + ((d_max - d_min) / m) * g, where g is
/// drawn uniformly from the open interval (1, m).
pub(crate) fn replacement_value(d_min: f64, d_max: f64, m: usize, g: f64) -> f64 {
    d_min + ((d_max - d_min) / m as f64) * g
}

pub fn impute_missing(values: &[Option<f64>], part: &InitialPartition, seed: u64) -> Vec<f64> {
    let passes = Cell::new(0);
    impute_metered(&Metered::new(values, &passes), part, seed, 0)
}

/// Imputation with an attribute salt mixed in, for dataset-level callers
/// that complete several columns under one seed.
pub(crate) fn impute_for_dataset(
    values: &[Option<f64>],
    part: &InitialPartition,
    seed: u64,
    attr_salt: u64,
) -> Vec<f64> {
    let passes = Cell::new(0);
    impute_metered(&Metered::new(values, &passes), part, seed, attr_salt)
}

/// Replaces missing slots. The draw for a row depends only on
/// (seed, attr_salt, row), so results do not depend on traversal order or
/// on other columns.
fn impute_metered(
    values: &Metered<'_, Option<f64>>,
    part: &InitialPartition,
    seed: u64,
    attr_salt: u64,
) -> Vec<f64> {
    values
        .scan()
        .enumerate()
        .map(|(row, v)| match v {
            Some(x) => *x,
            None => {
                let key = mix2(mix3(seed, IMPUTE_SALT, attr_salt), row as u64);
                let g = 1.0 + SplitMix64::new(key).next_open01() * (part.m as f64 - 1.0);
                replacement_value(part.d_min, part.d_max, part.m, g)
            }
        })
        .collect()
}

pub fn compute_cts(values: &[f64], part: &InitialPartition) -> CtsProfile {
    let passes = Cell::new(0);
    compute_cts_metered(&Metered::new(values, &passes), part)
}

fn compute_cts_metered(values: &Metered<'_, f64>, part: &InitialPartition) -> CtsProfile {
    let mut counts = vec![0u64; part.n];
    for &v in values.scan() {
        counts[part.bin_index(v) - 1] += 1;
    }
    CtsProfile { counts }
}

/// ceil(span * m / (n * k)) in exact integer arithmetic: the merge
/// threshold for a region currently spanning `span` subintervals.
pub(crate) fn merge_threshold(span: u64, m: u64, n: u64, k: u64) -> u64 {
    ((span as u128 * m as u128).div_ceil(n as u128 * k as u128)) as u64
}

pub(crate) fn make_region(
    part: &InitialPartition,
    first_bin: usize,
    last_bin: usize,
    label: u32,
    total_cts: u64,
    with_midpoint: bool,
) -> Region {
    let lower = part.boundary(first_bin - 1);
    let upper = if last_bin == part.n {
        f64::INFINITY
    } else {
        part.boundary(last_bin)
    };
    let midpoint = with_midpoint.then(|| (lower + upper.min(part.d_max)) / 2.0);
    Region {
        lower,
        upper,
        label,
        total_cts,
        span: (last_bin - first_bin + 1) as u32,
        midpoint,
    }
}

/// Left-to-right merge: a region absorbs its right neighbor while its
/// observed mass is below ceil(expected/k), where the expectation is
/// span * m/n. The trailing region is emitted as-is once every
/// subinterval is consumed, and the last region's upper bound is open.
pub fn merge_mil(cts: &CtsProfile, part: &InitialPartition, params: &MilParams) -> Vec<Region> {
    debug_assert_eq!(cts.counts.len(), part.n);
    let n = part.n;
    let m = part.m as u64;
    let k = params.k as u64;
    let counts = &cts.counts;

    let mut regions = Vec::new();
    let mut start = 1usize;
    let mut span = 1u64;
    let mut tot = counts[0];
    let mut i = 1usize;
    while i < n {
        if tot < merge_threshold(span, m, n as u64, k) {
            i += 1;
            tot += counts[i - 1];
            span += 1;
        } else {
            let label = regions.len() as u32 + 1;
            regions.push(make_region(part, start, i, label, tot, false));
            start = i + 1;
            i += 1;
            tot = counts[i - 1];
            span = 1;
        }
    }
    let label = regions.len() as u32 + 1;
    regions.push(make_region(part, start, n, label, tot, false));
    regions
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributeDiscretization {
    pub scheme: AttributeScheme,
    /// Region label per input row, missing rows labeled via their imputed
    /// value.
    pub labels: Vec<u32>,
    /// Full column traversals performed; the pipeline always needs four.
    pub column_passes: u32,
}

/// Runs the four-pass pipeline with the standard merge.
pub fn discretize_attribute(
    values: &[Option<f64>],
    class_count: usize,
    params: &MilParams,
    attribute: &str,
) -> Result<AttributeDiscretization> {
    pipeline(values, class_count, params, attribute, Algorithm::Mil, 0)
}

pub(crate) fn pipeline(
    values: &[Option<f64>],
    class_count: usize,
    params: &MilParams,
    attribute: &str,
    algorithm: Algorithm,
    attr_salt: u64,
) -> Result<AttributeDiscretization> {
    let passes = Cell::new(0u32);

    let raw = Metered::new(values, &passes);
    let part = init_partition_metered(&raw, class_count, params)?;

    let completed = impute_metered(&raw, &part, params.seed, attr_salt);
    let completed_view = Metered::new(&completed, &passes);

    let cts = compute_cts_metered(&completed_view, &part);

    let regions = match algorithm {
        Algorithm::Mil => merge_mil(&cts, &part, params),
        Algorithm::ModifiedMil => crate::modified::merge_modified(&cts, &part, params),
        other => {
            return Err(Error::Internal(format!(
                "pipeline called with non-merging algorithm {other}"
            )))
        }
    };

    let scheme = AttributeScheme {
        attribute: attribute.to_string(),
        algorithm,
        params: SchemeParams::MilFamily {
            c: params.c,
            k: params.k,
            seed: params.seed,
        },
        d_min: part.d_min,
        d_max: part.d_max,
        regions,
    };
    validate_scheme(&scheme)?;

    let labels: Vec<u32> = completed_view
        .scan()
        .map(|&v| crate::scheme::apply_scheme(&scheme, Some(v)))
        .collect();

    Ok(AttributeDiscretization {
        scheme,
        labels,
        column_passes: passes.get(),
    })
}
