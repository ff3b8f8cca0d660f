//! Classic discretizers used as comparison points: equal-width binning,
//! equal-frequency binning, and recursive entropy splitting with an MDL
//! stopping criterion.
//!
//! All three emit the same region shape as the merge-based discretizers:
//! contiguous half-open regions from d_min with an open-ended top. Missing
//! values are skipped when fitting; the dataset-level pipeline imputes
//! columns first so that every discretizer sees identical inputs.

use crate::dataset::column_stats;
use crate::error::{Error, Result};
use crate::scheme::Region;

/// A fitted region list plus the range it was fitted on.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedRegions {
    pub d_min: f64,
    pub d_max: f64,
    pub regions: Vec<Region>,
}

fn present(values: &[Option<f64>]) -> Vec<f64> {
    values.iter().filter_map(|v| *v).collect()
}

/// Builds labeled regions from ascending interior cut points and counts the
/// training values each region holds.
fn regions_from_cuts(d_min: f64, cuts: &[f64], sorted_values: &[f64]) -> Vec<Region> {
    let mut bounds = Vec::with_capacity(cuts.len() + 1);
    bounds.push(d_min);
    bounds.extend_from_slice(cuts);
    let mut regions = Vec::with_capacity(bounds.len());
    for (i, &lower) in bounds.iter().enumerate() {
        let upper = bounds.get(i + 1).copied().unwrap_or(f64::INFINITY);
        let from = sorted_values.partition_point(|&v| v < lower);
        let to = sorted_values.partition_point(|&v| v < upper);
        regions.push(Region {
            lower,
            upper,
            label: (i + 1) as u32,
            total_cts: (to - from) as u64,
            span: 1,
            midpoint: None,
        });
    }
    regions
}

pub fn equal_width(values: &[Option<f64>], bins: u32) -> Result<FittedRegions> {
    if bins < 1 {
        return Err(Error::Param("bins must be at least 1".into()));
    }
    let stats = column_stats(values)
        .ok_or_else(|| Error::Unusable("attribute has no non-missing values".into()))?;
    let mut sorted = present(values);
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let width = (stats.max - stats.min) / bins as f64;
    let mut cuts = Vec::new();
    if width > 0.0 {
        for j in 1..bins {
            let cut = stats.min + j as f64 * width;
            if cut > stats.min && Some(&cut) != cuts.last() {
                cuts.push(cut);
            }
        }
    }
    Ok(FittedRegions {
        d_min: stats.min,
        d_max: stats.max,
        regions: regions_from_cuts(stats.min, &cuts, &sorted),
    })
}

pub fn equal_frequency(values: &[Option<f64>], bins: u32) -> Result<FittedRegions> {
    if bins < 1 {
        return Err(Error::Param("bins must be at least 1".into()));
    }
    let stats = column_stats(values)
        .ok_or_else(|| Error::Unusable("attribute has no non-missing values".into()))?;
    let mut sorted = present(values);
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let count = sorted.len();

    // Quantile cut j sits midway between the two values straddling rank
    // j*count/bins. Cuts that would leave a region with no training values
    // collapse into their neighbor.
    let mut cuts: Vec<f64> = Vec::new();
    let mut prev_bound = stats.min;
    for j in 1..bins {
        let p = (j as usize * count) / bins as usize;
        if p == 0 || p >= count {
            continue;
        }
        let cut = (sorted[p - 1] + sorted[p]) / 2.0;
        if cut <= prev_bound {
            continue;
        }
        let occupied = sorted[sorted.partition_point(|&v| v < prev_bound)..]
            .iter()
            .take_while(|&&v| v < cut)
            .next()
            .is_some();
        if occupied {
            cuts.push(cut);
            prev_bound = cut;
        }
    }
    Ok(FittedRegions {
        d_min: stats.min,
        d_max: stats.max,
        regions: regions_from_cuts(stats.min, &cuts, &sorted),
    })
}

/// Shannon entropy (base 2) of a class-count table.
fn entropy(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let total = total as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum()
}

fn distinct(counts: &[u64]) -> u32 {
    counts.iter().filter(|&&c| c > 0).count() as u32
}

/// The MDL acceptance bound: a split of an N-example node is kept only if
/// its information gain exceeds (log2(N-1) + delta) / N, where delta =
/// log2(3^k - 2) - (k*ent - k1*ent1 - k2*ent2).
pub(crate) fn mdl_threshold(
    n: f64,
    k: u32,
    ent: f64,
    k1: u32,
    ent1: f64,
    k2: u32,
    ent2: f64,
) -> f64 {
    let delta = (3f64.powi(k as i32) - 2.0).log2()
        - (k as f64 * ent - k1 as f64 * ent1 - k2 as f64 * ent2);
    ((n - 1.0).log2() + delta) / n
}

pub fn mdlp(values: &[f64], class_labels: &[u32]) -> Result<FittedRegions> {
    if values.len() != class_labels.len() {
        return Err(Error::Param(format!(
            "values ({}) and class labels ({}) are not aligned",
            values.len(),
            class_labels.len()
        )));
    }
    if values.is_empty() {
        return Err(Error::Unusable("attribute column is empty".into()));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::Param(format!("non-finite value {bad} in column")));
    }

    let mut pairs: Vec<(f64, u32)> = values
        .iter()
        .copied()
        .zip(class_labels.iter().copied())
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));

    let max_class = pairs.iter().map(|&(_, c)| c).max().unwrap_or(1) as usize;
    let mut cuts = Vec::new();
    split_recursive(&pairs, max_class, &mut cuts);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let sorted: Vec<f64> = pairs.iter().map(|&(v, _)| v).collect();
    let d_min = sorted[0];
    let d_max = sorted[sorted.len() - 1];
    Ok(FittedRegions {
        d_min,
        d_max,
        regions: regions_from_cuts(d_min, &cuts, &sorted),
    })
}

/// One recursion step over a sorted slice: find the best class-boundary
/// cut, keep it if the MDL criterion accepts, and recurse into both sides.
fn split_recursive(pairs: &[(f64, u32)], max_class: usize, cuts: &mut Vec<f64>) {
    let n = pairs.len();
    if n < 2 {
        return;
    }
    let mut total = vec![0u64; max_class + 1];
    for &(_, c) in pairs {
        total[c as usize] += 1;
    }
    let ent_s = entropy(&total);
    let k = distinct(&total);
    if k < 2 {
        return;
    }

    // A position qualifies as a cut candidate only if the value changes
    // there and the two value-runs around it are not both pure with the
    // same class (no information can be gained from such a cut).
    let mut best: Option<(f64, usize, f64)> = None; // (gain, position, cut)
    let mut left = vec![0u64; max_class + 1];
    let mut run_pure: Option<u32> = Some(pairs[0].1);
    for p in 1..n {
        left[pairs[p - 1].1 as usize] += 1;
        if pairs[p].0 == pairs[p - 1].0 {
            if run_pure != Some(pairs[p].1) {
                run_pure = None;
            }
            continue;
        }
        // Value run [run_start..p) ends here; peek at the next run.
        let next_run_end = (p..n)
            .find(|&q| pairs[q].0 != pairs[p].0)
            .unwrap_or(n);
        let next_pure = pairs[p..next_run_end]
            .iter()
            .all(|&(_, c)| c == pairs[p].1)
            .then_some(pairs[p].1);
        let boundary = match (run_pure, next_pure) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        };
        run_pure = Some(pairs[p].1);
        if !boundary {
            continue;
        }
        let right: Vec<u64> = total
            .iter()
            .zip(&left)
            .map(|(t, l)| t - l)
            .collect();
        let n1 = p as f64;
        let n2 = (n - p) as f64;
        let gain =
            ent_s - (n1 / n as f64) * entropy(&left) - (n2 / n as f64) * entropy(&right);
        let better = match best {
            None => true,
            Some((g, _, _)) => gain > g,
        };
        if better {
            let cut = (pairs[p - 1].0 + pairs[p].0) / 2.0;
            best = Some((gain, p, cut));
        }
    }

    let (gain, pos, cut) = match best {
        Some(b) => b,
        None => return,
    };
    let mut left = vec![0u64; max_class + 1];
    for &(_, c) in &pairs[..pos] {
        left[c as usize] += 1;
    }
    let right: Vec<u64> = total.iter().zip(&left).map(|(t, l)| t - l).collect();
    let threshold = mdl_threshold(
        n as f64,
        k,
        ent_s,
        distinct(&left),
        entropy(&left),
        distinct(&right),
        entropy(&right),
    );
    if gain <= threshold {
        return;
    }
    cuts.push(cut);
    split_recursive(&pairs[..pos], max_class, cuts);
    split_recursive(&pairs[pos..], max_class, cuts);
}
