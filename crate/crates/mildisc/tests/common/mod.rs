//! Reference implementations used only for cross-checking.
//!
//! Everything here is written as plain step-by-step loops, deliberately
//! structured differently from the library code (linear scans instead of
//! binary search, explicit counters instead of iterator pipelines), so the
//! two can disagree if either one drifts. The normalization decisions are
//! shared: exact integer ceilings for the merge threshold, half-open bins
//! except the top one, lower-clamped binning, TS frozen during similarity
//! merges, and an unbounded final region.

/// One merged region in bin coordinates: 1-based inclusive bin range plus
/// the number of training values it holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinRegion {
    pub first_bin: usize,
    pub last_bin: usize,
    pub tot: u64,
}

/// Grid parameters: smallest value, largest value, bin count (capped at
/// m - 1), and bin width.
pub fn reference_grid(values: &[f64], class_count: usize, c: u32) -> (f64, f64, usize, f64) {
    let mut d_min = values[0];
    let mut d_max = values[0];
    for &v in values {
        if v < d_min {
            d_min = v;
        }
        if v > d_max {
            d_max = v;
        }
    }
    let cap = if values.len() > 1 { values.len() - 1 } else { 1 };
    let mut n = c as usize * class_count;
    if n > cap {
        n = cap;
    }
    if n < 1 {
        n = 1;
    }
    let h = (d_max - d_min) / n as f64;
    (d_min, d_max, n, h)
}

/// 1-based bin of one value: clamp to the ends, otherwise take the first
/// boundary the value falls below.
pub fn reference_bin(v: f64, d_min: f64, d_max: f64, n: usize, h: f64) -> usize {
    if v >= d_max {
        return n;
    }
    if v <= d_min {
        return 1;
    }
    for j in 1..=n {
        if v < d_min + j as f64 * h {
            return j;
        }
    }
    n
}

/// Per-bin frequencies by one linear scan over the column.
pub fn reference_counts(values: &[f64], d_min: f64, d_max: f64, n: usize, h: f64) -> Vec<u64> {
    let mut counts = vec![0u64; n];
    for &v in values {
        counts[reference_bin(v, d_min, d_max, n, h) - 1] += 1;
    }
    counts
}

fn ceil_div(a: u128, b: u128) -> u128 {
    (a + b - 1) / b
}

/// The plain merge as a direct loop. A region keeps absorbing its right
/// neighbor while it holds fewer than ceil(span * m / (n * k)) values; when
/// it stops (or the bins run out) it closes and the next region starts at
/// the following bin.
pub fn reference_merge_small(counts: &[u64], m: usize, k: u32) -> Vec<BinRegion> {
    let n = counts.len();
    let mut out = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    let mut tot: u128 = counts[0] as u128;
    let mut ts_units: u128 = 1;
    loop {
        let threshold = ceil_div(ts_units * m as u128, n as u128 * k as u128);
        if tot < threshold && i + 1 < n {
            ts_units += 1;
            tot += counts[i + 1] as u128;
            i += 1;
            continue;
        }
        out.push(BinRegion {
            first_bin: start + 1,
            last_bin: i + 1,
            tot: tot as u64,
        });
        if i + 1 >= n {
            return out;
        }
        start = i + 1;
        i += 1;
        tot = counts[i] as u128;
        ts_units = 1;
    }
}

/// The modified merge as a direct loop. Two extra rules on top of the small
/// merge: adjacent bins whose raw counts agree within 25% fuse without
/// advancing the threshold, and a region that just grew by a small merge
/// may not take a similarity merge before it closes.
pub fn reference_merge_modified(counts: &[u64], m: usize, k: u32) -> Vec<BinRegion> {
    let n = counts.len();
    let mut out = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    let mut tot: u128 = counts[0] as u128;
    let mut ts_units: u128 = 1;
    let mut last_small_merge = false;
    loop {
        let threshold = ceil_div(ts_units * m as u128, n as u128 * k as u128);
        if tot < threshold && i + 1 < n {
            ts_units += 1;
            tot += counts[i + 1] as u128;
            i += 1;
            last_small_merge = true;
            continue;
        }
        let similar = i + 1 < n
            && !last_small_merge
            && 3 * counts[i + 1] <= 4 * counts[i]
            && 4 * counts[i] <= 5 * counts[i + 1];
        if similar {
            tot += counts[i + 1] as u128;
            i += 1;
            continue;
        }
        out.push(BinRegion {
            first_bin: start + 1,
            last_bin: i + 1,
            tot: tot as u64,
        });
        if i + 1 >= n {
            return out;
        }
        start = i + 1;
        i += 1;
        tot = counts[i] as u128;
        ts_units = 1;
        last_small_merge = false;
    }
}

/// Bin-coordinate view of a fitted scheme, for comparing against the
/// reference merges. Spans are cumulative left to right.
pub fn scheme_to_bin_regions(scheme: &mildisc::AttributeScheme) -> Vec<BinRegion> {
    let mut out = Vec::new();
    let mut next_first = 1usize;
    for region in &scheme.regions {
        let first_bin = next_first;
        let last_bin = first_bin + region.span as usize - 1;
        out.push(BinRegion {
            first_bin,
            last_bin,
            tot: region.total_cts,
        });
        next_first = last_bin + 1;
    }
    out
}
