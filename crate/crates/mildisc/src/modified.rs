//! Modified merge: adds a similarity rule to the standard left-to-right
//! merge so that adjacent subintervals with close frequencies fuse even
//! when the growing region already holds enough mass.
//!
//! The similarity test compares raw neighbor counts: subinterval i+1 joins
//! the region when 0.75 * counts[i+1] <= counts[i] <= 1.25 * counts[i+1].
//! It is suppressed while `last_small_merge` is set, i.e. from the first
//! under-threshold absorption until the region closes, and it does not
//! advance the expected-mass accumulator, so similarity fusions are free
//! as far as the small-merge budget goes. Each region also records a
//! representative midpoint (lower + min(upper, d_max)) / 2.

use crate::error::Result;
use crate::mil::{
    make_region, merge_threshold, pipeline, AttributeDiscretization, CtsProfile, InitialPartition,
    MilParams,
};
use crate::scheme::{Algorithm, Region};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum MergeEvent {
    /// Subinterval absorbed because the region was under threshold.
    Small { into_bin: usize },
    /// Subinterval absorbed by the similarity rule.
    Similar { into_bin: usize },
    /// Region closed, spanning these bins.
    Close { first_bin: usize, last_bin: usize },
}

/// The modified merge, returning the per-step trace alongside the regions
/// so tests can check which rule fired where.
pub(crate) fn merge_modified_traced(
    cts: &CtsProfile,
    part: &InitialPartition,
    params: &MilParams,
) -> (Vec<Region>, Vec<MergeEvent>) {
    debug_assert_eq!(cts.counts.len(), part.n);
    let n = part.n;
    let m = part.m as u64;
    let k = params.k as u64;
    let counts = &cts.counts;

    let mut regions: Vec<Region> = Vec::new();
    let mut events = Vec::new();
    let mut start = 1usize;
    // Expected mass numerator: ts = ts_num / n. Small merges add m (one
    // subinterval's worth); similarity merges leave it alone.
    let mut ts_num = m;
    let mut tot = counts[0];
    let mut last_small_merge = false;
    let mut i = 1usize;

    while i < n {
        let small = tot < merge_threshold(1, ts_num, n as u64, k);
        // 0.75 * next <= cur <= 1.25 * next, in integer arithmetic.
        let similar = !last_small_merge
            && 3 * counts[i] <= 4 * counts[i - 1]
            && 4 * counts[i - 1] <= 5 * counts[i];
        if small {
            i += 1;
            tot += counts[i - 1];
            ts_num += m;
            last_small_merge = true;
            events.push(MergeEvent::Small { into_bin: i });
        } else if similar {
            i += 1;
            tot += counts[i - 1];
            events.push(MergeEvent::Similar { into_bin: i });
        } else {
            let label = regions.len() as u32 + 1;
            regions.push(make_region(part, start, i, label, tot, true));
            events.push(MergeEvent::Close {
                first_bin: start,
                last_bin: i,
            });
            start = i + 1;
            i += 1;
            tot = counts[i - 1];
            ts_num = m;
            last_small_merge = false;
        }
    }
    let label = regions.len() as u32 + 1;
    regions.push(make_region(part, start, n, label, tot, true));
    events.push(MergeEvent::Close {
        first_bin: start,
        last_bin: n,
    });
    (regions, events)
}

pub fn merge_modified(
    cts: &CtsProfile,
    part: &InitialPartition,
    params: &MilParams,
) -> Vec<Region> {
    merge_modified_traced(cts, part, params).0
}

/// Runs the four-pass pipeline with the modified merge.
pub fn discretize_attribute_modified(
    values: &[Option<f64>],
    class_count: usize,
    params: &MilParams,
    attribute: &str,
) -> Result<AttributeDiscretization> {
    pipeline(
        values,
        class_count,
        params,
        attribute,
        Algorithm::ModifiedMil,
        0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::similarity_column;
    use crate::scheme::apply_scheme;
    use proptest::prelude::*;

    fn part_for(counts_len: usize, m: usize) -> InitialPartition {
        InitialPartition {
            d_min: 0.0,
            d_max: 1.0,
            n: counts_len,
            h: 1.0 / counts_len as f64,
            m,
        }
    }

    fn merge(counts: Vec<u64>, m: usize, k: u32) -> (Vec<Region>, Vec<MergeEvent>) {
        let part = part_for(counts.len(), m);
        let cts = CtsProfile { counts };
        let params = MilParams { c: 20, k, seed: 0 };
        merge_modified_traced(&cts, &part, &params)
    }

    #[test]
    fn similarity_band_is_inclusive_on_both_ends() {
        // counts 4 then 5: 3.75 <= 4 <= 6.25 holds, so they fuse even
        // though 4 is already at threshold (m=8, n=2, ts=4, ceil(4/3)=2).
        let (regions, events) = merge(vec![4, 5], 9, 3);
        assert_eq!(regions.len(), 1);
        assert!(matches!(events[0], MergeEvent::Similar { into_bin: 2 }));

        // Exactly 1.25x: cur=5, next=4 gives 3*4=12 <= 4*5=20 <= 5*4=20,
        // so the inclusive upper edge of the band still fuses.
        let (regions, _) = merge(vec![5, 4], 9, 3);
        assert_eq!(regions.len(), 1);

        // Outside the band: 6 vs 4 (1.5x) must not fuse.
        let (regions, _) = merge(vec![6, 4], 10, 3);
        assert_eq!(regions.len(), 2);
    }

    #[test]
    fn similarity_is_blocked_right_after_a_small_merge() {
        // m=8, n=3 -> ts_num=8, threshold ceil(8/9)=1. Bin 1 is empty, so
        // it small-merges bin 2; bins 2 and 3 are similar (4 vs 4) but the
        // guard suppresses the similarity rule until the region closes.
        let (regions, events) = merge(vec![0, 4, 4], 8, 3);
        assert_eq!(regions.len(), 2);
        assert_eq!(
            events,
            vec![
                MergeEvent::Small { into_bin: 2 },
                MergeEvent::Close {
                    first_bin: 1,
                    last_bin: 2
                },
                MergeEvent::Close {
                    first_bin: 3,
                    last_bin: 3
                },
            ]
        );
    }

    #[test]
    fn similarity_merges_chain_while_counts_stay_close() {
        // Bins 2..4 hold 4,4,4: all pairwise similar, fused into one
        // region; the spike of 20 stops the chain.
        let (regions, events) = merge(vec![2, 4, 4, 4, 20], 16, 3);
        assert_eq!(regions.len(), 3);
        let similar: Vec<_> = events
            .iter()
            .filter(|e| matches!(e, MergeEvent::Similar { .. }))
            .collect();
        assert_eq!(similar.len(), 2);
        assert_eq!(regions[1].span, 3);
    }

    #[test]
    fn alternating_sparse_and_heavy_counts_close_three_regions() {
        let (regions, _) = merge(vec![1, 100, 1, 100, 1, 100], 36, 3);
        assert_eq!(regions.len(), 3);
        for r in &regions {
            assert_eq!(r.span, 2);
        }
    }

    #[test]
    fn expected_mass_does_not_grow_on_similarity_merges() {
        // Bins: 2,2,2,9. m=15, n=4, ts_num=15, threshold ceil(15/12)=2.
        // Bin 1 holds 2 (not small). 2 vs 2 similar -> fuse, ts stays 15,
        // threshold stays 2, so bin 3 (2 vs 2) also fuses by similarity
        // rather than by the small rule.
        let (regions, events) = merge(vec![2, 2, 2, 9], 15, 3);
        assert_eq!(regions.len(), 2);
        assert!(events
            .iter()
            .take(2)
            .all(|e| matches!(e, MergeEvent::Similar { .. })));
    }

    #[test]
    fn golden_similarity_column_produces_the_worked_regions() {
        let col: Vec<Option<f64>> = similarity_column().into_iter().map(Some).collect();
        let params = MilParams::default();
        let out = discretize_attribute_modified(&col, 2, &params, "x").unwrap();

        let first = &out.scheme.regions[0];
        assert_eq!(first.lower, 0.10);
        assert_eq!(first.upper, 0.140);
        assert_eq!(first.label, 1);

        let second = &out.scheme.regions[1];
        assert_eq!(second.lower, 0.140);
        assert_eq!(second.upper, 0.20);
        assert_eq!(second.label, 2);
        assert_eq!(second.total_cts, 14); // 4 + 5 + 5

        assert_eq!(apply_scheme(&out.scheme, Some(0.15)), 2);
        assert_eq!(apply_scheme(&out.scheme, Some(0.18)), 2);
        assert_eq!(apply_scheme(&out.scheme, Some(0.10)), 1);
        assert_eq!(apply_scheme(&out.scheme, Some(0.131)), 1);
        assert_eq!(apply_scheme(&out.scheme, Some(0.12)), 1);
        assert_eq!(out.column_passes, 4);
    }

    #[test]
    fn midpoints_average_the_bounds_with_the_top_clamped_to_d_max() {
        let col: Vec<Option<f64>> = similarity_column().into_iter().map(Some).collect();
        let out =
            discretize_attribute_modified(&col, 2, &MilParams::default(), "x").unwrap();
        let regions = &out.scheme.regions;
        let first_mid = regions[0].midpoint.unwrap();
        assert!((first_mid - 0.12).abs() < 1e-12);
        let second_mid = regions[1].midpoint.unwrap();
        assert!((second_mid - 0.17).abs() < 1e-12);
        let last = regions.last().unwrap();
        let expected = (last.lower + out.scheme.d_max) / 2.0;
        assert_eq!(last.midpoint.unwrap(), expected);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn modified_regions_conserve_mass_and_tile_the_line(
            counts in prop::collection::vec(0u64..25, 1..60),
            k in 1u32..5,
        ) {
            let m: u64 = counts.iter().sum::<u64>().max(1);
            let part = part_for(counts.len(), m as usize);
            let cts = CtsProfile { counts: counts.clone() };
            let params = MilParams { c: 20, k, seed: 0 };
            let regions = merge_modified(&cts, &part, &params);

            prop_assert!(!regions.is_empty());
            prop_assert_eq!(
                regions.iter().map(|r| r.total_cts).sum::<u64>(),
                counts.iter().sum::<u64>()
            );
            prop_assert_eq!(
                regions.iter().map(|r| r.span as usize).sum::<usize>(),
                part.n
            );
            for (i, r) in regions.iter().enumerate() {
                prop_assert_eq!(r.label, i as u32 + 1);
                prop_assert!(r.midpoint.is_some());
            }
            for pair in regions.windows(2) {
                prop_assert_eq!(pair[0].upper, pair[1].lower);
            }
        }

        #[test]
        fn no_similarity_event_while_the_guard_is_up(
            counts in prop::collection::vec(0u64..25, 2..60),
            k in 1u32..5,
        ) {
            let m: u64 = counts.iter().sum::<u64>().max(1);
            let part = part_for(counts.len(), m as usize);
            let cts = CtsProfile { counts };
            let params = MilParams { c: 20, k, seed: 0 };
            let (_, events) = merge_modified_traced(&cts, &part, &params);
            let mut guard_up = false;
            for e in events {
                match e {
                    MergeEvent::Small { .. } => guard_up = true,
                    MergeEvent::Similar { .. } => prop_assert!(!guard_up),
                    MergeEvent::Close { .. } => guard_up = false,
                }
            }
        }
    }
}
