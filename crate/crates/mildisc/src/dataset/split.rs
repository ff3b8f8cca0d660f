//! Stratified train/test splitting.
//!
//! The train side gets `round(m * fraction)` rows overall, allocated per
//! class by largest remainder: every class contributes the floor of its
//! proportional share, and the leftover seats go to the classes with the
//! largest fractional parts (ties favor the smaller class code). Row
//! selection inside a class is uniform and fully determined by the seed,
//! and both halves keep the parent's row order.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::rng::{mix3, shuffle, SplitMix64};

const SPLIT_SALT: u64 = 0x53504C49;

#[derive(Debug, Clone)]
pub struct SplitPair {
    pub train: Dataset,
    pub test: Dataset,
    pub seed: u64,
    pub train_fraction: f64,
}

/// Largest-remainder seat allocation; `counts[i]` is the size of class code
/// `i + 1`. Returns how many training rows each class receives.
pub(crate) fn train_allocation(counts: &[usize], fraction: f64) -> Vec<usize> {
    let m: usize = counts.iter().sum();
    let target = (m as f64 * fraction).round() as usize;
    let mut alloc: Vec<usize> = Vec::with_capacity(counts.len());
    let mut fracs: Vec<(usize, f64)> = Vec::with_capacity(counts.len());
    for (i, &count) in counts.iter().enumerate() {
        let share = count as f64 * fraction;
        let base = share.floor() as usize;
        alloc.push(base);
        fracs.push((i, share - share.floor()));
    }
    let assigned: usize = alloc.iter().sum();
    let mut need = target.saturating_sub(assigned);
    // Descending fractional part, smaller class code first on ties.
    fracs.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    for (i, _) in fracs {
        if need == 0 {
            break;
        }
        if alloc[i] < counts[i] {
            alloc[i] += 1;
            need -= 1;
        }
    }
    alloc
}

pub fn stratified_split(ds: &Dataset, train_fraction: f64, seed: u64) -> Result<SplitPair> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::Param(format!(
            "train fraction must be strictly between 0 and 1, got {train_fraction}"
        )));
    }
    if ds.rows.is_empty() {
        return Err(Error::EmptyDataset);
    }

    let groups = ds.rows_by_class();
    let counts: Vec<usize> = groups.iter().map(|g| g.len()).collect();
    let alloc = train_allocation(&counts, train_fraction);

    let mut in_train = vec![false; ds.rows.len()];
    for (class_idx, group) in groups.iter().enumerate() {
        if group.is_empty() || alloc[class_idx] == 0 {
            continue;
        }
        let mut order = group.clone();
        let mut rng = SplitMix64::new(mix3(seed, SPLIT_SALT, (class_idx + 1) as u64));
        shuffle(&mut order, &mut rng);
        for &row in order.iter().take(alloc[class_idx]) {
            in_train[row] = true;
        }
    }

    let pick = |keep: bool| Dataset {
        attributes: ds.attributes.clone(),
        rows: ds
            .rows
            .iter()
            .enumerate()
            .filter(|(r, _)| in_train[*r] == keep)
            .map(|(_, row)| row.clone())
            .collect(),
        class_index: ds.class_index,
        dropped_rows: 0,
    };

    Ok(SplitPair {
        train: pick(true),
        test: pick(false),
        seed,
        train_fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{AttributeSpec, Cell};
    use proptest::prelude::*;

    fn labeled(counts: &[usize]) -> Dataset {
        let values = (1..=counts.len()).map(|i| format!("c{i}")).collect();
        let mut rows = Vec::new();
        // Interleave classes so row order does not follow class order.
        let mut remaining: Vec<usize> = counts.to_vec();
        let mut x = 0.0;
        while remaining.iter().any(|&r| r > 0) {
            for (i, r) in remaining.iter_mut().enumerate() {
                if *r > 0 {
                    rows.push(vec![Cell::Number(x), Cell::Code((i + 1) as u32)]);
                    x += 1.0;
                    *r -= 1;
                }
            }
        }
        Dataset {
            attributes: vec![
                AttributeSpec::continuous("x"),
                AttributeSpec::class("label", values),
            ],
            rows,
            class_index: 1,
            dropped_rows: 0,
        }
    }

    #[test]
    fn balanced_hundred_at_thirty_percent_gives_fifteen_each() {
        assert_eq!(train_allocation(&[50, 50], 0.30), vec![15, 15]);
    }

    #[test]
    fn largest_remainder_prefers_bigger_fraction_then_smaller_code() {
        // m=10, f=0.30, target=3: shares 2.1, 0.6, 0.3 -> floors 2,0,0,
        // one seat left, largest fraction 0.6 wins.
        assert_eq!(train_allocation(&[7, 2, 1], 0.30), vec![2, 1, 0]);
        // Equal fractions 0.5/0.5: the smaller class code gets the seat.
        assert_eq!(train_allocation(&[5, 5], 0.30), vec![2, 1]);
    }

    #[test]
    fn split_counts_match_allocation() {
        let ds = labeled(&[50, 50]);
        let pair = stratified_split(&ds, 0.30, 7).unwrap();
        assert_eq!(pair.train.example_count(), 30);
        assert_eq!(pair.test.example_count(), 70);
        let per_class = pair.train.rows_by_class();
        assert_eq!(per_class[0].len(), 15);
        assert_eq!(per_class[1].len(), 15);
    }

    #[test]
    fn same_seed_reproduces_the_split_and_different_seed_changes_it() {
        let ds = labeled(&[40, 25, 10]);
        let a = stratified_split(&ds, 0.30, 11).unwrap();
        let b = stratified_split(&ds, 0.30, 11).unwrap();
        assert_eq!(a.train, b.train);
        assert_eq!(a.test, b.test);
        let c = stratified_split(&ds, 0.30, 12).unwrap();
        assert_ne!(a.train, c.train);
    }

    #[test]
    fn halves_preserve_parent_row_order() {
        let ds = labeled(&[20, 20]);
        let pair = stratified_split(&ds, 0.40, 3).unwrap();
        for half in [&pair.train, &pair.test] {
            let xs: Vec<f64> = half
                .rows
                .iter()
                .map(|r| match r[0] {
                    Cell::Number(x) => x,
                    _ => unreachable!(),
                })
                .collect();
            let mut sorted = xs.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert_eq!(xs, sorted);
        }
    }

    #[test]
    fn fraction_bounds_are_enforced() {
        let ds = labeled(&[10]);
        assert!(stratified_split(&ds, 0.0, 1).is_err());
        assert!(stratified_split(&ds, 1.0, 1).is_err());
        assert!(stratified_split(&ds, 0.5, 1).is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn allocation_sums_to_rounded_target(
            counts in prop::collection::vec(0usize..40, 1..6),
            f in 0.05f64..0.95,
        ) {
            let m: usize = counts.iter().sum();
            prop_assume!(m > 0);
            let alloc = train_allocation(&counts, f);
            let target = (m as f64 * f).round() as usize;
            prop_assert_eq!(alloc.iter().sum::<usize>(), target);
            for (a, c) in alloc.iter().zip(&counts) {
                prop_assert!(a <= c);
            }
        }

        #[test]
        fn split_partitions_every_row(
            counts in prop::collection::vec(1usize..30, 1..5),
            f in 0.1f64..0.9,
            seed in any::<u64>(),
        ) {
            let ds = labeled(&counts);
            let pair = stratified_split(&ds, f, seed).unwrap();
            prop_assert_eq!(
                pair.train.example_count() + pair.test.example_count(),
                ds.example_count()
            );
            let mut seen: Vec<f64> = pair
                .train
                .rows
                .iter()
                .chain(&pair.test.rows)
                .map(|r| match r[0] {
                    Cell::Number(x) => x,
                    _ => unreachable!(),
                })
                .collect();
            seen.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let expected: Vec<f64> = (0..ds.example_count()).map(|i| i as f64).collect();
            prop_assert_eq!(seen, expected);
        }
    }
}
