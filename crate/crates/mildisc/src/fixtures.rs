//! Deterministic demo and test data.
//!
//! Everything here is generated from fixed seeds or literal tables, so the
//! runnable examples and the test suite see identical data on every
//! platform. `column_with_bin_counts` builds a real-valued column whose
//! initial-grid histogram matches a requested shape exactly, which is how
//! the worked-example columns for the merge walkthroughs are produced.

use crate::dataset::{AttributeSpec, Cell, Dataset};
use crate::mil::InitialPartition;
use crate::rng::{shuffle, SplitMix64};

/// Builds a column of `targets.iter().sum()` values over `[d_min, d_max]`
/// such that subinterval `j` (1-based) of the uniform `n`-way grid contains
/// exactly `targets[j-1]` values. `named` values are placed first, wherever
/// the grid puts them; the rest are safe mid-bin fillers. The named list
/// must include `d_min` and `d_max` so the column attains its range.
///
/// Panics if the request is inconsistent (a bin over target, range not
/// attained); fixtures are supposed to fail loudly.
pub fn column_with_bin_counts(
    d_min: f64,
    d_max: f64,
    n: usize,
    targets: &[u64],
    named: &[f64],
) -> Vec<f64> {
    assert_eq!(targets.len(), n, "one target per subinterval");
    let m: u64 = targets.iter().sum();
    let part = InitialPartition {
        d_min,
        d_max,
        n,
        h: (d_max - d_min) / n as f64,
        m: m as usize,
    };

    let mut filled = vec![0u64; n];
    let mut column = Vec::with_capacity(m as usize);
    for &v in named {
        let bin = part.bin_index(v);
        filled[bin - 1] += 1;
        assert!(
            filled[bin - 1] <= targets[bin - 1],
            "named values exceed target of bin {bin}"
        );
        column.push(v);
    }
    for bin in 1..=n {
        let lower = part.boundary(bin - 1);
        let want = targets[bin - 1] - filled[bin - 1];
        for i in 0..want {
            // Offsets in [0.2h, 0.8h] keep fillers clear of both edges.
            let frac = 0.2 + 0.6 * (i as f64 / want.max(1) as f64);
            let v = lower + part.h * frac;
            assert_eq!(part.bin_index(v), bin, "filler landed outside bin {bin}");
            column.push(v);
        }
    }

    let mut rng = SplitMix64::new(0xF177E5);
    shuffle(&mut column, &mut rng);

    let lo = column.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = column.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert_eq!(lo, d_min, "column must attain d_min");
    assert_eq!(hi, d_max, "column must attain d_max");
    column
}

/// Splits `total` as evenly as possible over `bins` slots, extras first.
fn spread(total: u64, bins: usize) -> Vec<u64> {
    let base = total / bins as u64;
    let rem = (total % bins as u64) as usize;
    (0..bins)
        .map(|i| if i < rem { base + 1 } else { base })
        .collect()
}

/// 240 values on [0.1, 0.9] over a 40-way grid: one value in the first
/// subinterval, three in the second, the rest spread across the tail.
/// With two classes and default parameters this reproduces the worked
/// merge example: the first two subintervals fuse into [0.10, 0.14).
pub fn golden_column() -> Vec<f64> {
    let mut targets = vec![1, 3];
    targets.extend(spread(236, 38));
    column_with_bin_counts(0.1, 0.9, 40, &targets, &[0.10, 0.131, 0.90])
}

/// Like `golden_column`, but with a plateau in subintervals 3..=5
/// (counts 4, 5, 5) so the similarity rule of the modified merge chains
/// them into one region [0.14, 0.20), followed by a count spike that
/// stops the chain.
pub fn similarity_column() -> Vec<f64> {
    let mut targets = vec![1, 3, 4, 5, 5, 20];
    targets.extend(spread(202, 34));
    column_with_bin_counts(0.1, 0.9, 40, &targets, &[0.10, 0.131, 0.15, 0.18, 0.90])
}

/// Two binary attributes whose class is their exclusive-or. Neither
/// attribute helps alone, so this is the classic check that a tree keeps
/// splitting on zero-gain candidates instead of giving up.
pub fn xor_dataset() -> Dataset {
    let bit = |b: u32| Cell::Code(b + 1);
    Dataset {
        attributes: vec![
            AttributeSpec::nominal("a", vec!["0".into(), "1".into()]),
            AttributeSpec::nominal("b", vec!["0".into(), "1".into()]),
            AttributeSpec::class("parity", vec!["even".into(), "odd".into()]),
        ],
        rows: vec![
            vec![bit(0), bit(0), Cell::Code(1)],
            vec![bit(0), bit(1), Cell::Code(2)],
            vec![bit(1), bit(0), Cell::Code(2)],
            vec![bit(1), bit(1), Cell::Code(1)],
        ],
        class_index: 2,
        dropped_rows: 0,
    }
}

/// The classic fourteen-row "play outside?" table: four nominal attributes
/// and a yes/no class. Handy for decision-tree demos.
pub fn weather_dataset() -> Dataset {
    let outlook = ["sunny", "overcast", "rainy"];
    let temp = ["hot", "mild", "cool"];
    let humidity = ["high", "normal"];
    let windy = ["false", "true"];
    let play = ["no", "yes"];
    let rows_raw: [(usize, usize, usize, usize, usize); 14] = [
        (0, 0, 0, 0, 0),
        (0, 0, 0, 1, 0),
        (1, 0, 0, 0, 1),
        (2, 1, 0, 0, 1),
        (2, 2, 1, 0, 1),
        (2, 2, 1, 1, 0),
        (1, 2, 1, 1, 1),
        (0, 1, 0, 0, 0),
        (0, 2, 1, 0, 1),
        (2, 1, 1, 0, 1),
        (0, 1, 1, 1, 1),
        (1, 1, 0, 1, 1),
        (1, 0, 1, 0, 1),
        (2, 1, 0, 1, 0),
    ];
    let strings = |vals: &[&str]| vals.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    Dataset {
        attributes: vec![
            AttributeSpec::nominal("outlook", strings(&outlook)),
            AttributeSpec::nominal("temperature", strings(&temp)),
            AttributeSpec::nominal("humidity", strings(&humidity)),
            AttributeSpec::nominal("windy", strings(&windy)),
            AttributeSpec::class("play", strings(&play)),
        ],
        rows: rows_raw
            .iter()
            .map(|&(o, t, h, w, p)| {
                vec![
                    Cell::Code(o as u32 + 1),
                    Cell::Code(t as u32 + 1),
                    Cell::Code(h as u32 + 1),
                    Cell::Code(w as u32 + 1),
                    Cell::Code(p as u32 + 1),
                ]
            })
            .collect(),
        class_index: 4,
        dropped_rows: 0,
    }
}

/// Synthetic 306-row survival study: age, operation year, and positive
/// node count predict a binary outcome, with a 225/81 class balance and
/// deliberate class overlap. Shipped as `data/haberman.csv`; regenerate it
/// with `cargo run --example generate_fixtures`.
pub fn survival_dataset() -> Dataset {
    let mut rng = SplitMix64::new(0x5AB3_1106);
    let mut rows: Vec<Vec<Cell>> = Vec::with_capacity(306);
    for r in 0..306u32 {
        let survived = r < 225;
        let base_age = 30 + rng.next_below(54) as i64;
        let year = 58 + rng.next_below(12) as i64;
        let (age, nodes) = if survived {
            let nodes = if rng.next_below(10) < 6 {
                0
            } else {
                1 + rng.next_below(6) as i64
            };
            (base_age, nodes)
        } else {
            let nodes = if rng.next_below(10) < 2 {
                0
            } else {
                2 + rng.next_below(24) as i64
            };
            ((base_age + 5).min(83), nodes)
        };
        rows.push(vec![
            Cell::Number(age as f64),
            Cell::Number(year as f64),
            Cell::Number(nodes as f64),
            Cell::Code(if survived { 1 } else { 2 }),
        ]);
    }
    shuffle(&mut rows, &mut rng);
    Dataset {
        attributes: vec![
            AttributeSpec::continuous("age"),
            AttributeSpec::continuous("op_year"),
            AttributeSpec::continuous("axil_nodes"),
            AttributeSpec::class("survival", vec!["1".into(), "2".into()]),
        ],
        rows,
        class_index: 3,
        dropped_rows: 0,
    }
}
