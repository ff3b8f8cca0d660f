//! Deterministic stratified splitting: each class contributes its share to
//! the train half, and the same seed always yields the same split.
//!
//! Run with: cargo run --example stratified_split

use mildisc::dataset::Dataset;
use mildisc::fixtures::survival_dataset;
use mildisc::stratified_split;

fn class_histogram(ds: &Dataset) -> Vec<usize> {
    let mut counts = vec![0; ds.class_count()];
    for code in ds.class_codes() {
        counts[(code - 1) as usize] += 1;
    }
    counts
}

fn main() {
    let ds = survival_dataset();
    println!(
        "full dataset: {} rows, class histogram {:?}",
        ds.example_count(),
        class_histogram(&ds)
    );

    let split = stratified_split(&ds, 0.30, 7).expect("split");
    println!(
        "train (30%): {} rows, histogram {:?}",
        split.train.example_count(),
        class_histogram(&split.train)
    );
    println!(
        "test  (70%): {} rows, histogram {:?}",
        split.test.example_count(),
        class_histogram(&split.test)
    );

    let again = stratified_split(&ds, 0.30, 7).expect("split");
    assert_eq!(split.train.rows, again.train.rows);
    println!("same seed -> identical split");

    let other = stratified_split(&ds, 0.30, 8).expect("split");
    assert_ne!(split.train.rows, other.train.rows);
    println!("different seed -> different rows, same class proportions");
}
