//! The full evaluation protocol on one dataset and one discretizer:
//! 50 stratified 30%/70% splits, schemes fitted on each train half only,
//! scored by the tree classifier on the held-out rows.
//!
//! Run with: cargo run --example run_experiment

use std::path::Path;

use mildisc::dataset::csv::read_csv;
use mildisc::{run_experiment, DiscretizerConfig, ExperimentConfig};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/iris.csv");
    let ds = read_csv(&path).expect("read iris");
    println!(
        "iris: {} rows, {} continuous attributes, {} classes",
        ds.example_count(),
        ds.continuous_attribute_indices().len(),
        ds.class_count()
    );

    let exp = ExperimentConfig::default(); // 50 runs, 30% train, seed 0
    for config in [
        DiscretizerConfig::ModifiedMil(Default::default()),
        DiscretizerConfig::Mil(Default::default()),
        DiscretizerConfig::Mdlp { seed: 0 },
    ] {
        let res = run_experiment(&ds, &config, &exp).expect("experiment");
        println!(
            "{:<14} {:.2} \u{b1} {:.2}  (over {} runs)",
            config.name(),
            res.mean,
            res.sd,
            res.accuracies.len()
        );
    }
    println!("\n(the classifier is this crate's own tree, so absolute numbers");
    println!(" are not comparable to results from other tree implementations)");
}
