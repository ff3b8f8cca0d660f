//! The three baseline discretizers on one small column.
//!
//! Run with: cargo run --example baselines

use mildisc::baselines::{equal_frequency, equal_width, mdlp};

fn print_fit(name: &str, fit: &mildisc::baselines::FittedRegions) {
    println!("{name}:");
    for region in &fit.regions {
        println!(
            "  label {}: [{}, {}) holds {} training values",
            region.label, region.lower, region.upper, region.total_cts
        );
    }
}

fn main() {
    // A dozen values: a tight cluster low, a spread cluster high.
    let raw = [1.0, 1.2, 1.4, 1.6, 1.8, 2.0, 7.0, 8.0, 9.0, 10.0, 11.0, 12.0];
    let values: Vec<Option<f64>> = raw.iter().copied().map(Some).collect();

    print_fit("equal-width, 4 bins", &equal_width(&values, 4).expect("fit"));
    println!();
    print_fit(
        "equal-frequency, 4 bins",
        &equal_frequency(&values, 4).expect("fit"),
    );
    println!();

    // Entropy-based cuts need class labels; the low cluster is class 1, the
    // high cluster class 2, so one cut between the clusters is enough.
    let labels = [1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2];
    print_fit("entropy/MDL cuts", &mdlp(&raw, &labels).expect("fit"));

    // With shuffled labels no cut pays for itself, so the column stays whole.
    let noise = [1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2];
    println!();
    print_fit("entropy/MDL cuts, label noise", &mdlp(&raw, &noise).expect("fit"));
}
