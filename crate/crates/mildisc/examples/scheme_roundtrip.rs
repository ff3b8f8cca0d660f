//! Fit schemes on one dataset, save them as JSON, reload, and relabel
//! unseen rows without refitting.
//!
//! Run with: cargo run --example scheme_roundtrip

use mildisc::dataset::Cell;
use mildisc::fixtures::survival_dataset;
use mildisc::{
    apply_schemes, discretize_dataset, read_schemes, write_schemes, DiscretizerConfig,
};

fn main() {
    let ds = survival_dataset();
    let config = DiscretizerConfig::ModifiedMil(Default::default());
    let fit = discretize_dataset(&ds, &config, false).expect("fit");
    println!(
        "fitted {} schemes on {} rows",
        fit.schemes.len(),
        ds.example_count()
    );

    let path = std::env::temp_dir().join("survival-schemes.json");
    write_schemes(&path, &fit.schemes).expect("write");
    let reloaded = read_schemes(&path).expect("read");
    assert_eq!(fit.schemes, reloaded);
    println!("schemes survived the JSON round trip: {}", path.display());

    // Relabel the training rows through the stored schemes: same labels.
    let (applied, stats) = apply_schemes(&ds, &reloaded).expect("apply");
    assert_eq!(applied.rows, fit.dataset.rows);
    println!("training rows relabel identically ({stats:?})");

    // An unseen example below every training minimum maps to label 1.
    let mut unseen = ds.clone();
    unseen.rows.truncate(1);
    unseen.rows[0][0] = Cell::Number(-1000.0);
    let (relabeled, stats) = apply_schemes(&unseen, &reloaded).expect("apply unseen");
    println!(
        "unseen below-range value -> label {:?} ({} below-range cell)",
        relabeled.rows[0][0], stats.below_range
    );

    std::fs::remove_file(&path).ok();
}
