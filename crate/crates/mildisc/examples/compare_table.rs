//! The dataset-by-discretizer accuracy table over the bundled manifest.
//!
//! Run with: cargo run --example compare_table

use std::path::Path;

use mildisc::dataset::{load_entry, load_manifest};
use mildisc::discretize::DiscretizerConfig;
use mildisc::eval::{compare, DatasetSource};
use mildisc::{render_report, ExperimentConfig};

fn main() {
    let manifest_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/manifest.json");
    let manifest = load_manifest(&manifest_path).expect("read manifest");
    let dir = manifest_path.parent().unwrap();

    let datasets: Vec<_> = manifest
        .datasets
        .iter()
        .map(|entry| match load_entry(dir, entry) {
            Ok(loaded) => (loaded.name, DatasetSource::Ready(loaded.dataset)),
            Err(e) => (entry.name.clone(), DatasetSource::Failed(e.to_string())),
        })
        .collect();

    let configs = vec![
        DiscretizerConfig::ModifiedMil(Default::default()),
        DiscretizerConfig::Mil(Default::default()),
        DiscretizerConfig::Mdlp { seed: 0 },
        DiscretizerConfig::EqualWidth { bins: 10, seed: 0 },
        DiscretizerConfig::EqualFrequency { bins: 10, seed: 0 },
    ];
    let exp = ExperimentConfig {
        parallel: true,
        ..ExperimentConfig::default()
    };

    let report = compare(&datasets, &configs, &exp).expect("compare");
    print!("{}", render_report(&report));
}
