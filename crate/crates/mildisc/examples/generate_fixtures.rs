//! Regenerates the bundled synthetic survival dataset at data/haberman.csv.
//!
//! The file is a stand-in with the published shape of the Haberman survival
//! study (306 rows, 3 continuous attributes, 225/81 class split) but with
//! synthetically drawn values, so the repository carries no copied data
//! files beyond the classic iris table. Generation is seeded and this
//! program always writes byte-identical output.
//!
//! Run with: cargo run --example generate_fixtures

use std::path::Path;

use mildisc::dataset::csv::write_csv;
use mildisc::fixtures::survival_dataset;

fn main() {
    let ds = survival_dataset();
    let mut histogram = vec![0usize; ds.class_count()];
    for code in ds.class_codes() {
        histogram[(code - 1) as usize] += 1;
    }

    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/haberman.csv");
    write_csv(&ds, &path).expect("write");
    println!(
        "wrote {} rows ({} survived / {} died) to {}",
        ds.example_count(),
        histogram[0],
        histogram[1],
        path.display()
    );
}
