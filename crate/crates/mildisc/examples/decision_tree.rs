//! The gain-ratio decision tree on the classic 14-row weather table.
//!
//! Run with: cargo run --example decision_tree

use mildisc::dataset::Cell;
use mildisc::fixtures::weather_dataset;
use mildisc::{accuracy, predict, train_tree};

fn main() {
    let ds = weather_dataset();
    let model = train_tree(&ds).expect("train");
    println!(
        "trained on {} rows; training accuracy {}%",
        ds.example_count(),
        accuracy(&model, &ds).expect("score")
    );

    // outlook=sunny(1), temperature=mild(2), humidity=normal(2), windy=false(2)
    let row = vec![
        Cell::Code(1),
        Cell::Code(2),
        Cell::Code(2),
        Cell::Code(2),
        Cell::Missing, // class slot, ignored by predict
    ];
    let label = predict(&model, &row).expect("predict");
    let class = &ds.attributes[ds.class_index];
    println!(
        "sunny, mild, normal humidity, calm -> {}",
        class.values[(label - 1) as usize]
    );
}
