//! Supervised discretization toolkit.
//!
//! The core of the crate is a pair of interval-merging discretizers that
//! lay a uniform grid of `n = c * s` subintervals over a continuous
//! attribute's range (`s` being the number of class values) and then greedily
//! merge neighbors left to right: plain merging absorbs subintervals until a
//! growing frequency threshold is met, and the modified variant additionally
//! fuses adjacent subintervals with similar frequencies and records a
//! representative midpoint per region. Classic baselines — equal-width,
//! equal-frequency, and entropy/MDL cut selection — share the same scheme
//! representation, so all five can be persisted, applied to unseen data, and
//! compared through one evaluation harness: repeated stratified holdout
//! splits scored by an unpruned gain-ratio decision tree.
//!
//! # Modules
//!
//! - [`dataset`]: in-memory table model, CSV/ARFF ingestion, stratified
//!   splitting, and dataset manifests.
//! - [`mil`]: the grid, imputation of missing values, frequency counting,
//!   and the small-region merge.
//! - [`modified`]: the merge variant with the similarity rule and region
//!   midpoints.
//! - [`baselines`]: equal-width, equal-frequency, and entropy/MDL cuts.
//! - [`scheme`]: the region/scheme types, JSON persistence, and label
//!   application.
//! - [`discretize`]: whole-dataset driving, scheme application, and the
//!   discretizer configuration enum.
//! - [`tree`]: the gain-ratio decision tree used as the common classifier.
//! - [`eval`]: the repeated-holdout experiment and report rendering.
//! - [`cli`]: the `mildisc` binary's command definitions.
//!
//! # Runnable examples
//!
//! Each major capability has a walkthrough under `examples/`:
//!
//! - `mil_walkthrough`: the grid, threshold, and merge on a small column.
//! - `modified_walkthrough`: the similarity rule and midpoints.
//! - `baselines`: the three baseline discretizers on one column.
//! - `scheme_roundtrip`: persist a scheme, reload it, relabel unseen data.
//! - `stratified_split`: deterministic class-proportional splitting.
//! - `decision_tree`: the surrogate classifier on a nominal table.
//! - `run_experiment`: one dataset, one discretizer, full protocol.
//! - `compare_table`: the dataset-by-discretizer accuracy table.
//! - `generate_fixtures`: regenerates the bundled synthetic dataset.

pub mod baselines;
pub mod cli;
pub mod dataset;
pub mod discretize;
pub mod error;
pub mod eval;
pub mod fixtures;
pub mod mil;
pub mod modified;
pub mod rng;
pub mod scheme;
pub mod tree;

pub use dataset::{stratified_split, Dataset};
pub use discretize::{apply_schemes, discretize_dataset, DiscretizerConfig};
pub use error::{Error, Result};
pub use eval::{compare, render_report, run_experiment, ExperimentConfig};
pub use scheme::{apply_scheme, read_schemes, write_schemes, Algorithm, AttributeScheme};
pub use tree::{accuracy, predict, train_tree, TreeModel};
