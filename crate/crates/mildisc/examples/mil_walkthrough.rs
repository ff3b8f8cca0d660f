//! The interval-merging discretizer, step by step, on a 240-value column.
//!
//! The column is engineered so the observed range is [0.10, 0.90] and the
//! first two grid subintervals hold 1 and 3 values: the first region then
//! absorbs two subintervals and covers [0.10, 0.14).
//!
//! Run with: cargo run --example mil_walkthrough

use mildisc::fixtures::golden_column;
use mildisc::mil::{
    compute_cts, discretize_attribute, init_partition, MilParams,
};
use mildisc::scheme::apply_scheme;

fn main() {
    let values: Vec<Option<f64>> = golden_column().into_iter().map(Some).collect();
    let class_count = 2;
    let params = MilParams::default();

    let part = init_partition(&values, class_count, &params).expect("grid");
    println!("column: m = {} values in [{}, {}]", part.m, part.d_min, part.d_max);
    println!(
        "grid:   n = c * s = {} * {} = {} subintervals of width h = {}",
        params.c, class_count, part.n, part.h
    );
    println!(
        "merge:  a region absorbs its right neighbor while it holds fewer than",
    );
    println!(
        "        ceil(expected / k) values, expected growing by m/n = {} per step\n",
        part.m as f64 / part.n as f64
    );

    let completed: Vec<f64> = values.iter().map(|v| v.unwrap()).collect();
    let cts = compute_cts(&completed, &part);
    println!("first five subinterval counts: {:?}", &cts.counts[..5]);

    let out = discretize_attribute(&values, class_count, &params, "measurement").expect("fit");
    println!(
        "fitted {} regions in {} column passes\n",
        out.scheme.regions.len(),
        out.column_passes
    );

    println!("first three regions:");
    for region in out.scheme.regions.iter().take(3) {
        println!(
            "  label {}: [{}, {}) holds {} values across {} subinterval(s)",
            region.label, region.lower, region.upper, region.total_cts, region.span
        );
    }

    println!("\nvalue lookups through the fitted scheme:");
    for v in [0.10, 0.131, 0.12, 0.90] {
        println!("  {v} -> label {}", apply_scheme(&out.scheme, Some(v)));
    }
    println!(
        "  missing -> label {} (imputed draws fall inside the range)",
        apply_scheme(&out.scheme, None)
    );
}
