//! The modified merge: besides absorbing small regions, it fuses adjacent
//! subintervals whose counts sit within 25% of each other, and it records a
//! representative midpoint per region.
//!
//! The column here realizes subinterval counts 1, 3, 4, 5, 5, 20, ... so
//! after the small region [0.10, 0.14) closes, counts 4 and 5 satisfy
//! 0.75 * 5 <= 4 <= 1.25 * 5 and chain into one region.
//!
//! Run with: cargo run --example modified_walkthrough

use mildisc::fixtures::similarity_column;
use mildisc::modified::discretize_attribute_modified;
use mildisc::mil::MilParams;
use mildisc::scheme::apply_scheme;

fn main() {
    let values: Vec<Option<f64>> = similarity_column().into_iter().map(Some).collect();
    let out = discretize_attribute_modified(&values, 2, &MilParams::default(), "measurement")
        .expect("fit");

    println!(
        "fitted {} regions in {} column passes\n",
        out.scheme.regions.len(),
        out.column_passes
    );
    println!("first three regions (note the midpoints):");
    for region in out.scheme.regions.iter().take(3) {
        println!(
            "  label {}: [{}, {}) holds {} values across {} subinterval(s), midpoint {}",
            region.label,
            region.lower,
            region.upper,
            region.total_cts,
            region.span,
            region.midpoint.unwrap()
        );
    }

    println!("\nthe second region fused three similar subintervals:");
    let r2 = &out.scheme.regions[1];
    println!(
        "  [{}, {}) spans {} subintervals and holds {} values",
        r2.lower, r2.upper, r2.span, r2.total_cts
    );

    println!("\nvalue lookups:");
    for v in [0.10, 0.131, 0.15, 0.18] {
        println!("  {v} -> label {}", apply_scheme(&out.scheme, Some(v)));
    }
}
