//! Run the acceptance checks from code and print one line per criterion.
//!
//!     cargo run --release --example validate -- 1 5 7

use std::collections::BTreeMap;

use lyaprank::validation::{run, ALL_CRITERIA};

fn main() {
    let ids: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids = if ids.is_empty() { ALL_CRITERIA.to_vec() } else { ids };
    let report = run(&ids, &BTreeMap::new(), 4);
    for c in &report.criteria {
        println!("{:>2} {} {}", c.id, if c.passed { "PASS" } else { "FAIL" }, c.title);
        for k in c.checks.iter().filter(|k| !k.passed) {
            println!("     {} measured {} expected {}", k.name, k.measured, k.expected);
        }
    }
}
