//! Count the tiling subsets of an arbitrary finite set of integers.
//!
//! ```text
//! cargo run --example ground_set -- 1,2,4,8,16
//! ```

use tilecensus::line_tiler::{count_ground_set, CensusOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let elements: Vec<i64> = match std::env::args().nth(1) {
        Some(a) => a.split(',').map(str::parse).collect::<Result<_, _>>()?,
        None => vec![1, 2, 4, 8, 16, 32],
    };
    let report = count_ground_set(&elements, &CensusOptions::default())?;
    println!("ground set {elements:?}");
    println!("tiling subsets: {}", report.total);
    for (size, count) in &report.by_size {
        println!("  size {size:>2}: {count}");
    }
    Ok(())
}
