//! Exhaustive census of the tiles of `{0, ..., n-1}`.
//!
//! ```text
//! cargo run --release --example census -- 18
//! ```

use tilecensus::line_tiler::{count_box, CensusOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_n: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(15);
    let opts = CensusOptions::default();
    println!("{:>3} {:>12} {:>10} {:>10}", "n", "t_n", "t_n^(3/n)", "3^floor(n/3)");
    for n in 1..=max_n {
        let report = count_box(n, &opts)?;
        println!(
            "{:>3} {:>12} {:>10.4} {:>10}   ({:.2?})",
            n,
            report.total,
            report.ratio,
            3u64.pow(n as u32 / 3),
            report.elapsed
        );
    }
    Ok(())
}
