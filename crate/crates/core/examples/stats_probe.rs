//! Exact density, marginals and bulk windows of a uniform random tile.
//!
//! ```text
//! cargo run --release --example stats_probe -- 18
//! ```

use tilecensus::line_tiler::CensusOptions;
use tilecensus::stats::{component_stats, density_report, marginal_frequencies, sample_uniform, window_frequencies};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_n: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(15);
    let opts = CensusOptions::default();
    println!("{:>3} {:>8} {:>8} {:>8} {:>10}", "n", "tiles", "density", "stdev", "tv(w=3)");
    for n in (3..=max_n).step_by(3) {
        let d = density_report(n, &opts)?;
        let tv = window_frequencies(n, 3, &opts).map(|w| format!("{:.4}", w.tv_distance)).unwrap_or_default();
        println!("{n:>3} {:>8} {:>8.4} {:>8.4} {tv:>10}", d.count, d.mean_density, d.stdev_density);
    }
    let marg = marginal_frequencies(max_n, &opts)?;
    println!("marginals n={max_n}: {}", marg.iter().map(|m| format!("{m:.3}")).collect::<Vec<_>>().join(" "));
    for tile in sample_uniform(max_n, 1, 5, &opts)? {
        let c = component_stats(&tile);
        println!("sample {tile}  components {} largest {}", c.count, c.largest);
    }
    Ok(())
}
