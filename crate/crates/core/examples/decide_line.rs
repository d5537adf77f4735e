//! Decide a few one-dimensional sets and print their certificates.
//!
//! ```text
//! cargo run --example decide_line -- 0,1,5 0,1,3 0,2,4,7
//! ```

use tilecensus::line_tiler::{decide_line, minimal_period};
use tilecensus::{Status, Tile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut sets: Vec<Vec<i64>> = std::env::args()
        .skip(1)
        .map(|a| a.split(',').map(str::parse).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    if sets.is_empty() {
        sets = vec![vec![0, 1, 5], vec![0, 1, 3], vec![0, 2], vec![0, 1, 4, 5], vec![0, 3, 4, 7, 9]];
    }
    for coords in sets {
        let n = coords.iter().max().copied().unwrap_or(0) + 1;
        let tile = Tile::line(n, coords)?;
        let decision = decide_line(&tile)?;
        print!("{:<24} {:<9}", format!("{tile}"), decision.status().as_str());
        match decision.status() {
            Status::Tiles => println!(" minimal period {}  {}", minimal_period(&tile)?, decision.to_value()),
            _ => println!(" {}", decision.to_value()),
        }
    }
    Ok(())
}
