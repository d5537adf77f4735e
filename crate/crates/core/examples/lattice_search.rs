//! Sublattice enumeration, lattice tilings and torus covers in the plane.

use tilecensus::lattice_tiler::{decide_zd, enumerate_hnf, hnf_count, tiles_torus, SearchBudget, TorusSpec};
use tilecensus::{normalize_tile, Point, Tile};

fn plane(points: &[(i64, i64)], n: i64) -> Tile {
    normalize_tile(points.iter().map(|&(x, y)| Point::new([x, y])).collect(), 2, n).expect("valid tile")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("sublattices of Z^2 by index (sigma(k)):");
    for k in 1..=12 {
        print!(" {}", enumerate_hnf(2, k, 1_000_000)?.len());
    }
    println!("\nsublattices of Z^3 of index 12: {}", hnf_count(3, 12));

    let budget = SearchBudget::default();
    let shapes = [
        ("L tromino", plane(&[(0, 0), (1, 0), (0, 1)], 2)),
        ("S tetromino", plane(&[(0, 0), (1, 0), (1, 1), (2, 1)], 3)),
        ("diagonal", plane(&[(0, 0), (1, 1), (2, 2)], 3)),
        ("plus", plane(&[(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)], 3)),
        ("corners", plane(&[(0, 0), (2, 0), (0, 2), (2, 2)], 3)),
    ];
    for (name, tile) in &shapes {
        let d = decide_zd(tile, &budget)?;
        println!("{name:<12} {}", d.to_value());
    }

    let pair = plane(&[(0, 0), (1, 0)], 2);
    let torus = tiles_torus(&pair, &TorusSpec::new(vec![4, 3])?, &budget)?;
    println!("domino on Z_4 x Z_3: {}", torus.to_value());
    Ok(())
}
