//! The cover A_j for a word tile tiled by 2Z on a torus.

use tilecensus::constructions::{line_word_tile, Word};
use tilecensus::entropy_bound::{entropy_upper, log2_cbrt3, shearer_bound_from_instance, BoundParams};
use tilecensus::Point;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = 5;
    let tile = line_word_tile(&Word::new(vec![1, 1])?);
    let translations: Vec<Point> = (0..3 * k).map(|i| Point::new([2 * i])).collect();
    let report = shearer_bound_from_instance(&tile, &translations, k as u64, true)?;
    println!("tile {tile}, {} translates on Z_{}", report.ell, 6 * k);
    println!("|A_j| histogram: {:?}", report.a_sizes);
    println!("bound bits {:.12}", report.bound_bits);
    println!("v_n log2(3)/3 {:.12}", 6.0 * log2_cbrt3());

    let p = BoundParams::new(6, 1, 0.5)?.with_k(k as u64).with_ell(3 * k as u64).with_torus(true);
    println!("entropy_upper at ratio 3: {:?}", entropy_upper(&p)?);
    Ok(())
}
