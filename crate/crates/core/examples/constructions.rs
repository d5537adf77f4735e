//! The word and slab families behind the lower bound.

use tilecensus::constructions::{family_census, line_word_tile, slab_tile, SlabColoring, Word};
use tilecensus::line_tiler::decide_line;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let word = Word::new(vec![2, 0, 1, 1])?;
    let tile = line_word_tile(&word);
    println!("word {:?} -> {tile}", word.letters());
    println!("decision: {}", decide_line(&tile)?.to_value());

    for t in 1..=6 {
        let c = family_census(t, 1, 1 << 20)?;
        println!("t={t}: {} words, {} distinct tiles in [0,{})", c.family_size, c.distinct_tiles, 3 * t);
    }

    let col = SlabColoring::new(1, 2, vec![1], vec![2, 0, 1])?;
    let (slab, cert) = slab_tile(&col)?;
    println!("slab t=1 u=(1) c=(2,0,1): {slab}  lattice {}", cert.lattice);

    let c = family_census(1, 2, 1 << 20)?;
    println!("slab family t=1 d=2: {} parameter pairs, {} distinct tiles", c.family_size, c.distinct_tiles);
    let c = family_census(1, 3, 1 << 20)?;
    println!("slab family t=1 d=3: {} parameter pairs, {} distinct tiles", c.family_size, c.distinct_tiles);
    Ok(())
}
