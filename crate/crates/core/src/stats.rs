//! Statistics of the uniform distribution on the tiles of `{0, ..., n-1}`.
//!
//! Everything except [`sample_uniform`] is computed exactly from the full
//! enumeration; the only floating-point step is the final division.

use std::collections::{BTreeMap, HashMap};

use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::domain::{Point, Tile};
use crate::error::{Error, Result};
use crate::line_tiler::{count_box, tile_masks, CensusOptions};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub n: usize,
    pub count: u64,
    pub mean_density: f64,
    pub stdev_density: f64,
    /// Tile size to number of tiles.
    pub histogram: BTreeMap<usize, u64>,
}

/// Mean and standard deviation of `|S| / n` over all tiles `S`.
pub fn density_report(n: usize, opts: &CensusOptions) -> Result<DensityReport> {
    let census = count_box(n, opts)?;
    let count = census.total;
    let (sum, sum_sq) = census.by_size.iter().fold((0u128, 0u128), |(s, q), (&size, &c)| {
        (s + size as u128 * c as u128, q + (size * size) as u128 * c as u128)
    });
    let nf = n as f64;
    let mean = sum as f64 / count as f64 / nf;
    // Population variance of the size, from exact integer moments.
    let var_num = count as u128 * sum_sq - sum * sum;
    let stdev = (var_num as f64).sqrt() / count as f64 / nf;
    Ok(DensityReport { n, count, mean_density: mean, stdev_density: stdev, histogram: census.by_size })
}

/// `count` independent uniform tiles of `{0, ..., n-1}`.
pub fn sample_uniform(n: usize, seed: u64, count: usize, opts: &CensusOptions) -> Result<Vec<Tile>> {
    let masks = tile_masks(n, opts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Tile::from_mask(n, masks[rng.gen_range(0..masks.len())])).collect()
}

/// Number of tiles containing each position, and the number of tiles.
pub fn marginal_counts(n: usize, opts: &CensusOptions) -> Result<(Vec<u64>, u64)> {
    let masks = tile_masks(n, opts)?;
    let mut counts = vec![0u64; n];
    for m in &masks {
        for (i, c) in counts.iter_mut().enumerate() {
            *c += m >> i & 1;
        }
    }
    Ok((counts, masks.len() as u64))
}

/// `P(i in S)` for each position `i`.
pub fn marginal_frequencies(n: usize, opts: &CensusOptions) -> Result<Vec<f64>> {
    let (counts, total) = marginal_counts(n, opts)?;
    Ok(counts.iter().map(|&c| c as f64 / total as f64).collect())
}

/// Window starts `a` with `[a, a + w)` inside `[ceil(n/4), floor(3n/4))`.
pub fn bulk_window_starts(n: usize, w: usize) -> std::ops::Range<usize> {
    let lo = n.div_ceil(4);
    let hi = 3 * n / 4;
    lo..(hi + 1).saturating_sub(w).max(lo)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WindowReport {
    pub n: usize,
    pub w: usize,
    /// Pattern (first position leftmost) to frequency.
    pub frequencies: BTreeMap<String, f64>,
    /// Bernoulli(1/3) product measure on the same patterns.
    pub reference: BTreeMap<String, f64>,
    pub tv_distance: f64,
}

/// Largest supported window length.
pub const MAX_WINDOW: usize = 6;

/// Law of the restriction of a uniform tile to a uniform bulk window of
/// length `w`, next to the Bernoulli(1/3) product law.
pub fn window_frequencies(n: usize, w: usize, opts: &CensusOptions) -> Result<WindowReport> {
    if w == 0 || w > MAX_WINDOW {
        return Err(Error::LimitExceeded { what: "window length", value: w as u64, max: MAX_WINDOW as u64 });
    }
    let starts = bulk_window_starts(n, w);
    if starts.is_empty() {
        return Err(Error::Domain(format!("no window of length {w} fits in the bulk of [0, {n})")));
    }
    let masks = tile_masks(n, opts)?;
    let mut counts = vec![0u64; 1 << w];
    for m in &masks {
        for a in starts.clone() {
            counts[(m >> a & ((1 << w) - 1)) as usize] += 1;
        }
    }
    let denom = (masks.len() * starts.len()) as f64;
    let pattern = |p: usize| (0..w).map(|i| if p >> i & 1 == 1 { '1' } else { '0' }).collect::<String>();
    let mut frequencies = BTreeMap::new();
    let mut reference = BTreeMap::new();
    let mut tv = 0.0;
    for (p, &c) in counts.iter().enumerate() {
        let ones = p.count_ones() as i32;
        let q = (1.0f64 / 3.0).powi(ones) * (2.0f64 / 3.0).powi(w as i32 - ones);
        let f = c as f64 / denom;
        tv += (f - q).abs();
        frequencies.insert(pattern(p), f);
        reference.insert(pattern(p), q);
    }
    Ok(WindowReport { n, w, frequencies, reference, tv_distance: tv / 2.0 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentStats {
    pub largest: usize,
    pub count: usize,
}

/// Connected components of `s` under unit `l1` steps.
pub fn component_stats(s: &Tile) -> ComponentStats {
    let pts = s.points();
    let index: HashMap<&Point, usize> = pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut uf = UnionFind::<usize>::new(pts.len());
    for (i, p) in pts.iter().enumerate() {
        for axis in 0..s.d() {
            let mut q = p.clone();
            q.0[axis] += 1;
            if let Some(&j) = index.get(&q) {
                uf.union(i, j);
            }
        }
    }
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for i in 0..pts.len() {
        *sizes.entry(uf.find(i)).or_default() += 1;
    }
    ComponentStats { largest: sizes.values().copied().max().unwrap_or(0), count: sizes.len() }
}
