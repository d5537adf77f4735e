//! The lower-bound tile families.
//!
//! A word `(a_0, ..., a_{t-1})` over `{0,1,2}` gives the line tile
//! `{a_i t + i}` inside `[0, 3t)`: one point per residue class mod `t`, so it
//! tiles by `t Z`. In dimension `d` a colouring `c` of the slab
//! `[0,t) x [0,3t)^{d-1}` together with a shift `u` gives a tile of
//! `[0,3t)^d` that is a transversal of the lattice spanned by `(t, u)` and
//! `3t e_i`.

use std::collections::HashSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::domain::{normalize_tile, HnfMatrix, LatticeCertificate, Point, Tile};
use crate::error::{Error, Result};
use crate::lattice_tiler::{hnf_from_generators, is_transversal};

/// Largest family [`family_census`] will enumerate.
pub const DEFAULT_FAMILY_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Word> {
        if letters.is_empty() {
            return Err(Error::Invalid("a word needs at least one letter".into()));
        }
        if let Some(bad) = letters.iter().find(|&&a| a > 2) {
            return Err(Error::Invalid(format!("letter {bad} outside {{0,1,2}}")));
        }
        Ok(Word { letters })
    }

    /// Uniform word of length `t` from a seeded generator.
    pub fn random(t: usize, seed: u64) -> Result<Word> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Word::new((0..t).map(|_| rng.gen_range(0..3u8)).collect())
    }

    /// The `index`-th word of length `t` in base-3 order, first letter least
    /// significant.
    pub fn nth(t: usize, mut index: u64) -> Result<Word> {
        let mut letters = Vec::with_capacity(t);
        for _ in 0..t {
            letters.push((index % 3) as u8);
            index /= 3;
        }
        Word::new(letters)
    }

    pub fn t(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }
}

/// `{a_i t + i : i in [0, t)}` in the box `[0, 3t)`.
pub fn line_word_tile(w: &Word) -> Tile {
    let t = w.t() as i64;
    Tile::line(3 * t, w.letters.iter().enumerate().map(|(i, &a)| a as i64 * t + i as i64))
        .expect("word tiles are valid")
}

/// A colouring of `[0,t) x [0,3t)^{d-1}` by layers `{0,1,2}` and a shift `u`.
///
/// `c` is indexed row-major: the first coordinate slowest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlabColoring {
    t: usize,
    d: usize,
    u: Vec<i64>,
    c: Vec<u8>,
}

impl SlabColoring {
    pub fn new(t: usize, d: usize, u: Vec<i64>, c: Vec<u8>) -> Result<SlabColoring> {
        if t == 0 || d < 2 {
            return Err(Error::Invalid(format!("slab needs t >= 1 and d >= 2, got t={t} d={d}")));
        }
        let side = 3 * t as i64;
        if u.len() != d - 1 || u.iter().any(|&x| !(0..side).contains(&x)) {
            return Err(Error::Invalid(format!("shift must have {} entries in [0, {side})", d - 1)));
        }
        let cells = slab_cells(t, d)?;
        if c.len() as u64 != cells {
            return Err(Error::Invalid(format!("colouring needs {cells} entries, got {}", c.len())));
        }
        if c.iter().any(|&x| x > 2) {
            return Err(Error::Invalid("colouring values must be in {0,1,2}".into()));
        }
        Ok(SlabColoring { t, d, u, c })
    }

    /// Uniform colouring and shift from a seeded generator.
    pub fn random(t: usize, d: usize, seed: u64) -> Result<SlabColoring> {
        let cells = slab_cells(t, d)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = (0..d.saturating_sub(1)).map(|_| rng.gen_range(0..3 * t as i64)).collect();
        let c = (0..cells).map(|_| rng.gen_range(0..3u8)).collect();
        SlabColoring::new(t, d, u, c)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn u(&self) -> &[i64] {
        &self.u
    }

    pub fn coloring(&self) -> &[u8] {
        &self.c
    }

    fn colour_at(&self, r: i64, tail: &[i64]) -> u8 {
        let side = 3 * self.t as i64;
        let idx = tail.iter().fold(r, |acc, &x| acc * side + x);
        self.c[idx as usize]
    }
}

fn slab_cells(t: usize, d: usize) -> Result<u64> {
    (3 * t as u64)
        .checked_pow(d.saturating_sub(1) as u32)
        .and_then(|x| x.checked_mul(t as u64))
        .filter(|&x| x <= 1 << 32)
        .ok_or(Error::LimitExceeded { what: "slab cells", value: u64::MAX, max: 1 << 32 })
}

/// HNF of the lattice spanned by `(t, u)` and `3t e_i`, `i = 2..d`.
pub fn slab_lattice(t: usize, d: usize, u: &[i64]) -> Result<HnfMatrix> {
    let side = 3 * t as i64;
    if t == 0 || d < 2 || u.len() != d - 1 {
        return Err(Error::Invalid(format!("slab lattice needs t >= 1, d >= 2 and {} shifts", d.max(1) - 1)));
    }
    let mut gens = vec![Point(std::iter::once(t as i64).chain(u.iter().copied()).collect())];
    for i in 1..d {
        let mut e = vec![0; d];
        e[i] = side;
        gens.push(Point(e));
    }
    hnf_from_generators(&gens, d)
}

/// The tile `S_{c,u}` and its lattice certificate.
pub fn slab_tile(col: &SlabColoring) -> Result<(Tile, LatticeCertificate)> {
    let (t, d) = (col.t as i64, col.d);
    let side = 3 * t;
    let mut points = Vec::new();
    let mut v = vec![0i64; d];
    loop {
        let layer = v[0] / t;
        let tail: Vec<i64> = v[1..].iter().zip(&col.u).map(|(x, u)| (x - layer * u).rem_euclid(side)).collect();
        if col.colour_at(v[0] % t, &tail) as i64 == layer {
            points.push(Point(v.clone()));
        }
        let mut i = d;
        loop {
            if i == 0 {
                let tile = normalize_tile(points, d, side)?;
                let lattice = slab_lattice(col.t, d, &col.u)?;
                if !is_transversal(&tile, &lattice) {
                    return Err(Error::CertificateFailed(format!("slab tile is not a transversal of {lattice}")));
                }
                return Ok((tile, LatticeCertificate { lattice }));
            }
            i -= 1;
            v[i] += 1;
            if v[i] < side {
                break;
            }
            v[i] = 0;
        }
    }
}

/// Sizes of a construction family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCensus {
    pub t: usize,
    pub d: usize,
    /// Number of parameter choices: words, or `(c, u)` pairs.
    pub family_size: BigUint,
    /// Number of distinct tiles they produce.
    pub distinct_tiles: BigUint,
}

impl FamilyCensus {
    /// Big counts are emitted as decimal strings.
    pub fn to_value(&self) -> Value {
        json!({
            "t": self.t,
            "d": self.d,
            "family_size": self.family_size.to_string(),
            "distinct_tiles": self.distinct_tiles.to_string(),
        })
    }
}

/// Enumerates a whole family and counts distinct tiles. `d = 1` means the
/// word family.
pub fn family_census(t: usize, d: usize, budget: u64) -> Result<FamilyCensus> {
    if t == 0 || d == 0 {
        return Err(Error::Invalid("t and d must be positive".into()));
    }
    let side = 3 * t as u32;
    let cells = (side as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
    let (colourings, shifts) = if d == 1 {
        (BigUint::from(3u8).pow(t as u32), BigUint::from(1u8))
    } else {
        let slab = slab_cells(t, d)?;
        (BigUint::from(3u8).pow(slab as u32), BigUint::from(side).pow(d as u32 - 1))
    };
    let family_size = &colourings * &shifts;
    if family_size > BigUint::from(budget) || cells > 128 {
        return Err(Error::BudgetExceeded(format!("family of {family_size} tiles in a box of {cells} cells")));
    }
    let colourings = u64::try_from(&colourings).expect("within budget");
    let shifts = u64::try_from(&shifts).expect("within budget");
    let index = |p: &Point| p.0.iter().fold(0u32, |acc, &x| acc * side + x as u32);
    let to_mask = |tile: &Tile| tile.points().iter().fold(0u128, |m, p| m | 1 << index(p));
    let distinct: HashSet<u128> = if d == 1 {
        (0..colourings)
            .into_par_iter()
            .map(|i| to_mask(&line_word_tile(&Word::nth(t, i).expect("valid index"))))
            .collect()
    } else {
        let slab = slab_cells(t, d)? as usize;
        (0..shifts)
            .into_par_iter()
            .flat_map_iter(|ui| {
                let mut rest = ui;
                let u: Vec<i64> = (1..d)
                    .map(|_| {
                        let x = rest % side as u64;
                        rest /= side as u64;
                        x as i64
                    })
                    .collect();
                (0..colourings).map(move |ci| {
                    let mut rest = ci;
                    let c: Vec<u8> = (0..slab)
                        .map(|_| {
                            let x = (rest % 3) as u8;
                            rest /= 3;
                            x
                        })
                        .collect();
                    let col = SlabColoring::new(t, d, u.clone(), c).expect("valid enumeration");
                    slab_tile(&col).map(|(tile, _)| to_mask(&tile))
                })
            })
            .collect::<Result<_>>()?
    };
    Ok(FamilyCensus { t, d, family_size, distinct_tiles: BigUint::from(distinct.len()) })
}
