//! Tiling searches in dimension `d >= 2`.
//!
//! Two certificate classes are searched: lattice tilings (the tile is a
//! transversal of a sublattice of index `|S|`) and torus tilings (an exact
//! cover of `Z_{m_1} x ... x Z_{m_d}`). Both certify periodic tilings of
//! `Z^d`. Failing to find one proves nothing about `Z^d` itself, so
//! [`decide_zd`] never answers `NotTile` for `d >= 2`.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::domain::{
    Certificate, Decision, HnfMatrix, LatticeCertificate, Point, SearchSpent, Status, Tile, TorusCertificate,
};
use crate::error::{Error, Result};
use crate::line_tiler;

/// Default cap on torus volume.
pub const DEFAULT_MAX_CELLS: u64 = 10_000_000;
/// Default cap on the number of HNF candidates scanned.
pub const DEFAULT_MAX_HNF: u64 = 1_000_000;

/// Ordered factorizations of `k` into `d` positive factors, lexicographic.
fn ordered_factorizations(k: u64, d: usize) -> Vec<Vec<u64>> {
    if d == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for first in (1..=k).filter(|f| k.is_multiple_of(*f)) {
        for mut rest in ordered_factorizations(k / first, d - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Number of HNF matrices of determinant `k` in dimension `d`.
pub fn hnf_count(d: usize, k: u64) -> u128 {
    ordered_factorizations(k, d)
        .iter()
        .map(|diag| diag.iter().enumerate().map(|(i, &h)| (h as u128).pow((d - 1 - i) as u32)).product::<u128>())
        .sum()
}

/// All sublattices of index `k` in `Z^d`, one HNF matrix each, ordered by
/// diagonal and then by the entries above it.
pub fn enumerate_hnf(d: usize, k: u64, max_candidates: u64) -> Result<Vec<HnfMatrix>> {
    if d == 0 || k == 0 {
        return Err(Error::Invalid("dimension and index must be positive".into()));
    }
    let count = hnf_count(d, k);
    if count > max_candidates as u128 {
        return Err(Error::BudgetExceeded(format!("{count} HNF matrices of determinant {k} in dimension {d}")));
    }
    let mut out = Vec::with_capacity(count as usize);
    for diag in ordered_factorizations(k, d) {
        // free entries (i, j), i < j, each in [0, diag[i])
        let slots: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
        let mut rows: Vec<Vec<i64>> =
            (0..d).map(|i| (0..d).map(|j| if i == j { diag[i] as i64 } else { 0 }).collect()).collect();
        loop {
            out.push(HnfMatrix::from_rows_unchecked(rows.clone()));
            // odometer over the slots, last slot fastest
            let mut idx = slots.len();
            let advanced = loop {
                if idx == 0 {
                    break false;
                }
                idx -= 1;
                let (i, j) = slots[idx];
                rows[i][j] += 1;
                if rows[i][j] < diag[i] as i64 {
                    break true;
                }
                rows[i][j] = 0;
            };
            if !advanced {
                break;
            }
        }
    }
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

/// HNF of the lattice spanned by `generators` (as columns).
pub fn hnf_from_generators(generators: &[Point], d: usize) -> Result<HnfMatrix> {
    if generators.iter().any(|g| g.dim() != d) {
        return Err(Error::Degenerate("generator dimension mismatch".into()));
    }
    let mut pool: Vec<Vec<i128>> = generators.iter().map(|g| g.0.iter().map(|&c| c as i128).collect()).collect();
    let mut columns: Vec<Vec<i128>> = vec![Vec::new(); d];
    for row in (0..d).rev() {
        // Euclid on coordinate `row` across the pool.
        loop {
            let mut nonzero: Vec<usize> = (0..pool.len()).filter(|&i| pool[i][row] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by_key(|&i| pool[i][row].abs());
            let pivot = nonzero[0];
            let pv = pool[pivot].clone();
            for &i in &nonzero[1..] {
                let q = pool[i][row].div_euclid(pv[row]);
                for (c, p) in pool[i].iter_mut().zip(&pv) {
                    *c -= q * p;
                }
            }
        }
        let Some(pos) = pool.iter().position(|v| v[row] != 0) else {
            return Err(Error::Degenerate(format!("generators do not span coordinate {row}")));
        };
        let mut col = pool.swap_remove(pos);
        if col[row] < 0 {
            col.iter_mut().for_each(|c| *c = -*c);
        }
        columns[row] = col;
    }
    for j in 0..d {
        for i in (0..j).rev() {
            let q = columns[j][i].div_euclid(columns[i][i]);
            if q != 0 {
                let ci = columns[i].clone();
                for (c, p) in columns[j].iter_mut().zip(&ci) {
                    *c -= q * p;
                }
            }
        }
    }
    let rows: Vec<Vec<i64>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| i64::try_from(columns[j][i]).map_err(|_| Error::Degenerate("entry overflows i64".into())))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    HnfMatrix::new(rows)
}

/// Canonical representative of `v + L`.
pub fn coset_key(v: &Point, lattice: &HnfMatrix) -> Result<Point> {
    if v.dim() != lattice.d() {
        return Err(Error::WrongDimension { expected: lattice.d(), got: v.dim() });
    }
    Ok(lattice.reduce(v))
}

/// Whether `s` meets every coset of `lattice` exactly once.
pub fn is_transversal(s: &Tile, lattice: &HnfMatrix) -> bool {
    LatticeCertificate { lattice: lattice.clone() }.verify(s)
}

/// First lattice (in [`enumerate_hnf`] order) that `s` is a transversal of.
pub fn find_lattice_tiling(s: &Tile, max_candidates: u64) -> Result<Option<LatticeCertificate>> {
    let candidates = enumerate_hnf(s.d(), s.len() as u64, max_candidates)?;
    Ok(candidates.into_par_iter().find_first(|l| is_transversal(s, l)).map(|lattice| LatticeCertificate { lattice }))
}

/// A torus `Z_{m_1} x ... x Z_{m_d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusSpec {
    dims: Vec<i64>,
}

impl TorusSpec {
    pub fn new(dims: Vec<i64>) -> Result<TorusSpec> {
        if dims.is_empty() || dims.iter().any(|&m| m < 1) {
            return Err(Error::Invalid(format!("torus dimensions must be positive, got {dims:?}")));
        }
        Ok(TorusSpec { dims })
    }

    pub fn dims(&self) -> &[i64] {
        &self.dims
    }

    pub fn volume(&self) -> u128 {
        self.dims.iter().map(|&m| m as u128).product()
    }
}

/// Limits for torus and lattice searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub max_cells: u64,
    pub max_hnf: u64,
    /// Backtracking placements over the whole query.
    pub max_placements: u64,
    /// Number of tori tried by [`decide_zd`].
    pub max_tori: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_cells: DEFAULT_MAX_CELLS, max_hnf: DEFAULT_MAX_HNF, max_placements: 2_000_000, max_tori: 48 }
    }
}

struct TorusSearch<'a> {
    dims: &'a [i64],
    strides: Vec<usize>,
    shape: Vec<Vec<i64>>,
    covered: Vec<bool>,
    count: usize,
}

/// How many uncovered cells the most-constrained-first rule inspects.
const MRV_WINDOW: usize = 32;

impl<'a> TorusSearch<'a> {
    fn new(dims: &'a [i64], shape: Vec<Vec<i64>>) -> Self {
        let d = dims.len();
        let mut strides = vec![1usize; d];
        for i in (0..d.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1] as usize;
        }
        let volume = strides[0] * dims[0] as usize;
        TorusSearch { dims, strides, shape, covered: vec![false; volume], count: 0 }
    }

    fn decode(&self, mut idx: usize) -> Vec<i64> {
        self.strides
            .iter()
            .map(|&s| {
                let c = idx / s;
                idx %= s;
                c as i64
            })
            .collect()
    }

    fn cells(&self, z: &[i64]) -> impl Iterator<Item = usize> + '_ {
        let z = z.to_vec();
        self.shape.iter().map(move |s| {
            s.iter()
                .zip(&z)
                .zip(self.dims)
                .zip(&self.strides)
                .map(|(((a, b), m), st)| (a + b).rem_euclid(*m) as usize * st)
                .sum()
        })
    }

    fn fits(&self, z: &[i64]) -> bool {
        self.cells(z).all(|c| !self.covered[c])
    }

    fn set(&mut self, z: &[i64], value: bool) {
        let cells: Vec<usize> = self.cells(z).collect();
        for c in cells {
            self.covered[c] = value;
        }
        if value {
            self.count += self.shape.len();
        } else {
            self.count -= self.shape.len();
        }
    }

    /// Valid placements covering `cell`.
    fn options(&self, cell: usize) -> Vec<Vec<i64>> {
        let c = self.decode(cell);
        let mut out: Vec<Vec<i64>> = self
            .shape
            .iter()
            .map(|s| c.iter().zip(s).zip(self.dims).map(|((a, b), m)| (a - b).rem_euclid(*m)).collect::<Vec<i64>>())
            .filter(|z| self.fits(z))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Most constrained cell among the first uncovered cells.
    fn choose(&self) -> Vec<Vec<i64>> {
        let mut best: Option<Vec<Vec<i64>>> = None;
        for cell in (0..self.covered.len()).filter(|&c| !self.covered[c]).take(MRV_WINDOW) {
            let opts = self.options(cell);
            if opts.len() <= 1 {
                return opts;
            }
            if best.as_ref().is_none_or(|b| opts.len() < b.len()) {
                best = Some(opts);
            }
        }
        best.unwrap_or_default()
    }
}

/// Searches for an exact cover of the torus by translates of `s`.
///
/// `NotTile` here means only that this torus admits no cover.
pub fn tiles_torus(s: &Tile, spec: &TorusSpec, budget: &SearchBudget) -> Result<Decision> {
    let d = s.d();
    if spec.dims.len() != d {
        return Err(Error::WrongDimension { expected: d, got: spec.dims.len() });
    }
    let volume = spec.volume();
    if volume > budget.max_cells as u128 {
        return Err(Error::BudgetExceeded(format!("torus volume {volume} above {} cells", budget.max_cells)));
    }
    if !volume.is_multiple_of(s.len() as u128) {
        return Err(Error::BadDivisibility { size: s.len(), volume: volume as u64 });
    }
    let mut spent = SearchSpent::default();
    let reduced: Vec<Vec<i64>> =
        s.points().iter().map(|p| p.0.iter().zip(&spec.dims).map(|(c, m)| c.rem_euclid(*m)).collect()).collect();
    if reduced.iter().collect::<HashSet<_>>().len() != reduced.len() {
        // every translate overlaps itself
        return Ok(Decision::not_tile(None, spent).with_note("tile points collide modulo the torus"));
    }
    let mut search = TorusSearch::new(&spec.dims, reduced);
    let volume = volume as usize;

    struct Frame {
        options: Vec<Vec<i64>>,
        next: usize,
        placed: bool,
    }
    // Covers are translation invariant, so one placement may sit at 0.
    let origin = vec![0i64; d];
    search.set(&origin, true);
    spent.placements_tried += 1;
    let mut frames: Vec<Frame> = Vec::new();
    'outer: loop {
        if search.count == volume {
            let mut placements = vec![Point(origin.clone())];
            placements.extend(frames.iter().map(|f| Point(f.options[f.next - 1].clone())));
            placements.sort();
            let cert = TorusCertificate { dims: spec.dims.clone(), placements };
            debug_assert!(cert.verify(s));
            return Ok(Decision::tiles(Certificate::Torus(cert), spent));
        }
        spent.states_visited += 1;
        frames.push(Frame { options: search.choose(), next: 0, placed: false });
        loop {
            let Some(top) = frames.last_mut() else {
                return Ok(Decision::not_tile(None, spent).with_note("no exact cover of this torus"));
            };
            if top.placed {
                let z = top.options[top.next - 1].clone();
                top.placed = false;
                search.set(&z, false);
            }
            let top = frames.last_mut().expect("nonempty");
            if top.next < top.options.len() {
                let z = top.options[top.next].clone();
                top.next += 1;
                top.placed = true;
                if spent.placements_tried >= budget.max_placements {
                    spent.exhausted = true;
                    return Ok(Decision::unknown(spent, "placement budget reached"));
                }
                spent.placements_tried += 1;
                search.set(&z, true);
                continue 'outer;
            }
            frames.pop();
        }
    }
}

/// Tori tried by [`decide_zd`]: cubes of side `q * n`, then every shape of
/// volume divisible by `|s|`, smallest volume first.
pub fn torus_schedule(s: &Tile, budget: &SearchBudget) -> Vec<TorusSpec> {
    let d = s.d();
    let k = s.len() as u64;
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut q = 1i64;
    while let Some(vol) = ((q * s.n()) as u64).checked_pow(d as u32) {
        if vol > budget.max_cells {
            break;
        }
        if vol % k == 0 {
            out.push(vec![q * s.n(); d]);
        }
        q += 1;
    }
    let mut vol = k;
    'fill: while vol <= budget.max_cells {
        for f in ordered_factorizations(vol, d) {
            if out.len() >= budget.max_tori.saturating_mul(4) {
                break 'fill;
            }
            out.push(f.into_iter().map(|m| m as i64).collect());
        }
        vol += k;
    }
    out.sort_by_key(|dims| (dims.iter().map(|&m| m as u128).product::<u128>(), dims.clone()));
    out.dedup();
    out.truncate(budget.max_tori);
    out.into_iter().map(|dims| TorusSpec { dims }).collect()
}

/// Tri-state tiling decision for any dimension.
///
/// `d = 1` delegates to the complete line decision. For `d >= 2` a lattice
/// certificate is tried first, then tori from [`torus_schedule`]; the answer
/// is `Tiles` on success and `Unknown` otherwise.
pub fn decide_zd(s: &Tile, budget: &SearchBudget) -> Result<Decision> {
    if s.d() == 1 {
        return line_tiler::decide_line(s);
    }
    let mut spent = SearchSpent::default();
    let hnf = hnf_count(s.d(), s.len() as u64);
    if hnf <= budget.max_hnf as u128 {
        spent.states_visited += hnf as u64;
        if let Some(cert) = find_lattice_tiling(s, budget.max_hnf)? {
            return Ok(Decision::tiles(Certificate::Lattice(cert), spent));
        }
    }
    for spec in torus_schedule(s, budget) {
        let remaining = budget.max_placements.saturating_sub(spent.placements_tried);
        if remaining == 0 {
            spent.exhausted = true;
            break;
        }
        let local = SearchBudget { max_placements: remaining, ..*budget };
        let decision = tiles_torus(s, &spec, &local)?;
        spent.absorb(SearchSpent { exhausted: false, ..decision.spent() });
        match decision.status() {
            Status::Tiles => {
                let cert = decision.certificate().cloned().expect("tiles decision carries a certificate");
                return Ok(Decision::tiles(cert, spent));
            }
            Status::Unknown => {
                spent.exhausted = true;
                break;
            }
            Status::NotTile => {}
        }
    }
    Ok(Decision::unknown(spent, "no lattice or torus certificate within budget"))
}
