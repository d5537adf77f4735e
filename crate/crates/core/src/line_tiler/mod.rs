//! Translational tiling of `Z` by a finite set.
//!
//! The decision procedure is the forced-placement frontier automaton. Sweep
//! `Z` left to right; at the leftmost uncovered cell `p` every cell left of
//! `p` is already covered, so the only translate that can cover `p` is the
//! one whose minimum sits on `p`. The state is the coverage of the window
//! `[p, p + diameter)` and each state has at most one successor. A tiling of
//! `Z` is a bi-infinite walk in this functional graph, so `S` tiles iff the
//! graph has a cycle, and the cycle is a periodic tiling.
//!
//! Running from the empty window only decides tiling of a half-line
//! (`{0, 1, 5}` tiles `Z` but not `N`), so proving non-tiling needs either
//! the whole state graph or the cyclotomic criterion in [`cyclotomic`].
//! For sizes with at most two prime factors (every size up to 29) the
//! criterion is exact and also yields a state on a cycle, from which the
//! automaton produces the certificate. Larger sizes fall back to an
//! exhaustive sweep of the state graph under the state cap.

pub(crate) mod cyclotomic;
mod frontier;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::domain::{Certificate, Decision, PeriodCertificate, Point, SearchSpent, Tile};
use crate::error::{Error, Result};
use crate::parallel;

use frontier::{Frontier, WideFrontier};

/// Default cap on automaton states visited by a single decision.
pub const DEFAULT_STATE_CAP: u64 = 1 << 26;

/// Default largest box side / ground-set size accepted by the census.
pub const DEFAULT_MAX_N: usize = 24;

/// Outcome of the automaton on a normalized shape (min 0, gcd 1).
#[derive(Clone, Debug, PartialEq, Eq)]
enum ShapeOutcome {
    /// Cycle found: period and the placement positions along one period.
    Tiles {
        period: i64,
        placements: Vec<i64>,
    },
    /// The run from the empty window conflicted at this cell.
    NotTile {
        conflict: i64,
    },
    Unknown {
        reason: String,
    },
}

enum Run {
    Cycle { period: i64, placements: Vec<i64> },
    Conflict { cell: i64 },
    Capped,
}

/// Forced-placement automaton for one shape.
struct Automaton<F> {
    mask: F,
    width: usize,
}

impl<F: Frontier> Automaton<F> {
    fn new(shape: &[i64]) -> Self {
        let diameter = shape[shape.len() - 1] as usize;
        Automaton { mask: F::with_bits(diameter + 1, shape.iter().map(|&s| s as usize)), width: diameter + 1 }
    }

    fn state(&self, bits: impl IntoIterator<Item = usize>) -> F {
        F::with_bits(self.width, bits)
    }

    /// One forced move: place at the current cell and advance.
    /// Returns the advance or the overlapping offset.
    #[inline]
    fn step(&self, state: &mut F) -> std::result::Result<usize, usize> {
        if let Some(cell) = state.first_overlap(&self.mask) {
            return Err(cell);
        }
        state.or_assign(&self.mask);
        Ok(state.advance())
    }

    /// Follows forced moves from `start` until a state repeats or a
    /// placement overlaps.
    fn run_from(&self, start: F, cap: u64, spent: &mut SearchSpent) -> Run {
        let mut seen: HashMap<F, (usize, i64)> = HashMap::new();
        let mut placements = Vec::new();
        let mut state = start;
        let mut pos = 0i64;
        loop {
            if let Some(&(idx, at)) = seen.get(&state) {
                let period = pos - at;
                return Run::Cycle { period, placements: placements.split_off(idx) };
            }
            if spent.states_visited >= cap {
                spent.exhausted = true;
                return Run::Capped;
            }
            spent.states_visited += 1;
            seen.insert(state.clone(), (placements.len(), pos));
            spent.placements_tried += 1;
            match self.step(&mut state) {
                Ok(adv) => {
                    placements.push(pos);
                    pos += adv as i64;
                }
                Err(off) => return Run::Conflict { cell: pos + off as i64 },
            }
        }
    }

    /// Searches the whole state graph for a cycle. States are windows with
    /// bit 0 clear; start states are enumerated in increasing bit order.
    fn search_all(&self, cap: u64, spent: &mut SearchSpent) -> Option<Run> {
        let free_bits = self.width.saturating_sub(2);
        let mut dead: HashSet<F> = HashSet::new();
        let total: u128 = 1u128 << free_bits.min(100);
        let mut counter: u128 = 0;
        while counter < total {
            let start = self.state((0..free_bits.min(100)).filter(|i| counter >> i & 1 == 1).map(|i| i + 1));
            counter += 1;
            if dead.contains(&start) {
                continue;
            }
            let mut path: HashMap<F, (usize, i64)> = HashMap::new();
            let mut order: Vec<F> = Vec::new();
            let mut placements = Vec::new();
            let mut state = start;
            let mut pos = 0i64;
            loop {
                if dead.contains(&state) {
                    break;
                }
                if let Some(&(idx, at)) = path.get(&state) {
                    return Some(Run::Cycle { period: pos - at, placements: placements.split_off(idx) });
                }
                if spent.states_visited >= cap {
                    spent.exhausted = true;
                    return Some(Run::Capped);
                }
                spent.states_visited += 1;
                path.insert(state.clone(), (placements.len(), pos));
                order.push(state.clone());
                spent.placements_tried += 1;
                match self.step(&mut state) {
                    Ok(adv) => {
                        placements.push(pos);
                        pos += adv as i64;
                    }
                    Err(_) => break,
                }
            }
            dead.extend(order);
        }
        None
    }

    /// State at a placement position of the periodic tiling `shape + B + MZ`.
    fn seed_from_complement(&self, shape: &[i64], period: i64, complement: &[i64]) -> Option<F> {
        let diameter = shape[shape.len() - 1];
        let mut bits = Vec::new();
        for &b in complement {
            // lifts z = b + kM with -diameter <= z < 0
            let mut z = (b + diameter).rem_euclid(period) - diameter;
            while z < 0 {
                for &s in shape {
                    let cell = z + s;
                    if (0..diameter).contains(&cell) {
                        bits.push(cell as usize);
                    }
                }
                z += period;
            }
        }
        bits.sort_unstable();
        let before = bits.len();
        bits.dedup();
        (bits.len() == before && bits.first() != Some(&0)).then(|| self.state(bits))
    }
}

/// Tunables for a single decision.
#[derive(Clone, Copy, Debug)]
pub struct LineOptions {
    pub state_cap: u64,
}

impl Default for LineOptions {
    fn default() -> Self {
        LineOptions { state_cap: DEFAULT_STATE_CAP }
    }
}

/// Shifts to min 0 and divides by the gcd of the elements.
/// Returns `(shape, min, gcd)`.
fn reduce(coords: &[i64]) -> (Vec<i64>, i64, i64) {
    let min = coords[0];
    let shifted: Vec<i64> = coords.iter().map(|&c| c - min).collect();
    let g = shifted.iter().fold(0i64, |a, &b| gcd(a, b)).max(1);
    (shifted.iter().map(|&c| c / g).collect(), min, g)
}

pub(crate) fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn decide_shape(shape: &[i64], opts: LineOptions, spent: &mut SearchSpent) -> ShapeOutcome {
    let diameter = shape[shape.len() - 1] as usize;
    if diameter < 64 {
        decide_shape_with::<u64>(shape, opts, spent)
    } else if diameter < 128 {
        decide_shape_with::<u128>(shape, opts, spent)
    } else {
        decide_shape_with::<WideFrontier>(shape, opts, spent)
    }
}

fn decide_shape_with<F: Frontier>(shape: &[i64], opts: LineOptions, spent: &mut SearchSpent) -> ShapeOutcome {
    let automaton = Automaton::<F>::new(shape);
    let conflict = match automaton.run_from(automaton.state([]), opts.state_cap, spent) {
        Run::Cycle { period, placements } => return ShapeOutcome::Tiles { period, placements },
        Run::Conflict { cell } => cell,
        Run::Capped => return ShapeOutcome::Unknown { reason: "state cap reached".into() },
    };
    if cyclotomic::applicable(shape.len()) {
        if !cyclotomic::tiles(shape) {
            return ShapeOutcome::NotTile { conflict };
        }
        if let Some((period, b)) = cyclotomic::complement(shape, opts.state_cap as u128 * shape.len() as u128) {
            if let Some(seed) = automaton.seed_from_complement(shape, period, &b) {
                match automaton.run_from(seed, opts.state_cap, spent) {
                    Run::Cycle { period, placements } => return ShapeOutcome::Tiles { period, placements },
                    Run::Capped => return ShapeOutcome::Unknown { reason: "state cap reached".into() },
                    Run::Conflict { .. } => {}
                }
            }
        }
    }
    match automaton.search_all(opts.state_cap, spent) {
        Some(Run::Cycle { period, placements }) => ShapeOutcome::Tiles { period, placements },
        Some(_) => ShapeOutcome::Unknown { reason: "state cap reached".into() },
        None => ShapeOutcome::NotTile { conflict },
    }
}

/// Tiling verdict without a certificate, used by the census paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Tiles,
    NotTile,
    Unknown,
}

/// Decides whether the sorted, distinct `coords` tile `Z`.
pub fn classify(coords: &[i64], opts: LineOptions) -> Verdict {
    let (shape, _, _) = reduce(coords);
    if shape.len() == 1 {
        return Verdict::Tiles;
    }
    if cyclotomic::applicable(shape.len()) {
        return if cyclotomic::tiles(&shape) { Verdict::Tiles } else { Verdict::NotTile };
    }
    let mut spent = SearchSpent::default();
    match decide_shape(&shape, opts, &mut spent) {
        ShapeOutcome::Tiles { .. } => Verdict::Tiles,
        ShapeOutcome::NotTile { .. } => Verdict::NotTile,
        ShapeOutcome::Unknown { .. } => Verdict::Unknown,
    }
}

/// Decides whether a one-dimensional tile tiles `Z`.
pub fn decide_line(s: &Tile) -> Result<Decision> {
    decide_line_with(s, LineOptions::default())
}

pub fn decide_line_with(s: &Tile, opts: LineOptions) -> Result<Decision> {
    let coords = s.coords_1d()?;
    let (shape, min, g) = reduce(&coords);
    let mut spent = SearchSpent::default();
    Ok(match decide_shape(&shape, opts, &mut spent) {
        ShapeOutcome::Tiles { period, placements } => {
            let cert = lift_certificate(period, &placements, min, g);
            debug_assert!(cert.verify(s), "automaton produced a bad certificate for {s}");
            Decision::tiles(Certificate::Period(cert), spent)
        }
        ShapeOutcome::NotTile { conflict } => Decision::not_tile(Some(Point(vec![min + g * conflict])), spent),
        ShapeOutcome::Unknown { reason } => Decision::unknown(spent, reason),
    })
}

/// Decides using only the automaton: the empty-window run, then the
/// exhaustive sweep of the state graph. No cyclotomic shortcut.
pub fn decide_line_exhaustive(s: &Tile, state_cap: u64) -> Result<Decision> {
    let coords = s.coords_1d()?;
    let (shape, min, g) = reduce(&coords);
    let diameter = shape[shape.len() - 1];
    if diameter >= 64 {
        return Err(Error::LimitExceeded { what: "diameter", value: diameter as u64, max: 63 });
    }
    let automaton = Automaton::<u64>::new(&shape);
    let mut spent = SearchSpent::default();
    let conflict = match automaton.run_from(0, state_cap, &mut spent) {
        Run::Cycle { period, placements } => {
            let cert = lift_certificate(period, &placements, min, g);
            return Ok(Decision::tiles(Certificate::Period(cert), spent));
        }
        Run::Conflict { cell } => cell,
        Run::Capped => return Ok(Decision::unknown(spent, "state cap reached")),
    };
    Ok(match automaton.search_all(state_cap, &mut spent) {
        Some(Run::Cycle { period, placements }) => {
            Decision::tiles(Certificate::Period(lift_certificate(period, &placements, min, g)), spent)
        }
        Some(_) => Decision::unknown(spent, "state cap reached"),
        None => Decision::not_tile(Some(Point(vec![min + g * conflict])), spent),
    })
}

/// Maps a cycle of the reduced shape back to the original coordinates and
/// shrinks it to the least period of the tiling it describes.
fn lift_certificate(period: i64, placements: &[i64], min: i64, g: i64) -> PeriodCertificate {
    let full = period * g;
    let mut offsets: Vec<i64> =
        placements.iter().flat_map(|&q| (0..g).map(move |r| (g * q + r - min).rem_euclid(full))).collect();
    offsets.sort_unstable();
    offsets.dedup();
    minimize_period(full, offsets)
}

fn minimize_period(period: i64, offsets: Vec<i64>) -> PeriodCertificate {
    let mut member = vec![false; period as usize];
    for &o in &offsets {
        member[o as usize] = true;
    }
    for p in 1..period {
        if period % p != 0 {
            continue;
        }
        if offsets.iter().all(|&o| member[((o + p) % period) as usize]) {
            let mut reduced: Vec<i64> = offsets.iter().map(|&o| o % p).collect();
            reduced.sort_unstable();
            reduced.dedup();
            return PeriodCertificate { period: p, offsets: reduced };
        }
    }
    PeriodCertificate { period, offsets }
}

/// Period of the certificate produced by [`decide_line`].
pub fn minimal_period(s: &Tile) -> Result<i64> {
    let d = decide_line(s)?;
    match d.period_certificate() {
        Some(c) => Ok(c.period),
        None if d.status() == crate::domain::Status::Unknown => {
            Err(Error::BudgetExceeded(d.note().unwrap_or("state cap").to_string()))
        }
        None => Err(Error::NotATile),
    }
}

/// Census configuration.
#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub max_n: usize,
    /// Worker threads; 0 means available parallelism.
    pub jobs: usize,
    pub size_filter: Option<RangeInclusive<usize>>,
    pub line: LineOptions,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { max_n: DEFAULT_MAX_N, jobs: 0, size_filter: None, line: LineOptions::default() }
    }
}

impl CensusOptions {
    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn with_sizes(mut self, sizes: RangeInclusive<usize>) -> Self {
        self.size_filter = Some(sizes);
        self
    }

    fn admits(&self, size: usize) -> bool {
        self.size_filter.as_ref().is_none_or(|r| r.contains(&size))
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Invalid("n must be at least 1".into()));
        }
        if n > self.max_n || n > 63 {
            return Err(Error::LimitExceeded { what: "n", value: n as u64, max: self.max_n.min(63) as u64 });
        }
        Ok(())
    }
}

/// Exhaustive count of tiles in a one-dimensional box or ground set.
#[derive(Clone, Debug, PartialEq)]
pub struct CensusReport {
    pub n: usize,
    pub total: u64,
    pub by_size: BTreeMap<usize, u64>,
    /// Subsets the automaton could not settle within the state cap.
    pub unknown: u64,
    pub elapsed: Duration,
    /// `total^(3/n)`, in double precision.
    pub ratio: f64,
}

impl CensusReport {
    fn from_counts(n: usize, counts: &[u64], unknown: u64, elapsed: Duration) -> Self {
        let by_size: BTreeMap<usize, u64> =
            counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(s, &c)| (s, c)).collect();
        let total = by_size.values().sum::<u64>();
        CensusReport { n, total, by_size, unknown, elapsed, ratio: (total as f64).powf(3.0 / n as f64) }
    }
}

#[inline]
fn mask_coords(mask: u64) -> Vec<i64> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as i64);
        m &= m - 1;
    }
    out
}

/// Number of chunks the shape space is cut into (`2^bits`).
fn chunk_bits(n: usize) -> usize {
    n.saturating_sub(1).min(8)
}

/// Counts the nonempty subsets of `{0, ..., n-1}` that tile `Z`.
///
/// Work is done per shape (subsets containing 0): a tiling shape of
/// diameter `D` contributes its `n - D` translates, all of the same size.
/// The shape space is split by its top bits and merged by addition, so the
/// result does not depend on `jobs`.
pub fn count_box(n: usize, opts: &CensusOptions) -> Result<CensusReport> {
    opts.check_n(n)?;
    let start = Instant::now();
    let bits = chunk_bits(n);
    let low = n - 1 - bits;
    let (counts, unknown) = parallel::install(opts.jobs, || {
        (0u64..1 << bits)
            .into_par_iter()
            .map(|hi| {
                let mut counts = vec![0u64; n + 1];
                let mut unknown = 0u64;
                for lo in 0u64..1 << low {
                    let mask = ((hi << low | lo) << 1) | 1;
                    let size = mask.count_ones() as usize;
                    if !opts.admits(size) {
                        continue;
                    }
                    let diameter = 63 - mask.leading_zeros() as usize;
                    let weight = (n - diameter) as u64;
                    match classify(&mask_coords(mask), opts.line) {
                        Verdict::Tiles => counts[size] += weight,
                        Verdict::Unknown => unknown += weight,
                        Verdict::NotTile => {}
                    }
                }
                (counts, unknown)
            })
            .collect::<Vec<_>>()
    })?
    .into_iter()
    .fold((vec![0u64; n + 1], 0u64), |(mut acc, u), (c, cu)| {
        for (a, b) in acc.iter_mut().zip(&c) {
            *a += b;
        }
        (acc, u + cu)
    });
    Ok(CensusReport::from_counts(n, &counts, unknown, start.elapsed()))
}

/// All tiling subsets of `{0, ..., n-1}` as bitmasks, ascending.
pub fn tile_masks(n: usize, opts: &CensusOptions) -> Result<Vec<u64>> {
    opts.check_n(n)?;
    let bits = chunk_bits(n);
    let low = n - 1 - bits;
    let shapes: Vec<u64> = parallel::install(opts.jobs, || {
        (0u64..1 << bits)
            .into_par_iter()
            .flat_map_iter(|hi| {
                (0u64..1 << low).map(move |lo| ((hi << low | lo) << 1) | 1).filter(|&mask| {
                    opts.admits(mask.count_ones() as usize) && classify(&mask_coords(mask), opts.line) == Verdict::Tiles
                })
            })
            .collect()
    })?;
    let mut masks: Vec<u64> = shapes
        .iter()
        .flat_map(|&shape| {
            let diameter = 63 - shape.leading_zeros() as usize;
            (0..n - diameter).map(move |k| shape << k)
        })
        .collect();
    masks.sort_unstable();
    Ok(masks)
}

/// Streams every tile of `{0, ..., n-1}` with its certificate, in
/// ascending bitmask order. Certificates are computed once per shape and
/// shifted to each translate.
pub fn enumerate_box(n: usize, opts: &CensusOptions) -> Result<BoxTiles> {
    opts.check_n(n)?;
    Ok(BoxTiles {
        n,
        next: 1,
        end: 1u64 << n,
        line: opts.line,
        filter: opts.size_filter.clone(),
        cache: HashMap::new(),
    })
}

/// Iterator returned by [`enumerate_box`].
pub struct BoxTiles {
    n: usize,
    next: u64,
    end: u64,
    line: LineOptions,
    filter: Option<RangeInclusive<usize>>,
    cache: HashMap<u64, Option<PeriodCertificate>>,
}

impl Iterator for BoxTiles {
    type Item = (Tile, PeriodCertificate);

    fn next(&mut self) -> Option<Self::Item> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            if self.filter.as_ref().is_some_and(|r| !r.contains(&(mask.count_ones() as usize))) {
                continue;
            }
            let shift = mask.trailing_zeros() as i64;
            let shape = mask >> shift;
            let line = self.line;
            let cert = self
                .cache
                .entry(shape)
                .or_insert_with(|| {
                    let tile = Tile::from_mask(64 - shape.leading_zeros() as usize, shape).ok()?;
                    decide_line_with(&tile, line).ok()?.period_certificate().cloned()
                })
                .clone();
            if let Some(c) = cert {
                let mut offsets: Vec<i64> = c.offsets.iter().map(|&o| (o - shift).rem_euclid(c.period)).collect();
                offsets.sort_unstable();
                let tile = Tile::from_mask(self.n, mask).expect("mask lies inside the box");
                return Some((tile, PeriodCertificate { period: c.period, offsets }));
            }
        }
        None
    }
}

/// Counts the nonempty subsets of an arbitrary finite `m` that tile `Z`.
pub fn count_ground_set(m: &[i64], opts: &CensusOptions) -> Result<CensusReport> {
    if m.is_empty() {
        return Err(Error::EmptySet);
    }
    if m.len() > opts.max_n || m.len() > 63 {
        return Err(Error::LimitExceeded {
            what: "ground set size",
            value: m.len() as u64,
            max: opts.max_n.min(63) as u64,
        });
    }
    let mut elems = m.to_vec();
    elems.sort_unstable();
    if let Some(w) = elems.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Duplicates(w[0]));
    }
    let start = Instant::now();
    let k = elems.len();
    let bits = k.min(8);
    let low = k - bits;
    let elems = &elems;
    let (counts, unknown) = parallel::install(opts.jobs, || {
        (0u64..1 << bits)
            .into_par_iter()
            .map(|hi| {
                let mut counts = vec![0u64; k + 1];
                let mut unknown = 0u64;
                for lo in 0u64..1 << low {
                    let mask = hi << low | lo;
                    if mask == 0 {
                        continue;
                    }
                    let size = mask.count_ones() as usize;
                    if !opts.admits(size) {
                        continue;
                    }
                    let coords: Vec<i64> = mask_coords(mask).into_iter().map(|i| elems[i as usize]).collect();
                    match classify(&coords, opts.line) {
                        Verdict::Tiles => counts[size] += 1,
                        Verdict::Unknown => unknown += 1,
                        Verdict::NotTile => {}
                    }
                }
                (counts, unknown)
            })
            .collect::<Vec<_>>()
    })?
    .into_iter()
    .fold((vec![0u64; k + 1], 0u64), |(mut acc, u), (c, cu)| {
        for (a, b) in acc.iter_mut().zip(&c) {
            *a += b;
        }
        (acc, u + cu)
    });
    Ok(CensusReport::from_counts(k, &counts, unknown, start.elapsed()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Status;

    fn line(coords: &[i64]) -> Tile {
        Tile::line(coords.iter().max().unwrap() + 1, coords.iter().copied()).unwrap()
    }

    #[test]
    fn singleton_tiles_with_period_one() {
        let d = decide_line(&line(&[0])).unwrap();
        assert_eq!(d.status(), Status::Tiles);
        assert_eq!(d.period_certificate(), Some(&PeriodCertificate { period: 1, offsets: vec![0] }));
    }

    #[test]
    fn forced_conflict_witness() {
        let d = decide_line(&line(&[0, 1, 3])).unwrap();
        assert_eq!(d.status(), Status::NotTile);
        assert_eq!(d.witness(), Some(&Point(vec![3])));
    }

    #[test]
    fn pair_certificates() {
        let d = decide_line(&line(&[0, 2])).unwrap();
        assert_eq!(d.period_certificate(), Some(&PeriodCertificate { period: 4, offsets: vec![0, 1] }));
        for k in 1..20 {
            let d = decide_line(&line(&[0, k])).unwrap();
            let c = d.period_certificate().unwrap();
            assert_eq!(c.period, 2 * k);
            assert_eq!(c.offsets, (0..k).collect::<Vec<_>>());
        }
    }

    #[test]
    fn tiles_of_z_that_do_not_tile_a_half_line() {
        for s in [[0, 1, 5], [0, 2, 7], [0, 4, 5]] {
            let t = line(&s);
            let d = decide_line(&t).unwrap();
            assert_eq!(d.status(), Status::Tiles, "{s:?}");
            assert!(d.certificate().unwrap().verify(&t));
            assert_eq!(d.period_certificate().unwrap().period, 3);
        }
    }

    #[test]
    fn periods() {
        assert_eq!(minimal_period(&line(&[0])), Ok(1));
        assert_eq!(minimal_period(&line(&[0, 2])), Ok(4));
        assert_eq!(minimal_period(&line(&[0, 1, 2])), Ok(3));
        assert_eq!(minimal_period(&line(&[0, 1, 3])), Err(Error::NotATile));
    }

    #[test]
    fn translated_tile_keeps_period() {
        let t = Tile::line(20, [7, 9]).unwrap();
        let d = decide_line(&t).unwrap();
        assert_eq!(d.period_certificate().unwrap().period, 4);
        assert!(d.certificate().unwrap().verify(&t));
    }

    #[test]
    fn wide_diameters() {
        let t = Tile::line(400, [0, 1, 200, 201]).unwrap();
        let d = decide_line(&t).unwrap();
        assert_eq!(d.status(), Status::Tiles);
        assert!(d.certificate().unwrap().verify(&t));
        let t = Tile::line(400, [0, 1, 3, 300]).unwrap();
        assert_eq!(decide_line(&t).unwrap().status(), Status::NotTile);
    }

    #[test]
    fn small_box_counts() {
        let opts = CensusOptions::default().with_jobs(2);
        let totals: Vec<u64> = (1..=4).map(|n| count_box(n, &opts).unwrap().total).collect();
        assert_eq!(totals, vec![1, 3, 7, 13]);
        let masks: Vec<u64> = enumerate_box(2, &opts)
            .unwrap()
            .map(|(t, _)| t.coords_1d().unwrap().iter().fold(0, |m, &c| m | 1 << c))
            .collect();
        assert_eq!(masks, vec![1, 2, 3]);
    }

    #[test]
    fn limits() {
        let opts = CensusOptions::default();
        assert!(matches!(count_box(25, &opts), Err(Error::LimitExceeded { .. })));
        assert!(matches!(count_ground_set(&[1, 1], &opts), Err(Error::Duplicates(1))));
    }

    #[test]
    fn ground_sets() {
        let opts = CensusOptions::default().with_jobs(1);
        assert_eq!(count_ground_set(&[0, 10], &opts).unwrap().total, 3);
        let powers = count_ground_set(&[1, 2, 4, 8], &opts).unwrap();
        assert!(powers.total >= 10);
        assert_eq!(count_ground_set(&[0, 1, 2, 3, 4, 5], &opts).unwrap().total, count_box(6, &opts).unwrap().total);
    }

    #[test]
    fn size_filter() {
        let opts = CensusOptions::default().with_sizes(2..=2);
        // every pair tiles
        assert_eq!(count_box(6, &opts).unwrap().total, 15);
    }
}
