//! Value types shared by every module: points, tiles, lattice bases,
//! tiling decisions and the certificates that back them.
//!
//! Boxes are 0-based: the side-`n` box is `{0, ..., n-1}^d`. Tiles are
//! counted as subsets of the box, so `{0}` and `{1}` are different tiles
//! of the side-2 box even though one is a translate of the other.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A point of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<i64>);

impl Point {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Point(coords.into())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn zero(d: usize) -> Self {
        Point(vec![0; d])
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl From<Vec<i64>> for Point {
    fn from(v: Vec<i64>) -> Self {
        Point(v)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite nonempty subset of the box `[0, n)^d`, kept sorted and
/// deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Tile {
    d: usize,
    n: i64,
    points: Vec<Point>,
}

#[derive(Deserialize)]
struct RawTile {
    d: usize,
    n: i64,
    points: Vec<Vec<i64>>,
}

/// Sorts and deduplicates `raw`, checking every point against the box.
pub fn normalize_tile(raw: Vec<Point>, d: usize, n: i64) -> Result<Tile> {
    if d == 0 {
        return Err(Error::BadDimension { point: vec![], expected: 1, got: 0 });
    }
    if n < 1 {
        return Err(Error::Invalid(format!("box side must be positive, got {n}")));
    }
    if raw.is_empty() {
        return Err(Error::EmptySet);
    }
    for p in &raw {
        if p.dim() != d {
            return Err(Error::BadDimension { point: p.0.clone(), expected: d, got: p.dim() });
        }
        if let Some(&c) = p.0.iter().find(|&&c| c < 0 || c >= n) {
            return Err(Error::OutOfBox { point: p.0.clone(), coord: c, n });
        }
    }
    let mut points = raw;
    points.sort();
    points.dedup();
    Ok(Tile { d, n, points })
}

impl Tile {
    /// Builds a one-dimensional tile from integer positions.
    pub fn line(n: i64, coords: impl IntoIterator<Item = i64>) -> Result<Tile> {
        normalize_tile(coords.into_iter().map(|c| Point(vec![c])).collect(), 1, n)
    }

    /// Builds a tile from the set bits of `mask` (bit `i` is the point `i`).
    pub fn from_mask(n: usize, mask: u64) -> Result<Tile> {
        Tile::line(n as i64, (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i as i64))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false: the empty set is not a tile.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Volume `n^d` of the enclosing box.
    pub fn box_volume(&self) -> u128 {
        (self.n as u128).pow(self.d as u32)
    }

    /// Coordinates of a one-dimensional tile.
    pub fn coords_1d(&self) -> Result<Vec<i64>> {
        self.expect_dim(1)?;
        Ok(self.points.iter().map(|p| p.0[0]).collect())
    }

    pub fn expect_dim(&self, d: usize) -> Result<()> {
        if self.d != d {
            return Err(Error::WrongDimension { expected: d, got: self.d });
        }
        Ok(())
    }

    /// Canonical JSON text, e.g. `{"d":1,"n":6,"points":[[0],[4]]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tile serialization is infallible")
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("tile serialization is infallible")
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

pub fn serialize_tile(t: &Tile) -> String {
    t.to_json()
}

/// Parses tile JSON, normalizing the point list.
pub fn parse_tile(text: &str) -> Result<Tile> {
    let raw: RawTile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    tile_from_raw(raw)
}

pub fn tile_from_value(v: Value) -> Result<Tile> {
    let raw: RawTile =
        serde_json::from_value(v).map_err(|e| Error::Parse { line: 0, column: 0, message: e.to_string() })?;
    tile_from_raw(raw)
}

fn tile_from_raw(raw: RawTile) -> Result<Tile> {
    normalize_tile(raw.points.into_iter().map(Point).collect(), raw.d, raw.n)
}

/// `max - min` of a one-dimensional tile.
pub fn diameter(t: &Tile) -> Result<i64> {
    let c = t.coords_1d()?;
    Ok(c[c.len() - 1] - c[0])
}

/// Upper-triangular basis of a finite-index sublattice of `Z^d`, in
/// Hermite normal form.
///
/// The lattice is spanned by the columns. Column `j` has support in rows
/// `0..=j`; each entry right of the diagonal is reduced modulo the diagonal
/// entry of its own row, `0 <= h[i][j] < h[i][i]` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HnfMatrix {
    entries: Vec<Vec<i64>>,
}

impl HnfMatrix {
    /// Validates `rows` as an HNF matrix.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<HnfMatrix> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::Degenerate("empty matrix".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::Degenerate(format!("row {i} has length {}, expected {d}", row.len())));
            }
            if row[i] < 1 {
                return Err(Error::Degenerate(format!("diagonal entry {i} is {}", row[i])));
            }
            for (j, &h) in row.iter().enumerate() {
                if j < i && h != 0 {
                    return Err(Error::Degenerate(format!("entry ({i},{j}) below the diagonal is {h}")));
                }
                if j > i && !(0..row[i]).contains(&h) {
                    return Err(Error::Degenerate(format!("entry ({i},{j}) = {h} not reduced modulo {}", row[i])));
                }
            }
        }
        Ok(HnfMatrix { entries: rows })
    }

    pub fn diagonal(diag: &[i64]) -> Result<HnfMatrix> {
        let d = diag.len();
        let rows = (0..d).map(|i| (0..d).map(|j| if i == j { diag[i] } else { 0 }).collect()).collect();
        HnfMatrix::new(rows)
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<i64>>) -> HnfMatrix {
        debug_assert!(HnfMatrix::new(rows.clone()).is_ok());
        HnfMatrix { entries: rows }
    }

    pub fn d(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    /// Index of the lattice in `Z^d`.
    pub fn det(&self) -> u128 {
        (0..self.d()).map(|i| self.entries[i][i] as u128).product()
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Point {
        Point((0..self.d()).map(|i| self.entries[i][j]).collect())
    }

    /// Canonical representative of `v + L` in `prod [0, h_ii)`.
    pub fn reduce(&self, v: &Point) -> Point {
        let d = self.d();
        assert_eq!(v.dim(), d, "dimension mismatch");
        let mut w = v.0.clone();
        for i in (0..d).rev() {
            let q = w[i].div_euclid(self.entries[i][i]);
            if q != 0 {
                for (r, wr) in w.iter_mut().enumerate().take(i + 1) {
                    *wr -= q * self.entries[r][i];
                }
            }
        }
        Point(w)
    }

    pub fn contains(&self, v: &Point) -> bool {
        self.reduce(v).0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for HnfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.entries).unwrap_or_default())
    }
}

/// One-dimensional periodic tiling `S + (offsets + pZ) = Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodCertificate {
    pub period: i64,
    pub offsets: Vec<i64>,
}

impl PeriodCertificate {
    pub fn verify(&self, tile: &Tile) -> bool {
        let Ok(coords) = tile.coords_1d() else { return false };
        verify_period_cover(&coords, self.period, &self.offsets)
    }
}

/// True iff `{s + r mod p}` covers each residue of `Z_p` exactly once.
pub(crate) fn verify_period_cover(coords: &[i64], period: i64, offsets: &[i64]) -> bool {
    if period < 1 || offsets.is_empty() {
        return false;
    }
    if !offsets.windows(2).all(|w| w[0] < w[1]) || offsets.iter().any(|&r| !(0..period).contains(&r)) {
        return false;
    }
    if (offsets.len() as u128) * (coords.len() as u128) != period as u128 {
        return false;
    }
    let mut hit = vec![false; period as usize];
    for &s in coords {
        for &r in offsets {
            let c = (s + r).rem_euclid(period) as usize;
            if hit[c] {
                return false;
            }
            hit[c] = true;
        }
    }
    true
}

/// Tiling by the translates of a lattice: the tile is a transversal of it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeCertificate {
    pub lattice: HnfMatrix,
}

impl LatticeCertificate {
    pub fn verify(&self, tile: &Tile) -> bool {
        if tile.d() != self.lattice.d() || self.lattice.det() != tile.len() as u128 {
            return false;
        }
        let mut keys = HashSet::with_capacity(tile.len());
        tile.points().iter().all(|p| keys.insert(self.lattice.reduce(p)))
    }
}

/// Exact cover of the torus `Z_{m_1} x ... x Z_{m_d}` by translates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusCertificate {
    pub dims: Vec<i64>,
    pub placements: Vec<Point>,
}

impl TorusCertificate {
    pub fn verify(&self, tile: &Tile) -> bool {
        if self.dims.len() != tile.d() || self.dims.iter().any(|&m| m < 1) {
            return false;
        }
        let volume: u128 = self.dims.iter().map(|&m| m as u128).product();
        if (tile.len() as u128) * (self.placements.len() as u128) != volume {
            return false;
        }
        let mut covered = BTreeSet::new();
        for z in &self.placements {
            if z.dim() != tile.d() {
                return false;
            }
            for s in tile.points() {
                let cell: Vec<i64> =
                    s.0.iter().zip(&z.0).zip(&self.dims).map(|((a, b), m)| (a + b).rem_euclid(*m)).collect();
                if !covered.insert(cell) {
                    return false;
                }
            }
        }
        covered.len() as u128 == volume
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    Period(PeriodCertificate),
    Lattice(LatticeCertificate),
    Torus(TorusCertificate),
}

impl Certificate {
    pub fn verify(&self, tile: &Tile) -> bool {
        match self {
            Certificate::Period(c) => c.verify(tile),
            Certificate::Lattice(c) => c.verify(tile),
            Certificate::Torus(c) => c.verify(tile),
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Certificate::Period(c) => json!({"kind": "period", "period": c.period, "offsets": c.offsets}),
            Certificate::Lattice(c) => json!({
                "kind": "lattice",
                "hnf": c.lattice.entries(),
                "det": c.lattice.det() as u64,
            }),
            Certificate::Torus(c) => json!({"kind": "torus", "dims": c.dims, "placements": c.placements}),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Tiles,
    NotTile,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Tiles => "tiles",
            Status::NotTile => "not_tile",
            Status::Unknown => "unknown",
        }
    }
}

/// Work counters reported with every decision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SearchSpent {
    pub states_visited: u64,
    pub placements_tried: u64,
    /// Set when a configured cap cut the search short.
    pub exhausted: bool,
}

impl SearchSpent {
    pub fn absorb(&mut self, other: SearchSpent) {
        self.states_visited += other.states_visited;
        self.placements_tried += other.placements_tried;
        self.exhausted |= other.exhausted;
    }
}

/// Tri-state outcome of a tiling query.
///
/// `Tiles` always carries a certificate; `NotTile` usually carries a
/// witness cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    status: Status,
    certificate: Option<Certificate>,
    witness: Option<Point>,
    spent: SearchSpent,
    note: Option<String>,
}

impl Decision {
    pub fn tiles(certificate: Certificate, spent: SearchSpent) -> Decision {
        Decision { status: Status::Tiles, certificate: Some(certificate), witness: None, spent, note: None }
    }

    pub fn not_tile(witness: Option<Point>, spent: SearchSpent) -> Decision {
        Decision { status: Status::NotTile, certificate: None, witness, spent, note: None }
    }

    pub fn unknown(spent: SearchSpent, note: impl Into<String>) -> Decision {
        Decision { status: Status::Unknown, certificate: None, witness: None, spent, note: Some(note.into()) }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Decision {
        self.note = Some(note.into());
        self
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        self.certificate.as_ref()
    }

    pub fn witness(&self) -> Option<&Point> {
        self.witness.as_ref()
    }

    pub fn spent(&self) -> SearchSpent {
        self.spent
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    pub fn period_certificate(&self) -> Option<&PeriodCertificate> {
        match &self.certificate {
            Some(Certificate::Period(c)) => Some(c),
            _ => None,
        }
    }

    pub fn to_value(&self) -> Value {
        let mut obj = json!({"status": self.status.as_str()});
        let map = obj.as_object_mut().expect("object literal");
        if let Some(c) = &self.certificate {
            map.insert("certificate".into(), c.to_value());
        }
        map.insert("budget".into(), serde_json::to_value(self.spent).expect("plain struct"));
        if let Some(w) = &self.witness {
            map.insert("witness".into(), json!(w));
        }
        if let Some(n) = &self.note {
            map.insert("note".into(), json!(n));
        }
        obj
    }
}
