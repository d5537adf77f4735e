//! Numeric evaluation of the entropy upper bound on the number of tiles.
//!
//! Everything here is closed-form arithmetic in `log2` space, except
//! [`shearer_bound_from_instance`], which builds the cover `A_j` for a
//! concrete tile and translation sequence and checks it cell by cell.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::domain::{Point, Tile};
use crate::error::{Error, Result};

/// `log2(3) / 3`, the per-cell rate of the word family.
pub fn log2_cbrt3() -> f64 {
    3f64.log2() / 3.0
}

/// Parameters of the bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundParams {
    pub n: u64,
    pub d: u32,
    /// Block scale.
    pub k: u64,
    /// Density cutoff.
    pub alpha: f64,
    /// Number of translates.
    pub ell: u64,
    /// Constant in the exponent of the translation-sequence count.
    pub seq_const: f64,
    /// Wrap the box into a torus, which removes boundary translates.
    pub torus_mode: bool,
}

impl BoundParams {
    /// `k = ceil(n^(1/(2d)))`, `ell = 3 k^d`, `seq_const = 1`.
    pub fn new(n: u64, d: u32, alpha: f64) -> Result<BoundParams> {
        let k = default_k(n, d);
        let p = BoundParams { n, d, k, alpha, ell: 3 * k.pow(d), seq_const: 1.0, torus_mode: false };
        p.validate()?;
        Ok(p)
    }

    pub fn with_k(mut self, k: u64) -> Self {
        self.k = k;
        self
    }

    pub fn with_ell(mut self, ell: u64) -> Self {
        self.ell = ell;
        self
    }

    pub fn with_seq_const(mut self, c: f64) -> Self {
        self.seq_const = c;
        self
    }

    pub fn with_torus(mut self, torus: bool) -> Self {
        self.torus_mode = torus;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.d == 0 || self.k == 0 || self.ell == 0 {
            return Err(Error::Domain("n, d, k and ell must be positive".into()));
        }
        if !(self.alpha > 0.0 && self.alpha <= 0.5) {
            return Err(Error::Domain(format!("alpha must lie in (0, 1/2], got {}", self.alpha)));
        }
        if !self.seq_const.is_finite() || self.seq_const < 0.0 {
            return Err(Error::Domain("seq_const must be finite and nonnegative".into()));
        }
        Ok(())
    }

    /// `v_n = n^d`.
    pub fn volume(&self) -> f64 {
        (self.n as f64).powi(self.d as i32)
    }

    fn kd(&self) -> f64 {
        (self.k as f64).powi(self.d as i32)
    }
}

/// Smallest integer `k` with `k^(2d) >= n`.
pub fn default_k(n: u64, d: u32) -> u64 {
    let mut k = (n as f64).powf(1.0 / (2.0 * d as f64)).ceil().max(1.0) as u64;
    while k > 1 && (k - 1).checked_pow(2 * d).is_some_and(|x| x >= n) {
        k -= 1;
    }
    while k.checked_pow(2 * d).is_some_and(|x| x < n) {
        k += 1;
    }
    k
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RateReport {
    /// `ell / k^d`.
    pub ratio: f64,
    /// Bound on the number of translates leaving the box.
    pub j_bound: f64,
    /// Entropy bound per cell, in bits.
    pub bits_per_cell: f64,
    /// Entropy bound over the whole box, in bits.
    pub total_log2_bound: f64,
}

/// Largest product of `m` nonnegative integers summing to `t`.
pub fn jensen_max_product(m: u64, t: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let (a, b) = (t / m, t % m);
    let exp = |e: u64| u32::try_from(e).map_err(|_| Error::Domain("exponent too large".into()));
    Ok(BigUint::from(a + 1).pow(exp(b)?) * BigUint::from(a).pow(exp(m - b)?))
}

/// Per-cell bits `(r log2(N+1) + (1-r) log2 N) / rho` with `N = floor(rho)`,
/// `r = rho - N`.
pub fn interpolated_rate(rho: f64) -> Result<f64> {
    if !rho.is_finite() || rho < 1.0 {
        return Err(Error::Domain(format!("rate needs rho >= 1, got {rho}")));
    }
    let n = rho.floor();
    let r = rho - n;
    Ok((r * (n + 1.0).log2() + (1.0 - r) * n.log2()) / rho)
}

/// The integer `N <= 64` maximizing `N^(1/N)`, and that maximum.
pub fn best_integer_rate() -> (u64, f64) {
    (1..=64u64)
        .map(|n| (n, (n as f64).powf(1.0 / n as f64)))
        .fold((1, 1.0), |best, cur| if cur.1 > best.1 { cur } else { best })
}

/// `f(r) = (N+1)^(r/(N+r)) N^((1-r)/(N+r))`.
pub fn lemma_f(n: u64, r: f64) -> f64 {
    let n = n as f64;
    ((r * (n + 1.0).ln() + (1.0 - r) * n.ln()) / (n + r)).exp()
}

/// `max(f(0), f(1))` minus the maximum of `f` over `grid + 1` equally spaced
/// points of `[0, 1]`.
pub fn endpoint_lemma_gap(n: u64, grid: u64) -> Result<f64> {
    if n == 0 || grid < 2 {
        return Err(Error::Domain("lemma scan needs N >= 1 and grid >= 2".into()));
    }
    let ends = lemma_f(n, 0.0).max(lemma_f(n, 1.0));
    let interior = (0..=grid).map(|i| lemma_f(n, i as f64 / grid as f64)).fold(f64::NEG_INFINITY, f64::max);
    Ok(ends - interior)
}

/// Bounds on the number of boundary translates: the packing bound
/// `((k+2)^d - (k-2)^d) / alpha` and its simplification `5 d k^(d-1) / alpha`.
pub fn packing_slack(p: &BoundParams) -> Result<(f64, f64)> {
    p.validate()?;
    if p.k < 3 {
        return Err(Error::Domain(format!("packing bound needs k >= 3, got {}", p.k)));
    }
    let (k, d) = (p.k as f64, p.d as i32);
    let exact = ((k + 2.0).powi(d) - (k - 2.0).powi(d)) / p.alpha;
    let simplified = 5.0 * p.d as f64 * k.powi(d - 1) / p.alpha;
    Ok((exact, simplified))
}

/// Entropy bound for one translation sequence.
pub fn entropy_upper(p: &BoundParams) -> Result<RateReport> {
    p.validate()?;
    let j = if p.torus_mode { 0.0 } else { packing_slack(p)?.1 };
    let ell = p.ell as f64;
    if ell <= j {
        return Err(Error::VacuousBound(format!("ell = {ell} does not exceed J = {j}")));
    }
    let ratio = ell / p.kd();
    let bits = ell / (ell - j) * interpolated_rate(ratio)?;
    Ok(RateReport { ratio, j_bound: j, bits_per_cell: bits, total_log2_bound: bits * p.volume() })
}

/// `H(alpha)` in bits.
pub fn binary_entropy(alpha: f64) -> f64 {
    let h = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    h(alpha) + h(1.0 - alpha)
}

/// `log2` of the full count bound: the small-tile term `2^(H(alpha) v)` plus
/// `(k^d v)^(C k^d) * 2^((k^d / (k^d - J)) log2(3)/3 v)` with `J` the
/// simplified packing bound.
pub fn total_count_log2(p: &BoundParams) -> Result<f64> {
    let (_, j) = packing_slack(p)?;
    let kd = p.kd();
    if kd <= j {
        return Err(Error::VacuousBound(format!("k^d = {kd} does not exceed J = {j}")));
    }
    let v = p.volume();
    let small = binary_entropy(p.alpha) * v;
    let large = p.seq_const * kd * (kd * v).log2() + kd / (kd - j) * log2_cbrt3() * v;
    let (hi, lo) = if small > large { (small, large) } else { (large, small) };
    Ok(hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2)
}

/// The cover `A_j` of a concrete tiling, and the entropy bound it gives.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShearerReport {
    /// `|A_j|` to number of cells `j`.
    pub a_sizes: BTreeMap<u64, u64>,
    pub coverage_ok: bool,
    pub ell: u64,
    /// Translates leaving the region; zero on the torus.
    pub j: u64,
    pub bound_bits: f64,
}

/// Largest region [`shearer_bound_from_instance`] will sweep.
pub const SHEARER_MAX_CELLS: u64 = 10_000_000;

/// Builds `A_j = {j - z_i} ∩ [0,n)^d` for every cell `j` of `[0, kn)^d`
/// (mod `kn` when `torus`), checks that each `j` is covered exactly once by
/// the translates `s + z_i`, and returns `sum_j log2 |A_j| / (ell - J)`.
pub fn shearer_bound_from_instance(s: &Tile, translations: &[Point], k: u64, torus: bool) -> Result<ShearerReport> {
    let d = s.d();
    if translations.first() != Some(&Point::zero(d)) {
        return Err(Error::Invalid("the first translation must be the origin".into()));
    }
    if let Some(p) = translations.iter().find(|p| p.dim() != d) {
        return Err(Error::WrongDimension { expected: d, got: p.dim() });
    }
    let n = s.n();
    let side =
        n.checked_mul(k as i64).filter(|&x| x > 0).ok_or_else(|| Error::Domain("box scale must be positive".into()))?;
    let cells = (side as u64)
        .checked_pow(d as u32)
        .filter(|&c| c <= SHEARER_MAX_CELLS)
        .ok_or(Error::LimitExceeded { what: "shearer region cells", value: u64::MAX, max: SHEARER_MAX_CELLS })?;
    // Linear index of a point of the region, after wrapping on the torus.
    let index = |p: &[i64]| -> Option<usize> {
        p.iter().try_fold(0usize, |acc, &x| {
            let x = if torus { x.rem_euclid(side) } else { x };
            (0..side).contains(&x).then(|| acc * side as usize + x as usize)
        })
    };
    let mut a_count = vec![0u64; cells as usize];
    let mut covered = vec![0u64; cells as usize];
    let mut leaving = 0u64;
    let box_cells: Vec<Vec<i64>> = (0..(n as u64).pow(d as u32))
        .map(|mut i| {
            let mut c = vec![0i64; d];
            for slot in c.iter_mut().rev() {
                *slot = (i % n as u64) as i64;
                i /= n as u64;
            }
            c
        })
        .collect();
    for z in translations {
        let shifted = |p: &[i64]| -> Vec<i64> { p.iter().zip(&z.0).map(|(a, b)| a + b).collect() };
        for b in &box_cells {
            if let Some(j) = index(&shifted(b)) {
                a_count[j] += 1;
            }
        }
        let mut left = false;
        for p in s.points() {
            match index(&shifted(&p.0)) {
                Some(j) => covered[j] += 1,
                None => left = true,
            }
        }
        leaving += left as u64;
    }
    if let Some(j) = covered.iter().position(|&c| c != 1) {
        let mut rest = j;
        let mut cell = vec![0i64; d];
        for slot in cell.iter_mut().rev() {
            *slot = (rest % side as usize) as i64;
            rest /= side as usize;
        }
        return Err(Error::NotATiling { cell, times: covered[j] as usize });
    }
    let ell = translations.len() as u64;
    let total: u64 = a_count.iter().sum();
    if total > (n as u64).pow(d as u32) * ell {
        return Err(Error::Invalid(format!("cover size {total} exceeds n^d * ell")));
    }
    if ell <= leaving {
        return Err(Error::Degenerate(format!("all {ell} translates leave the region")));
    }
    let mut a_sizes = BTreeMap::new();
    for &a in &a_count {
        *a_sizes.entry(a).or_insert(0u64) += 1;
    }
    let sum: f64 = a_sizes.iter().map(|(&a, &cnt)| cnt as f64 * (a as f64).log2()).sum();
    Ok(ShearerReport { a_sizes, coverage_ok: true, ell, j: leaving, bound_bits: sum / (ell - leaving) as f64 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn jensen_examples() {
        assert_eq!(jensen_max_product(3, 7).unwrap(), 12u32.into());
        assert_eq!(jensen_max_product(4, 8).unwrap(), 16u32.into());
        assert_eq!(jensen_max_product(5, 3).unwrap(), 0u32.into());
    }

    #[test]
    fn rates() {
        assert!(close(interpolated_rate(3.0).unwrap(), log2_cbrt3(), 1e-15));
        assert_eq!(interpolated_rate(1.0).unwrap(), 0.0);
        assert!(close(interpolated_rate(2.0).unwrap(), 0.5, 1e-15));
        assert!(close(interpolated_rate(2.5).unwrap(), (0.5 * 3f64.log2() + 0.5) / 2.5, 1e-15));
        assert!(interpolated_rate(0.5).is_err());
        let (n, v) = best_integer_rate();
        assert_eq!(n, 3);
        assert!(close(v, 1.4422495703074083, 1e-12));
    }

    #[test]
    fn lemma() {
        for n in [1, 2, 3] {
            assert!(endpoint_lemma_gap(n, 10_000).unwrap() >= -1e-12);
        }
        assert!(close(lemma_f(2, 1.0), 3f64.cbrt(), 1e-12));
    }

    #[test]
    fn packing() {
        let p = BoundParams::new(100, 1, 0.1).unwrap().with_k(10);
        assert_eq!(packing_slack(&p).unwrap(), (40.0000000000000, 50.0));
        let p = BoundParams::new(100, 2, 0.1).unwrap().with_k(100);
        let (e, s) = packing_slack(&p).unwrap();
        assert!(close(e, 8000.0, 1e-9) && close(s, 10000.0, 1e-9));
        assert!(packing_slack(&p.with_k(2)).is_err());
    }

    #[test]
    fn entropy_reports() {
        let p = BoundParams::new(100, 1, 0.1).unwrap().with_k(10).with_torus(true);
        assert!(close(entropy_upper(&p.with_ell(30)).unwrap().bits_per_cell, log2_cbrt3(), 1e-15));
        assert!(close(entropy_upper(&p.with_ell(20)).unwrap().bits_per_cell, 0.5, 1e-15));
        let p = BoundParams::new(100, 1, 0.1).unwrap().with_k(100).with_ell(300);
        let r = entropy_upper(&p).unwrap();
        assert_eq!(r.j_bound, 50.0);
        assert!(close(r.bits_per_cell, 1.2 * log2_cbrt3(), 1e-12));
        assert!(matches!(entropy_upper(&p.with_ell(50)), Err(Error::VacuousBound(_))));
    }

    #[test]
    fn totals() {
        assert!(close(binary_entropy(0.1), 0.4689955935892812, 1e-12));
        let p = BoundParams::new(1_000_000, 1, 0.1).unwrap().with_k(1000);
        let per_cell = total_count_log2(&p).unwrap() / 1e6;
        let expected = 1000.0 / 950.0 * log2_cbrt3() + 1000.0 * 1e9f64.log2() / 1e6;
        assert!(close(per_cell, expected, 1e-12));
        let small = BoundParams::new(10, 1, 0.5).unwrap().with_k(11);
        assert!(total_count_log2(&small).unwrap().is_finite());
        assert_eq!(default_k(1000, 1), 32);
        assert_eq!(default_k(1_000_000, 1), 1000);
    }

    #[test]
    fn shearer_word_tile() {
        let s = Tile::line(6, [3, 4]).unwrap();
        let z: Vec<Point> = (0..15).map(|i| Point(vec![2 * i])).collect();
        let r = shearer_bound_from_instance(&s, &z, 5, true).unwrap();
        assert_eq!(r.a_sizes, BTreeMap::from([(3, 30)]));
        assert!(close(r.bound_bits, 6.0 * log2_cbrt3(), 1e-12));
        let bad: Vec<Point> = (0..10).map(|i| Point(vec![3 * i])).collect();
        assert!(matches!(shearer_bound_from_instance(&s, &bad, 5, true), Err(Error::NotATiling { .. })));
    }
}
