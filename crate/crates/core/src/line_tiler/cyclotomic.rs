//! Cyclotomic tiling conditions for finite subsets of `Z`.
//!
//! Write `A(x) = sum x^a` and let `S_A` be the set of prime powers `s` with
//! `Phi_s(x) | A(x)`. Coven and Meyerowitz showed:
//!
//! * (T1) `A(1) = prod_{s in S_A} Phi_s(1)` holds for every tile;
//! * (T2) if `s_1, ..., s_m in S_A` are powers of distinct primes then
//!   `Phi_{s_1 ... s_m}(x) | A(x)`; this holds for every tile whose size has
//!   at most two distinct prime factors;
//! * T1 and T2 together imply that `A` tiles, with the explicit complement
//!   `B(x) = prod Phi_s(x^{t(s)})` over the prime powers `s | lcm(S_A)`
//!   outside `S_A`, `t(s)` the largest divisor of `lcm(S_A)` prime to `s`.
//!
//! So for sizes with at most two prime factors the pair (T1, T2) is an exact
//! decision procedure, and the complement seeds the automaton with a state
//! on a tiling cycle.

use std::collections::BTreeMap;

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether the exact decision applies to a set of this size.
pub(crate) fn applicable(size: usize) -> bool {
    prime_factors(size as u64).len() <= 2
}

/// Integer coefficients of `Phi_m`, lowest degree first.
pub(crate) fn cyclotomic_poly(m: u64) -> Vec<i64> {
    // x^m - 1 divided by Phi_d for every proper divisor d.
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            poly = exact_div(&poly, &cyclotomic_poly(d));
        }
    }
    poly
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let q = rem[i + dn];
        quot[i] = q;
        if q != 0 {
            for (j, &c) in den.iter().enumerate() {
                rem[i + j] -= q * c;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Whether the monic `phi` divides the polynomial with coefficients `coeffs`.
fn poly_divisible(coeffs: &[i64], phi: &[i64]) -> bool {
    let dp = phi.len() - 1;
    let mut rem = coeffs.to_vec();
    for i in (dp..rem.len()).rev() {
        let q = rem[i];
        if q != 0 {
            for (j, &c) in phi.iter().enumerate() {
                rem[i - dp + j] -= q * c;
            }
        }
    }
    rem[..dp.min(rem.len())].iter().all(|&r| r == 0)
}

/// Whether `Phi_n(x)` divides `sum_{a in set} x^a`.
///
/// With `m = rad(n)` and `q = n / m`, `Phi_n(x) = Phi_m(x^q)` and the
/// powers `zeta_n^r, r < q` are a basis of `Q(zeta_n)` over `Q(zeta_m)`,
/// so the test splits into one `Phi_m` test per residue class mod `q`.
pub(crate) fn phi_divides(set: &[i64], n: u128) -> bool {
    let primes = prime_factors(u64::try_from(n).expect("modulus fits in u64"));
    let m: u128 = primes.iter().map(|&p| p as u128).product();
    let q = n / m;
    let mut groups: BTreeMap<u128, Vec<i64>> = BTreeMap::new();
    for &a in set {
        let x = (a as i128).rem_euclid(n as i128) as u128;
        let coeffs = groups.entry(x % q).or_insert_with(|| vec![0; m as usize]);
        coeffs[(x / q) as usize] += 1;
    }
    if primes.len() == 1 {
        // Phi_p divides iff all p coefficients are equal.
        return groups.values().all(|c| c.iter().all(|&v| v == c[0]));
    }
    let phi = cyclotomic_poly(m as u64);
    groups.values().all(|c| poly_divisible(c, &phi))
}

/// The prime powers `s` with `Phi_s | A`, as `(s, p)` pairs.
///
/// Only primes dividing `|A|` can occur (a `p`-equidistributed set has size
/// divisible by `p`), and `phi(s) <= diameter`.
pub(crate) fn prime_power_divisors(shape: &[i64]) -> Vec<(u128, u64)> {
    let diameter = (shape[shape.len() - 1] - shape[0]) as u128;
    let mut out = Vec::new();
    for p in prime_factors(shape.len() as u64) {
        let p128 = p as u128;
        let mut s = p128;
        while (s / p128) * (p128 - 1) <= diameter {
            if phi_divides(shape, s) {
                out.push((s, p));
            }
            s *= p128;
        }
    }
    out
}

/// Condition T1: `|A| = prod_{s in S_A} p(s)`.
pub(crate) fn t1(size: usize, sa: &[(u128, u64)]) -> bool {
    sa.iter().try_fold(1u128, |acc, &(_, p)| acc.checked_mul(p as u128)) == Some(size as u128)
}

/// Condition T2 over every choice of prime powers with distinct primes.
pub(crate) fn t2(shape: &[i64], sa: &[(u128, u64)]) -> bool {
    let mut by_prime: BTreeMap<u64, Vec<u128>> = BTreeMap::new();
    for &(s, p) in sa {
        by_prime.entry(p).or_default().push(s);
    }
    let groups: Vec<&Vec<u128>> = by_prime.values().collect();
    // Each prime contributes one of its powers or nothing.
    let mut choice = vec![0usize; groups.len()];
    loop {
        let mut n: u128 = 1;
        let mut used = 0;
        for (g, &c) in groups.iter().zip(&choice) {
            if c > 0 {
                n *= g[c - 1];
                used += 1;
            }
        }
        if used >= 2 && !phi_divides(shape, n) {
            return false;
        }
        let mut i = 0;
        loop {
            if i == groups.len() {
                return true;
            }
            choice[i] += 1;
            if choice[i] <= groups[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Exact tiling decision for sets whose size has at most two prime factors.
/// `shape` is sorted.
pub(crate) fn tiles(shape: &[i64]) -> bool {
    debug_assert!(applicable(shape.len()));
    let sa = prime_power_divisors(shape);
    t1(shape.len(), &sa) && t2(shape, &sa)
}

/// The complement `B` with `A + B = Z_M`, `M = lcm(S_A)`, when T1 and T2
/// hold and `M <= max_period`. Returns `(M, B)` with `B` sorted.
pub(crate) fn complement(shape: &[i64], max_period: u128) -> Option<(i64, Vec<i64>)> {
    let sa = prime_power_divisors(shape);
    if !t1(shape.len(), &sa) || !t2(shape, &sa) {
        return None;
    }
    let mut top: BTreeMap<u64, u128> = BTreeMap::new();
    for &(s, p) in &sa {
        let e = top.entry(p).or_insert(1);
        *e = (*e).max(s);
    }
    let period: u128 = top.values().product();
    if period > max_period {
        return None;
    }
    let mut b: Vec<u128> = vec![0];
    for (&p, &pmax) in &top {
        let t = period / pmax;
        let mut s = p as u128;
        while s <= pmax {
            if !sa.contains(&(s, p)) {
                // Phi_s(x^t) = sum_{i<p} x^{i * (s/p) * t}
                let step = (s / p as u128) * t;
                b = b.iter().flat_map(|&e| (0..p as u128).map(move |i| (e + i * step) % period)).collect();
            }
            s *= p as u128;
        }
    }
    b.sort_unstable();
    let before = b.len();
    b.dedup();
    if b.len() != before || (b.len() as u128) * (shape.len() as u128) != period {
        return None;
    }
    Some((period as i64, b.into_iter().map(|e| e as i64).collect()))
}
