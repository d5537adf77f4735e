//! Brute-force oracles, written without reference to the library's
//! algorithms.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use num_rational::Ratio;

/// Whether a finite set of integers tiles Z.
///
/// States are coverage patterns of `[p, p + D)` by translates whose minimum
/// lies left of the cut `p`, with every cell left of `p` covered. At each cut
/// every translate `S + z` that fits is tried, then the cut moves right by
/// one. A tiling of Z reads off as a bi-infinite walk, so S tiles iff the
/// graph has a cycle; Kahn's algorithm finds one.
pub fn tiles_z(set: &[i64]) -> bool {
    let mut s: Vec<i64> = set.to_vec();
    s.sort_unstable();
    s.dedup();
    let min = s[0];
    let s: Vec<i64> = s.iter().map(|x| x - min).collect();
    let d = *s.last().unwrap() as usize;
    if d == 0 {
        return true;
    }
    let width = d;
    let states = 1usize << width;
    let edges: Vec<Vec<usize>> = (0..states)
        .map(|state| {
            let covered = |c: i64| c < 0 || (c < width as i64 && state >> c & 1 == 1);
            let mut nexts = Vec::new();
            if covered(0) {
                nexts.push(state >> 1);
            } else {
                for z in -(d as i64)..=d as i64 {
                    let cells: Vec<i64> = s.iter().map(|x| x + z).collect();
                    if !cells.contains(&0) || cells.iter().any(|&c| covered(c)) {
                        continue;
                    }
                    let mut next = state;
                    for &c in &cells {
                        next |= 1 << c;
                    }
                    nexts.push(next >> 1);
                }
            }
            nexts
        })
        .collect();
    let mut indeg = vec![0usize; states];
    for e in &edges {
        for &t in e {
            indeg[t] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..states).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = queue.pop_front() {
        removed += 1;
        for &t in &edges[v] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                queue.push_back(t);
            }
        }
    }
    removed < states
}

/// Elements of a bitmask.
pub fn bits(mask: u64) -> Vec<i64> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Number of nonempty subsets of `[0, n)` that tile Z, by the oracle.
pub fn count_tiles(n: usize) -> u64 {
    (1u64..1 << n).filter(|&m| tiles_z(&bits(m))).count() as u64
}

/// Whether `S + offsets + period Z` covers Z exactly once.
pub fn covers_once(set: &[i64], period: i64, offsets: &[i64]) -> bool {
    let mut hits = vec![0u32; period as usize];
    for &s in set {
        for &o in offsets {
            hits[(s + o).rem_euclid(period) as usize] += 1;
        }
    }
    hits.iter().all(|&h| h == 1)
}

/// Whether translates of `set` partition the torus with sides `dims`,
/// by plain backtracking on the first uncovered cell.
pub fn torus_tiles(set: &[Vec<i64>], dims: &[i64]) -> bool {
    let vol: i64 = dims.iter().product();
    let idx = |p: &[i64]| p.iter().zip(dims).fold(0i64, |acc, (x, m)| acc * m + x.rem_euclid(*m)) as usize;
    let unidx = |mut i: i64| {
        let mut c = vec![0i64; dims.len()];
        for (slot, m) in c.iter_mut().zip(dims).rev() {
            *slot = i % m;
            i /= m;
        }
        c
    };
    if vol % set.len() as i64 != 0 {
        return false;
    }
    fn go(
        covered: &mut Vec<bool>,
        set: &[Vec<i64>],
        idx: &dyn Fn(&[i64]) -> usize,
        unidx: &dyn Fn(i64) -> Vec<i64>,
    ) -> bool {
        let Some(first) = covered.iter().position(|&c| !c) else {
            return true;
        };
        let target = unidx(first as i64);
        for anchor in set {
            let cells: Vec<usize> = set
                .iter()
                .map(|p| {
                    let q: Vec<i64> = p.iter().zip(anchor).zip(&target).map(|((a, b), t)| a - b + t).collect();
                    idx(&q)
                })
                .collect();
            let distinct: HashSet<usize> = cells.iter().copied().collect();
            if distinct.len() != cells.len() || cells.iter().any(|&c| covered[c]) {
                continue;
            }
            for &c in &cells {
                covered[c] = true;
            }
            if go(covered, set, idx, unidx) {
                return true;
            }
            for &c in &cells {
                covered[c] = false;
            }
        }
        false
    }
    let mut covered = vec![false; vol as usize];
    go(&mut covered, set, &idx, &unidx)
}

/// Sum of divisors.
pub fn sigma(k: u64) -> u64 {
    (1..=k).filter(|d| k.is_multiple_of(*d)).sum()
}

/// Number of index-`k` sublattices of Z^2, by collecting the distinct
/// coset partitions of a `k x k` window over all pairs of generators.
pub fn sublattices_2d(k: i64) -> usize {
    // A sublattice of index k contains k Z^2, so it is determined by its
    // image in (Z/k)^2: a subgroup of order k.
    let mut seen: HashSet<Vec<(i64, i64)>> = HashSet::new();
    let r = 0..k;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for e in r.clone() {
                    let mut group: HashSet<(i64, i64)> = HashSet::new();
                    let mut frontier = vec![(0i64, 0i64)];
                    group.insert((0, 0));
                    // stop as soon as the closure is too large to have order k
                    'close: while let Some((x, y)) = frontier.pop() {
                        for (dx, dy) in [(a, b), (c, e)] {
                            let p = ((x + dx) % k, (y + dy) % k);
                            if group.insert(p) {
                                if group.len() as i64 > k {
                                    break 'close;
                                }
                                frontier.push(p);
                            }
                        }
                    }
                    if group.len() as i64 == k {
                        let mut g: Vec<(i64, i64)> = group.into_iter().collect();
                        g.sort_unstable();
                        seen.insert(g);
                    }
                }
            }
        }
    }
    seen.len()
}

/// Largest product over all compositions of `t` into `m` nonnegative parts.
pub fn max_product(m: u32, t: u32) -> u128 {
    fn go(m: u32, t: u32) -> u128 {
        if m == 1 {
            return t as u128;
        }
        (0..=t).map(|x| x as u128 * go(m - 1, t - x)).max().unwrap()
    }
    go(m, t)
}

/// Components under unit steps, by flood fill.
pub fn flood_components(points: &[Vec<i64>]) -> (usize, usize) {
    let set: HashSet<Vec<i64>> = points.iter().cloned().collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let (mut largest, mut count) = (0, 0);
    for p in points {
        if seen.contains(p) {
            continue;
        }
        count += 1;
        let mut size = 0;
        let mut stack = vec![p.clone()];
        seen.insert(p.clone());
        while let Some(q) = stack.pop() {
            size += 1;
            for axis in 0..q.len() {
                for step in [-1, 1] {
                    let mut r = q.clone();
                    r[axis] += step;
                    if set.contains(&r) && seen.insert(r.clone()) {
                        stack.push(r);
                    }
                }
            }
        }
        largest = largest.max(size);
    }
    (largest, count)
}

/// All tiling subsets of `[0, n)` by the oracle, as masks.
pub fn oracle_masks(n: usize) -> Vec<u64> {
    (1u64..1 << n).filter(|&m| tiles_z(&bits(m))).collect()
}

/// Exact `P(i in S)` under the uniform tile.
pub fn exact_marginals(n: usize) -> Vec<Ratio<i64>> {
    let masks = oracle_masks(n);
    (0..n).map(|i| Ratio::new(masks.iter().filter(|&&m| m >> i & 1 == 1).count() as i64, masks.len() as i64)).collect()
}

/// Exact mean of `|S| / n` under the uniform tile.
pub fn exact_mean_density(n: usize) -> Ratio<i64> {
    let masks = oracle_masks(n);
    let total: i64 = masks.iter().map(|m| m.count_ones() as i64).sum();
    Ratio::new(total, masks.len() as i64 * n as i64)
}
