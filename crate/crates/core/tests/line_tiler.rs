mod common;

use std::time::Instant;

use common::{bits, covers_once, tiles_z};
use proptest::prelude::*;
use tilecensus::line_tiler::{
    classify, count_box, count_ground_set, decide_line, decide_line_exhaustive, enumerate_box, minimal_period,
    tile_masks, CensusOptions, LineOptions, Verdict,
};
use tilecensus::{Certificate, Status, Tile};

fn status_of(coords: &[i64]) -> Status {
    let n = coords.iter().max().unwrap() + 1;
    decide_line(&Tile::line(n, coords.iter().copied()).unwrap()).unwrap().status()
}

#[test]
fn agrees_with_oracle_on_every_subset_below_12() {
    let start = Instant::now();
    for mask in 1u64..1 << 12 {
        let set = bits(mask);
        let tile = Tile::from_mask(12, mask).unwrap();
        let d = decide_line(&tile).unwrap();
        let expected = if tiles_z(&set) { Status::Tiles } else { Status::NotTile };
        assert_eq!(d.status(), expected, "{set:?}");
        if let Some(Certificate::Period(c)) = d.certificate() {
            assert!(covers_once(&set, c.period, &c.offsets), "{set:?} {c:?}");
        }
    }
    assert!(start.elapsed().as_secs() < 10);
}

#[test]
fn exhaustive_automaton_agrees_up_to_diameter_14() {
    for mask in (1u64..1 << 15).filter(|m| m & 1 == 1) {
        let tile = Tile::from_mask(15, mask).unwrap();
        let fast = decide_line(&tile).unwrap();
        let slow = decide_line_exhaustive(&tile, 1 << 24).unwrap();
        assert_eq!(fast.status(), slow.status(), "{tile}");
        if let Some(c) = slow.certificate() {
            assert!(c.verify(&tile));
        }
    }
}

#[test]
fn classify_matches_decide() {
    for mask in (1u64..1 << 16).filter(|m| m & 1 == 1) {
        let coords = bits(mask);
        let v = classify(&coords, LineOptions::default());
        let s = status_of(&coords);
        let expected = match s {
            Status::Tiles => Verdict::Tiles,
            Status::NotTile => Verdict::NotTile,
            Status::Unknown => Verdict::Unknown,
        };
        assert_eq!(v, expected, "{coords:?}");
    }
}

#[test]
fn tilings_are_forced_left_to_right() {
    // In the tiling given by a certificate, the leftmost cell not yet covered
    // is always the minimum of the next translate.
    for mask in (1u64..1 << 11).filter(|m| m & 1 == 1) {
        let tile = Tile::from_mask(11, mask).unwrap();
        let Some(c) = decide_line(&tile).unwrap().period_certificate().cloned() else { continue };
        let set = bits(mask);
        let span = 4 * c.period + 20;
        let starts = (-span..span).filter(|z| c.offsets.contains(&z.rem_euclid(c.period)));
        let mut covered = std::collections::BTreeSet::new();
        let mut cut = 0;
        for z in starts {
            if z >= 0 {
                while covered.contains(&cut) {
                    cut += 1;
                }
                assert_eq!(z, cut, "{set:?} translate {z}");
            }
            for s in &set {
                assert!(covered.insert(z + s), "{set:?} overlap at {}", z + s);
            }
        }
    }
}

#[test]
fn known_decisions() {
    assert_eq!(status_of(&[0, 1, 3]), Status::NotTile);
    assert_eq!(status_of(&[0, 2]), Status::Tiles);
    let tile = Tile::line(6, [0, 1, 5]).unwrap();
    assert_eq!(minimal_period(&tile).unwrap(), 3);
    let d = decide_line(&Tile::line(4, [0, 1, 3]).unwrap()).unwrap();
    assert!(d.witness().is_some());
    // a set whose greedy run from the empty window fails but which tiles Z
    let d = decide_line(&Tile::line(6, [0, 2, 3, 5]).unwrap()).unwrap();
    assert_eq!(d.status(), Status::Tiles);
    assert!(tiles_z(&[0, 2, 3, 5]));
}

#[test]
fn wide_diameters() {
    let far = Tile::line(201, [0, 200]).unwrap();
    let d = decide_line(&far).unwrap();
    assert_eq!(d.status(), Status::Tiles);
    assert!(d.certificate().unwrap().verify(&far));
    let mid = Tile::line(101, [0, 1, 100]).unwrap();
    let d = decide_line(&mid).unwrap();
    assert_ne!(d.status(), Status::Unknown);
    if let Some(c) = d.certificate() {
        assert!(c.verify(&mid));
    }
}

#[test]
fn small_census_matches_oracle() {
    let opts = CensusOptions::default().with_jobs(2);
    for n in 1..=12 {
        let report = count_box(n, &opts).unwrap();
        assert_eq!(report.total, common::count_tiles(n), "n={n}");
        assert_eq!(report.unknown, 0);
        assert_eq!(report.by_size.values().sum::<u64>(), report.total);
        assert_eq!(tile_masks(n, &opts).unwrap(), common::oracle_masks(n));
    }
    let first: Vec<u64> = [1, 3, 7, 13].to_vec();
    assert_eq!((1..=4).map(|n| count_box(n, &opts).unwrap().total).collect::<Vec<_>>(), first);
}

#[test]
fn size_filter_and_enumeration() {
    let opts = CensusOptions::default().with_sizes(2..=3);
    let r = count_box(8, &opts).unwrap();
    let full = count_box(8, &CensusOptions::default()).unwrap();
    assert_eq!(r.total, full.by_size[&2] + full.by_size[&3]);
    let listed: Vec<(Tile, _)> = enumerate_box(8, &CensusOptions::default()).unwrap().collect();
    assert_eq!(listed.len() as u64, full.total);
    for (tile, cert) in &listed {
        assert!(cert.verify(tile), "{tile}");
    }
}

#[test]
fn ground_sets() {
    let opts = CensusOptions::default();
    let r = count_ground_set(&[0, 1, 2, 3], &opts).unwrap();
    assert_eq!(r.total, 13);
    let elems = [1i64, 2, 4, 8, 16];
    let brute = (1u64..1 << elems.len())
        .filter(|m| tiles_z(&bits(*m).iter().map(|&i| elems[i as usize]).collect::<Vec<_>>()))
        .count() as u64;
    assert_eq!(count_ground_set(&elems, &opts).unwrap().total, brute);
    assert!(count_ground_set(&[1, 1], &opts).is_err());
    assert!(count_ground_set(&[], &opts).is_err());
}

#[test]
fn limits() {
    let opts = CensusOptions { max_n: 10, ..CensusOptions::default() };
    assert!(count_box(11, &opts).is_err());
    assert!(count_box(0, &opts).is_err());
}

proptest! {
    #[test]
    fn translation_and_reflection_invariance(coords in prop::collection::btree_set(0i64..40, 1..7), shift in -50i64..50) {
        let base: Vec<i64> = coords.iter().copied().collect();
        let max = *base.last().unwrap();
        let expected = status_of(&base);
        let moved: Vec<i64> = base.iter().map(|c| c + shift.abs()).collect();
        prop_assert_eq!(status_of(&moved), expected);
        let mut flipped: Vec<i64> = base.iter().map(|c| max - c).collect();
        flipped.sort_unstable();
        prop_assert_eq!(status_of(&flipped), expected);
        let scaled: Vec<i64> = base.iter().map(|c| 3 * c).collect();
        prop_assert_eq!(status_of(&scaled), expected);
    }

    #[test]
    fn certificates_verify(coords in prop::collection::btree_set(0i64..60, 1..8)) {
        let c: Vec<i64> = coords.into_iter().collect();
        let tile = Tile::line(60, c.iter().copied()).unwrap();
        let d = decide_line(&tile).unwrap();
        prop_assert_ne!(d.status(), Status::Unknown);
        if let Some(cert) = d.certificate() {
            prop_assert!(cert.verify(&tile));
        }
        if c.len() <= 20 && c.last().unwrap() - c[0] < 16 {
            prop_assert_eq!(d.status() == Status::Tiles, tiles_z(&c));
        }
    }
}
