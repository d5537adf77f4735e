mod common;

use common::*;

#[test]
fn oracle_known_answers() {
    assert!(tiles_z(&[0]));
    assert!(tiles_z(&[0, 2]));
    assert!(tiles_z(&[0, 1, 5]));
    assert!(!tiles_z(&[0, 1, 3]));
    assert!(tiles_z(&[0, 1, 4, 5]));
    assert!(!tiles_z(&[0, 1, 2, 4]));
    let counts: Vec<u64> = (1..=4).map(count_tiles).collect();
    assert_eq!(counts, vec![1, 3, 7, 13]);
}

#[test]
fn torus_oracle_known_answers() {
    assert!(torus_tiles(&[vec![0], vec![2]], &[4]));
    assert!(!torus_tiles(&[vec![0], vec![2]], &[2]));
    assert!(torus_tiles(&[vec![0, 0], vec![1, 0]], &[2, 3]));
    assert!(!torus_tiles(&[vec![0, 0], vec![1, 0], vec![0, 1]], &[2, 3]));
}

#[test]
fn sublattice_oracle() {
    for k in 1..=8 {
        assert_eq!(sublattices_2d(k) as u64, sigma(k as u64), "k={k}");
    }
}

#[test]
fn other_oracles() {
    assert_eq!(max_product(3, 7), 12);
    assert_eq!(flood_components(&[vec![0], vec![1], vec![3]]), (2, 2));
}
