mod common;

use common::*;
use dichromatic::isomorphism;

#[test]
fn census_matches_brute_force_dedup() {
    for n in 1..=6 {
        assert_eq!(isomorphism::census(n).unwrap().len(), brute_census(n), "n = {n}");
    }
}

#[test]
fn k_colorable_matches_labelling_oracle() {
    assert_eq!(coloring_mismatches(7), 0);
}

#[test]
fn maximal_sets_match_subset_scan() {
    assert_eq!(maximal_set_mismatches(7), 0);
}

#[test]
fn incremental_update_matches_recomputation_small() {
    for n in 2..=5 {
        let (transitions, bad) = update_mismatches(n, true);
        assert!(transitions > 0);
        assert_eq!(bad, 0, "n = {n}");
    }
}

#[test]
fn incremental_update_matches_recomputation_six() {
    let (transitions, bad) = update_mismatches(6, false);
    assert_eq!(transitions, 56 * 15 * (1 << 14));
    assert_eq!(bad, 0);
}
