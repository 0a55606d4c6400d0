mod common;

use dichromatic::{coloring, isomorphism, transitive, Tournament, VertexSet};
use proptest::prelude::*;

fn tournament(max_n: usize) -> impl Strategy<Value = Tournament> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            // from_fn visits the pairs i < j in lexicographic order
            let mut it = bits.into_iter();
            Tournament::from_fn(n, |_, _| it.next().unwrap()).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn paley_reversal_is_isomorphic(idx in 0usize..4, seed in prop::collection::vec(any::<u8>(), 19)) {
        let n = [3, 7, 11, 19][idx];
        let t = Tournament::paley(n).unwrap();
        // relabel the reversal at random so the isomorphism is not the obvious one
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&v| (seed[v], v));
        let r = t.reversed().relabel(&perm).unwrap();
        let phi = isomorphism::isomorphism(&t, &r).unwrap();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    prop_assert_eq!(t.has_arc(i, j), r.has_arc(phi[i], phi[j]));
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_invariant((t, perm) in tournament(12).prop_flat_map(|t| {
        let n = t.n();
        (Just(t), permutation(n))
    })) {
        let u = t.relabel(&perm).unwrap();
        prop_assert_eq!(isomorphism::canonical_form(&t).unwrap(), isomorphism::canonical_form(&u).unwrap());
        prop_assert_eq!(coloring::dichromatic_number(&t), coloring::dichromatic_number(&u));
    }

    #[test]
    fn text_round_trip(t in tournament(20)) {
        let s = t.to_string();
        prop_assert_eq!(s.parse::<Tournament>().unwrap(), t);
    }

    #[test]
    fn colourability_is_monotone(t in tournament(14), drop in any::<u32>()) {
        let (k, w) = coloring::dichromatic_witness(&t);
        prop_assert!(w.verify(&t));
        prop_assert_eq!(w.len(), k);
        prop_assert!(coloring::k_colorable(&t, k + 1).is_some());
        if k > 1 {
            prop_assert!(coloring::k_colorable(&t, k - 1).is_none());
        }
        // subtournaments never need more colours
        let s = VertexSet::from_bits(drop) & t.vertices();
        if !s.is_empty() {
            prop_assert!(coloring::chromatic_of_subset(&t, s).unwrap() <= k);
        }
        // adding a dominating transitive block adds nothing beyond one colour
        let sum = Tournament::transitive(3).unwrap().dominating_sum(&t).unwrap();
        prop_assert!(coloring::dichromatic_number(&sum) <= k + 1);
    }

    #[test]
    fn maximal_sets_are_maximal_and_transitive(t in tournament(11)) {
        let list = transitive::maximal_transitive_sets(&t);
        for &s in list.iter() {
            prop_assert!(transitive::is_transitive(&t, s));
            for v in t.vertices() - s {
                let mut bigger = s;
                bigger.insert(v);
                prop_assert!(!transitive::is_transitive(&t, bigger));
            }
        }
        // every vertex lies in some maximal set
        let covered = list.iter().fold(VertexSet::EMPTY, |acc, &s| acc | s);
        prop_assert_eq!(covered, t.vertices());
    }

    #[test]
    fn transitive_witness_is_transitive(t in tournament(12), k in 1usize..6) {
        if let Some(s) = transitive::contains_tt(&t, k) {
            prop_assert_eq!(s.len(), k);
            prop_assert!(transitive::is_transitive(&t, s));
            prop_assert!(common::triangle_free(&t, &s.to_vec()));
        }
    }
}
