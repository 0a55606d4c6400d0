mod common;

use std::collections::BTreeSet;

use dichromatic::completions::{self, BranchStrategy, Completions, Pruner};
use dichromatic::{coloring, PartialTournament, Tournament};
use proptest::prelude::*;

/// Every orientation of the open pairs of `p`.
fn all_orientations(p: &PartialTournament) -> Vec<Tournament> {
    let open: Vec<(usize, usize)> = p.undecided().collect();
    (0u32..1 << open.len())
        .map(|bits| {
            let mut q = p.clone();
            for (k, &(a, b)) in open.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    q.orient(a, b).unwrap();
                } else {
                    q.orient(b, a).unwrap();
                }
            }
            q.to_tournament().unwrap()
        })
        .collect()
}

fn pruners() -> [Pruner; 4] {
    [Pruner::k_colorable(2), Pruner::k_colorable(3), Pruner::two_disjoint_tt5(), Pruner::composite(2)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // the search emits exactly the accepted completions, once each
    #[test]
    fn pruning_is_sound(bits in prop::collection::vec(any::<bool>(), 28), open in prop::collection::btree_set(0usize..28, 0..=6)) {
        let mut it = bits.into_iter();
        let t = Tournament::from_fn(8, |_, _| it.next().unwrap()).unwrap();
        let mask = (0..28u32).filter(|k| !open.contains(&(*k as usize))).fold(0, |m, k| m | 1 << k);
        let p = common::partial_of(&t, mask);
        for pruner in pruners() {
            let expected: BTreeSet<String> =
                all_orientations(&p).iter().filter(|t| pruner.accepts(t)).map(|t| t.to_string()).collect();
            for strategy in [BranchStrategy::Lexicographic, BranchStrategy::LargestTransitiveSet] {
                let got: Vec<String> = Completions::with_strategy(&p, pruner, strategy).map(|t| t.to_string()).collect();
                let unique: BTreeSet<String> = got.iter().cloned().collect();
                prop_assert_eq!(unique.len(), got.len());
                prop_assert_eq!(&unique, &expected, "pruner {} strategy {}", pruner, strategy.label());
            }
        }
    }
}

#[test]
fn pruning_is_sound_on_wider_instances() {
    // a triangle beside an arc, and a 3-chromatic tournament with ten pairs opened
    let p = PartialTournament::disjoint_union(&Tournament::paley(3).unwrap(), &Tournament::transitive(2).unwrap()).unwrap();
    let w1 = common::partial_of(&dichromatic::named::w1(), !0u32 << 10);
    assert_eq!(w1.undecided_count(), 10);
    for (root, pruner) in [(p, Pruner::k_colorable(2)), (w1.clone(), Pruner::k_colorable(2)), (w1, Pruner::composite(2))] {
        let expected: BTreeSet<String> =
            all_orientations(&root).iter().filter(|t| pruner.accepts(t)).map(|t| t.to_string()).collect();
        let got: BTreeSet<String> = completions::completions(&root, pruner).map(|t| t.to_string()).collect();
        assert_eq!(got, expected);
    }
}

#[test]
fn resumed_search_matches_uninterrupted() {
    let root = completions::eight_completion_base();
    let whole: Vec<Tournament> = completions::completions(&root, Pruner::k_colorable(2)).collect();
    let mut search = Completions::new(&root, Pruner::k_colorable(2));
    let mut pieces = Vec::new();
    loop {
        for _ in 0..500 {
            if search.is_finished() {
                break;
            }
            pieces.extend(search.step());
        }
        if search.is_finished() {
            break;
        }
        // round-trip the frontier through its text form
        let frontier: Vec<PartialTournament> =
            search.frontier().iter().map(|p| p.to_string().parse().unwrap()).collect();
        search = Completions::resume(frontier, Pruner::k_colorable(2), BranchStrategy::default(), search.stats());
    }
    assert_eq!(pieces, whole);
}

#[test]
fn glued_pair_logic_on_a_known_thirteen_completion() {
    use dichromatic::VertexSet;
    let eight = completions::eight_completions();
    let c13 = completions::thirteen_completions(&eight[0], &eight[49], 2).unwrap();
    assert_eq!(c13.len(), 1);
    let t = c13[0];
    assert!(coloring::k_colorable(&t, 3).is_none());
    // read as a TT5 glued to an 8-vertex rest, pair the completion with itself
    let a = VertexSet::full(5);
    let glue = VertexSet::full(13) - a;
    let ty = completions::completion_type(&t, a, glue).unwrap();
    let compatible = completions::types_compatible(&ty, &ty).unwrap();
    let matching: Vec<(usize, usize)> = glue.iter().map(|v| (v, v)).collect();
    let glued = completions::glue_identify(&t, glue, &t, glue, &matching).unwrap();
    assert_eq!(glued.n(), 18);
    let five_chromatic: Vec<Tournament> = completions::completions(&glued, Pruner::k_colorable(4)).collect();
    // a compatible pair can never have a 5-chromatic completion
    if compatible {
        assert!(five_chromatic.is_empty());
    }
    assert!(five_chromatic.is_empty(), "{} 5-chromatic completions", five_chromatic.len());
}
