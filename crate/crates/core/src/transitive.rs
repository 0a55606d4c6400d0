//! Transitive subtournaments: membership tests, maximal sets, `TT_k` witnesses
//! and disjoint `TT_5` packings.
//!
//! On a [`PartialTournament`] a set counts as transitive when every pair inside it
//! is decided and the arcs are acyclic, so it stays transitive in every
//! completion. Covers by such sets are what justifies cutting a search branch.

use crate::digraph;
use crate::partial::PartialTournament;
use crate::tournament::Tournament;
use crate::vertex_set::VertexSet;

/// Every inclusion-maximal transitive vertex set of a (partial) tournament,
/// sorted by bit pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransitiveSetList {
    sets: Vec<VertexSet>,
}

impl TransitiveSetList {
    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexSet> {
        self.sets.iter()
    }

    /// Size of the largest set.
    pub fn max_size(&self) -> usize {
        self.sets.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub(crate) fn from_sorted(sets: Vec<VertexSet>) -> Self {
        TransitiveSetList { sets }
    }
}

impl<'a> IntoIterator for &'a TransitiveSetList {
    type Item = &'a VertexSet;
    type IntoIter = std::slice::Iter<'a, VertexSet>;
    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

/// True iff `s` induces a transitive subtournament of `t`.
///
/// Uses the score characterisation: the out-degrees inside `s` must be pairwise
/// distinct (and are then exactly `0, .., |s|-1`).
pub fn is_transitive(t: &Tournament, s: VertexSet) -> bool {
    let mut seen = 0u64;
    for v in s {
        let d = t.out_degree_in(v, s);
        if seen >> d & 1 == 1 {
            return false;
        }
        seen |= 1 << d;
    }
    true
}

/// True iff `s` is fully decided in `p` and its arcs are acyclic.
pub fn is_transitive_partial(p: &PartialTournament, s: VertexSet) -> bool {
    digraph::is_acyclic(p.constraint_rows(), s)
}

/// All maximal transitive vertex sets of `t`.
pub fn maximal_transitive_sets(t: &Tournament) -> TransitiveSetList {
    TransitiveSetList::from_sorted(digraph::maximal_acyclic_sets(t.rows(), t.vertices()))
}

/// All maximal fully decided vertex sets with acyclic arcs.
pub fn maximal_transitive_sets_partial(p: &PartialTournament) -> TransitiveSetList {
    TransitiveSetList::from_sorted(digraph::maximal_acyclic_sets(p.constraint_rows(), p.vertices()))
}

/// Updates the maximal-set list of a partial tournament after the previously
/// undecided pair was oriented `a -> b` (`p` already contains the arc; `list` is
/// the list from before).
///
/// Orienting a pair only removes a constraint, so every set transitive before
/// stays transitive, and a set that is maximal afterwards either was maximal
/// before or contains both `a` and `b`. The new sets through `a` and `b` live
/// among the vertices already decided with both; old sets swallowed by one of
/// them are dropped.
pub fn update_transitive_sets(
    list: &TransitiveSetList,
    p: &PartialTournament,
    a: usize,
    b: usize,
) -> TransitiveSetList {
    update_with_fresh(list, p, a, b).0
}

/// As [`update_transitive_sets`], also returning the new sets (those through
/// both `a` and `b`).
pub(crate) fn update_with_fresh(
    list: &TransitiveSetList,
    p: &PartialTournament,
    a: usize,
    b: usize,
) -> (TransitiveSetList, Vec<VertexSet>) {
    let rows = p.constraint_rows();
    let ab = VertexSet::from([a, b]);
    // vertices decided with both endpoints: no digon to either of them
    let mut within = ab;
    for v in p.vertices() - ab {
        let digon_a = rows[v] >> a & 1 == 1 && rows[a] >> v & 1 == 1;
        let digon_b = rows[v] >> b & 1 == 1 && rows[b] >> v & 1 == 1;
        if !digon_a && !digon_b {
            within.insert(v);
        }
    }
    let fresh = digraph::maximal_acyclic_sets_containing(rows, within, ab);
    let mut sets: Vec<VertexSet> = list
        .iter()
        .copied()
        .filter(|&s| !s.is_subset(within) || !fresh.iter().any(|&f| s.is_subset(f)))
        .collect();
    sets.extend(fresh.iter().copied());
    sets.sort_unstable();
    (TransitiveSetList::from_sorted(sets), fresh)
}

/// A vertex set of size `k` inducing `TT_k`, if one exists.
pub fn contains_tt(t: &Tournament, k: usize) -> Option<VertexSet> {
    find_tt(t.rows(), t.vertices(), k)
}

/// A `TT_k` whose arcs are all decided in `p`, if one exists.
pub fn contains_tt_partial(p: &PartialTournament, k: usize) -> Option<VertexSet> {
    find_tt(p.rows(), p.vertices(), k)
}

/// Finds a transitive `k`-set inside `within` using only arcs present in `rows`.
///
/// Recurses into the out-neighbourhood of a candidate source, trying sources of
/// largest out-degree first.
pub fn find_tt(rows: &[u32], within: VertexSet, k: usize) -> Option<VertexSet> {
    if k == 0 {
        return Some(VertexSet::EMPTY);
    }
    if within.len() < k {
        return None;
    }
    if k == 1 {
        return within.first().map(VertexSet::singleton);
    }
    let mut order: Vec<(u32, usize)> = within
        .iter()
        .map(|v| ((rows[v] & within.bits()).count_ones(), v))
        .filter(|&(d, _)| d as usize >= k - 1)
        .collect();
    order.sort_unstable_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    for (_, v) in order {
        let next = VertexSet::from_bits(rows[v]) & within;
        if let Some(s) = find_tt(rows, next, k - 1) {
            return Some(s.with(v));
        }
    }
    None
}

/// Every transitive `k`-set inside `within` (arcs from `rows`), each listed once.
pub fn all_tt(rows: &[u32], within: VertexSet, k: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    all_tt_rec(rows, within, k, VertexSet::EMPTY, &mut out);
    out.sort_unstable();
    out
}

fn all_tt_rec(rows: &[u32], within: VertexSet, k: usize, acc: VertexSet, out: &mut Vec<VertexSet>) {
    if k == 0 {
        out.push(acc);
        return;
    }
    if within.len() < k {
        return;
    }
    // the source of a transitive set is unique, so branching on it never repeats a set
    for v in within {
        let next = VertexSet::from_bits(rows[v]) & within;
        if next.len() + 1 >= k {
            all_tt_rec(rows, next, k - 1, acc.with(v), out);
        }
    }
}

/// `count` pairwise disjoint vertex sets each inducing `TT_5`, if they exist.
pub fn disjoint_tt5_packing(t: &Tournament, count: usize) -> Option<Vec<VertexSet>> {
    disjoint_tt_packing(t.rows(), t.vertices(), 5, count)
}

/// Packing of `count` disjoint transitive `k`-sets using arcs from `rows`.
pub fn disjoint_tt_packing(
    rows: &[u32],
    within: VertexSet,
    k: usize,
    count: usize,
) -> Option<Vec<VertexSet>> {
    let mut acc = Vec::with_capacity(count);
    if pack_rec(rows, within, k, count, 0, &mut acc) {
        Some(acc)
    } else {
        None
    }
}

fn pack_rec(
    rows: &[u32],
    within: VertexSet,
    k: usize,
    count: usize,
    min_first: usize,
    acc: &mut Vec<VertexSet>,
) -> bool {
    if count == 0 {
        return true;
    }
    if within.len() < k * count {
        return false;
    }
    if count == 1 {
        return match find_tt(rows, within, k) {
            Some(s) => {
                acc.push(s);
                true
            }
            None => false,
        };
    }
    // Sets are produced with increasing least element to avoid revisiting
    // the same packing in another order.
    for s in all_tt(rows, within, k) {
        if s.first().unwrap_or(0) < min_first {
            continue;
        }
        acc.push(s);
        if pack_rec(rows, within - s, k, count - 1, s.first().unwrap_or(0) + 1, acc) {
            return true;
        }
        acc.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn brute_force_maximal(t: &Tournament) -> Vec<VertexSet> {
        let n = t.n();
        let transitive: Vec<VertexSet> = (1u32..1 << n)
            .map(VertexSet::from_bits)
            .filter(|&s| is_transitive(t, s))
            .collect();
        let mut max: Vec<VertexSet> = transitive
            .iter()
            .copied()
            .filter(|&s| !transitive.iter().any(|&u| u != s && s.is_subset(u)))
            .collect();
        max.sort_unstable();
        max
    }

    #[test]
    fn small_sets_are_transitive() {
        let t = Tournament::paley(7).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                assert!(is_transitive(&t, VertexSet::from([a, b])));
            }
        }
        let c3 = Tournament::paley(3).unwrap();
        assert!(!is_transitive(&c3, c3.vertices()));
        assert!(is_transitive(&Tournament::x13(), VertexSet::from([0, 1, 3, 6])));
    }

    #[test]
    fn maximal_sets_of_triangle_and_tt5() {
        let c3 = Tournament::paley(3).unwrap();
        let got: Vec<_> = maximal_transitive_sets(&c3).sets().to_vec();
        assert_eq!(
            got,
            vec![VertexSet::from([0, 1]), VertexSet::from([0, 2]), VertexSet::from([1, 2])]
        );
        let tt5 = Tournament::transitive(5).unwrap();
        assert_eq!(maximal_transitive_sets(&tt5).sets(), &[tt5.vertices()]);
    }

    #[test]
    fn paley7_maximal_sets_have_size_three() {
        let l = maximal_transitive_sets(&Tournament::paley(7).unwrap());
        assert!(l.iter().all(|s| s.len() == 3));
        assert_eq!(l.len(), 21);
    }

    #[test]
    fn maximal_sets_match_brute_force_on_named() {
        for (_, t) in named::seven_vertex_three_chromatic() {
            assert_eq!(maximal_transitive_sets(&t).sets(), brute_force_maximal(&t).as_slice());
        }
    }

    #[test]
    fn tt_witnesses() {
        assert!(contains_tt(&Tournament::x13(), 5).is_none());
        assert!(contains_tt(&Tournament::paley(7).unwrap(), 4).is_none());
        let s = contains_tt(&Tournament::x13(), 4).unwrap();
        assert_eq!(s.len(), 4);
        assert!(is_transitive(&Tournament::x13(), s));
    }

    #[test]
    fn all_tt_lists_every_witness_once() {
        let t = Tournament::x13();
        let tt4 = all_tt(t.rows(), t.vertices(), 4);
        let brute: Vec<VertexSet> = (0u32..1 << 13)
            .map(VertexSet::from_bits)
            .filter(|s| s.len() == 4 && is_transitive(&t, *s))
            .collect();
        assert_eq!(tt4, brute);
    }

    #[test]
    fn packing_of_two_blocks() {
        let tt5 = Tournament::transitive(5).unwrap();
        let c3 = Tournament::paley(3).unwrap();
        let t = c3.dominating_sum(&tt5).unwrap().dominating_sum(&tt5).unwrap();
        let p = disjoint_tt5_packing(&t, 2).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p[0].is_disjoint(p[1]));
        assert!(p.iter().all(|&s| s.len() == 5 && is_transitive(&t, s)));
        assert!(disjoint_tt5_packing(&Tournament::x13(), 1).is_none());
    }

    #[test]
    fn update_tracks_recomputation() {
        // two triangles with nothing decided between them
        let c3 = Tournament::paley(3).unwrap();
        let mut p = PartialTournament::disjoint_union(&c3, &c3).unwrap();
        let mut l = maximal_transitive_sets_partial(&p);
        assert_eq!(l.len(), 6);
        let pairs: Vec<_> = p.undecided().collect();
        for (k, (a, b)) in pairs.into_iter().enumerate() {
            let (a, b) = if k % 2 == 0 { (a, b) } else { (b, a) };
            p = p.add_arc(a, b).unwrap();
            l = update_transitive_sets(&l, &p, a, b);
            assert_eq!(l, maximal_transitive_sets_partial(&p));
        }
        assert_eq!(l, maximal_transitive_sets(&p.to_tournament().unwrap()));
    }
}
