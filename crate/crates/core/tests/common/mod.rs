//! Brute-force oracles. Nothing here uses the crate's search code: colourings
//! are exhaustive labellings, transitivity is "no directed triangle", and
//! canonical codes are minima over all relabellings.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dichromatic::{PartialTournament, Tournament, VertexSet};

/// A tournament (or fully decided part of a partial one) is transitive iff it
/// has no directed triangle.
pub fn triangle_free(t: &Tournament, s: &[usize]) -> bool {
    for (x, &a) in s.iter().enumerate() {
        for (y, &b) in s.iter().enumerate().skip(x + 1) {
            for &c in &s[y + 1..] {
                let cyc = t.has_arc(a, b) && t.has_arc(b, c) && t.has_arc(c, a)
                    || t.has_arc(a, c) && t.has_arc(c, b) && t.has_arc(b, a);
                if cyc {
                    return false;
                }
            }
        }
    }
    true
}

/// Some labelling of the vertices with `k` colours has only transitive classes.
pub fn brute_k_colorable(t: &Tournament, k: usize) -> bool {
    let n = t.n();
    let total = k.pow(n as u32);
    (0..total).any(|mut code| {
        let mut classes = vec![Vec::new(); k];
        for v in 0..n {
            classes[code % k].push(v);
            code /= k;
        }
        classes.iter().all(|c| triangle_free(t, c))
    })
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Every maximal transitive subset, by scanning all subsets.
pub fn brute_maximal_transitive(t: &Tournament) -> BTreeSet<u32> {
    let n = t.n();
    let trans: Vec<bool> = (0..1u32 << n).map(|m| triangle_free(t, &members(m, n))).collect();
    (1..1u32 << n)
        .filter(|&m| trans[m as usize] && (0..n).all(|v| m >> v & 1 == 1 || !trans[(m | 1 << v) as usize]))
        .collect()
}

/// Maximal sets of a partial tournament whose pairs are all decided and which
/// are transitive.
pub fn brute_maximal_transitive_partial(p: &PartialTournament) -> BTreeSet<u32> {
    let n = p.n();
    let ok = |m: u32| {
        let vs = members(m, n);
        let decided = vs.iter().all(|&a| vs.iter().all(|&b| a == b || p.is_decided(a, b)));
        decided && {
            let t = Tournament::from_fn(n, |i, j| p.has_arc(i, j)).expect("order");
            triangle_free(&t, &vs)
        }
    };
    let good: Vec<bool> = (0..1u32 << n).map(ok).collect();
    (1..1u32 << n)
        .filter(|&m| good[m as usize] && (0..n).all(|v| m >> v & 1 == 1 || !good[(m | 1 << v) as usize]))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest arc string over all relabellings.
pub fn brute_canonical(t: &Tournament, perms: &[Vec<usize>]) -> Vec<bool> {
    let n = t.n();
    perms
        .iter()
        .map(|p| {
            let mut code = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in i + 1..n {
                    code.push(t.has_arc(p[i], p[j]));
                }
            }
            code
        })
        .min()
        .expect("at least one permutation")
}

/// Number of isomorphism classes of tournaments on `n` vertices, by
/// deduplicating every labelled tournament.
pub fn brute_census(n: usize) -> usize {
    let perms = permutations(n);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    for bits in 0u64..1 << pairs.len() {
        let t = Tournament::from_fn(n, |i, j| {
            let k = pairs.iter().position(|&p| p == (i, j)).expect("pair");
            bits >> k & 1 == 1
        })
        .expect("order");
        seen.insert(brute_canonical(&t, &perms));
    }
    seen.len()
}

/// The partial tournament agreeing with `t` on the pairs whose bit is set in
/// `mask` (pairs in lexicographic order), all others undecided.
pub fn partial_of(t: &Tournament, mask: u32) -> PartialTournament {
    let n = t.n();
    let mut p = PartialTournament::empty(n).expect("order");
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> k & 1 == 1 {
                if t.has_arc(i, j) {
                    p.orient(i, j).expect("undecided");
                } else {
                    p.orient(j, i).expect("undecided");
                }
            }
            k += 1;
        }
    }
    p
}

pub fn bits(sets: &[VertexSet]) -> BTreeSet<u32> {
    sets.iter().map(|s| s.bits()).collect()
}

/// Tournaments on `n <= 7` vertices (up to isomorphism) where `k_colorable`
/// and the labelling oracle disagree, for `k = 1, 2, 3`.
pub fn coloring_mismatches(max_n: usize) -> usize {
    let mut bad = 0;
    for n in 1..=max_n {
        for t in dichromatic::isomorphism::enumerate_tournaments(n).expect("census") {
            for k in 1..=3 {
                let fast = dichromatic::k_colorable(&t, k);
                if fast.as_ref().is_some_and(|w| !w.verify(&t)) || fast.is_some() != brute_k_colorable(&t, k) {
                    bad += 1;
                }
            }
        }
    }
    bad
}

/// Tournaments on `n <= max_n` vertices whose maximal transitive sets differ
/// from the subset scan.
pub fn maximal_set_mismatches(max_n: usize) -> usize {
    let mut bad = 0;
    for n in 1..=max_n {
        for t in dichromatic::isomorphism::enumerate_tournaments(n).expect("census") {
            if bits(dichromatic::maximal_transitive_sets(&t).sets()) != brute_maximal_transitive(&t) {
                bad += 1;
            }
        }
    }
    bad
}

/// Checks the incremental maximal-set update on every tournament class of
/// order `n`: for every set of decided pairs and every further pair, updating
/// the list must agree with recomputing it. With `brute`, each recomputed list
/// is also compared with the subset scan. Returns (transitions, mismatches).
pub fn update_mismatches(n: usize, brute: bool) -> (u64, u64) {
    use dichromatic::transitive::{maximal_transitive_sets_partial, update_transitive_sets};
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let (mut transitions, mut bad) = (0, 0);
    for t in dichromatic::isomorphism::enumerate_tournaments(n).expect("census") {
        let partials: Vec<PartialTournament> = (0..1u32 << pairs.len()).map(|m| partial_of(&t, m)).collect();
        let lists: Vec<_> = partials.iter().map(maximal_transitive_sets_partial).collect();
        for (mask, p) in partials.iter().enumerate() {
            if brute && bits(lists[mask].sets()) != brute_maximal_transitive_partial(p) {
                bad += 1;
            }
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    continue;
                }
                let next = mask | 1 << k;
                let (a, b) = if t.has_arc(i, j) { (i, j) } else { (j, i) };
                let updated = update_transitive_sets(&lists[mask], &partials[next], a, b);
                transitions += 1;
                if updated.sets() != lists[next].sets() {
                    bad += 1;
                }
            }
        }
    }
    (transitions, bad)
}
