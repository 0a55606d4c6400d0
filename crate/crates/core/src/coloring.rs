//! Acyclic colourings: k-colourability, dichromatic number, witness partitions.
//!
//! A k-colouring is searched for as a sequence of colour classes. Each class is
//! taken to be a maximal transitive set of what is still uncoloured and to
//! contain the lowest uncoloured vertex; both restrictions lose nothing because
//! classes are unordered and any class can be grown to a maximal one by stealing
//! vertices from the others. The candidate list for the residual graph is the
//! parent's list with the removed vertices deleted.

use std::collections::HashSet;

use crate::digraph;
use crate::error::{Error, Result};
use crate::partial::PartialTournament;
use crate::tournament::Tournament;
use crate::transitive::{self, TransitiveSetList};
use crate::vertex_set::VertexSet;

/// A partition of the vertex set into transitive classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColorPartition {
    classes: Vec<VertexSet>,
}

impl ColorPartition {
    pub fn new(classes: Vec<VertexSet>) -> Self {
        ColorPartition { classes }
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Colour index of every vertex.
    pub fn labels(&self, n: usize) -> Vec<usize> {
        let mut labels = vec![usize::MAX; n];
        for (c, class) in self.classes.iter().enumerate() {
            for v in *class {
                labels[v] = c;
            }
        }
        labels
    }

    /// Checks the partition against `t` from scratch: classes are non-empty,
    /// pairwise disjoint, cover every vertex, and have pairwise distinct inner
    /// out-degrees (the transitivity criterion).
    pub fn verify(&self, t: &Tournament) -> bool {
        let mut seen = VertexSet::EMPTY;
        for &c in &self.classes {
            if c.is_empty() || !c.is_disjoint(seen) || !transitive::is_transitive(t, c) {
                return false;
            }
            seen |= c;
        }
        seen == t.vertices()
    }

    /// Same as [`verify`](Self::verify) for a partial tournament: each class must
    /// be fully decided.
    pub fn verify_partial(&self, p: &PartialTournament) -> bool {
        let mut seen = VertexSet::EMPTY;
        for &c in &self.classes {
            if c.is_empty() || !c.is_disjoint(seen) || !digraph::is_acyclic(p.constraint_rows(), c) {
                return false;
            }
            seen |= c;
        }
        seen == p.vertices()
    }
}

/// Search configuration. The transposition cache remembers `(uncoloured set,
/// colours left)` states already shown to fail; off by default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ColoringOptions {
    pub memoize: bool,
}

/// Partition search over a fixed candidate list.
pub struct Colorer<'a> {
    rows: &'a [u32],
    options: ColoringOptions,
    failed: HashSet<(u32, usize)>,
    nodes: u64,
}

impl<'a> Colorer<'a> {
    pub fn new(rows: &'a [u32], options: ColoringOptions) -> Self {
        Colorer { rows, options, failed: HashSet::new(), nodes: 0 }
    }

    /// Search nodes expanded so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Tries to split `remaining` into at most `k` classes drawn from `sets`
    /// (restricted to `remaining`). `sets` must contain every maximal acyclic
    /// subset of `remaining`, possibly as restrictions of larger sets.
    pub fn partition(
        &mut self,
        sets: &[VertexSet],
        remaining: VertexSet,
        k: usize,
    ) -> Option<Vec<VertexSet>> {
        let raw: Vec<u32> = sets.iter().map(|s| s.bits()).collect();
        let mut classes = Vec::with_capacity(k);
        if self.search(&raw, remaining.bits(), k, &mut classes) {
            Some(classes.into_iter().map(VertexSet::from_bits).collect())
        } else {
            None
        }
    }

    fn search(&mut self, sets: &[u32], remaining: u32, k: usize, classes: &mut Vec<u32>) -> bool {
        self.nodes += 1;
        if remaining == 0 {
            return true;
        }
        if k == 0 {
            return false;
        }
        if k == 1 {
            if digraph::is_acyclic(self.rows, VertexSet::from_bits(remaining)) {
                classes.push(remaining);
                return true;
            }
            return false;
        }
        if self.options.memoize && self.failed.contains(&(remaining, k)) {
            return false;
        }

        let mut restricted: Vec<u32> = sets.iter().map(|s| s & remaining).filter(|&s| s != 0).collect();
        restricted.sort_unstable();
        restricted.dedup();
        let largest = restricted.iter().map(|s| s.count_ones()).max().unwrap_or(0);
        let found = if (remaining.count_ones() as usize) > k * largest as usize {
            false
        } else {
            let v = remaining.trailing_zeros();
            let mut cands: Vec<u32> = restricted.iter().copied().filter(|s| s >> v & 1 == 1).collect();
            // largest first, then bit order; drop candidates dominated by a kept one
            cands.sort_unstable_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
            let mut maximal: Vec<u32> = Vec::with_capacity(cands.len());
            for c in cands {
                if !maximal.iter().any(|&m| c & !m == 0) {
                    maximal.push(c);
                }
            }
            let mut ok = false;
            for c in maximal {
                classes.push(c);
                if self.search(&restricted, remaining & !c, k - 1, classes) {
                    ok = true;
                    break;
                }
                classes.pop();
            }
            ok
        };
        if !found && self.options.memoize {
            self.failed.insert((remaining, k));
        }
        found
    }
}

/// A colouring of `t` with at most `k` transitive classes, if one exists.
pub fn k_colorable(t: &Tournament, k: usize) -> Option<ColorPartition> {
    k_colorable_with(t, k, ColoringOptions::default())
}

pub fn k_colorable_with(t: &Tournament, k: usize, options: ColoringOptions) -> Option<ColorPartition> {
    let list = transitive::maximal_transitive_sets(t);
    k_colorable_from_list(t, &list, k, options)
}

/// As [`k_colorable`], reusing an already computed maximal-set list.
pub fn k_colorable_from_list(
    t: &Tournament,
    list: &TransitiveSetList,
    k: usize,
    options: ColoringOptions,
) -> Option<ColorPartition> {
    let mut colorer = Colorer::new(t.rows(), options);
    colorer.partition(list.sets(), t.vertices(), k).map(ColorPartition::new)
}

/// Least `k` for which `t` is `k`-colourable, together with a witness.
pub fn dichromatic_witness(t: &Tournament) -> (usize, ColorPartition) {
    let list = transitive::maximal_transitive_sets(t);
    // a class has at most `largest` vertices, so fewer colours cannot work
    let largest = list.max_size().max(1);
    let mut k = t.n().div_ceil(largest).max(1);
    loop {
        if let Some(p) = k_colorable_from_list(t, &list, k, ColoringOptions::default()) {
            return (k, p);
        }
        k += 1;
    }
}

/// The dichromatic number of `t`.
pub fn dichromatic_number(t: &Tournament) -> usize {
    dichromatic_witness(t).0
}

/// True iff the vertices of `p` split into at most `k` fully decided transitive
/// sets. Such a cover survives in every completion, so `true` certifies that
/// every completion is `k`-colourable.
pub fn k_colorable_partial(p: &PartialTournament, k: usize) -> bool {
    let list = transitive::maximal_transitive_sets_partial(p);
    k_colorable_partial_from_list(p, &list, k).is_some()
}

/// As [`k_colorable_partial`] with a precomputed list, returning a witness.
pub fn k_colorable_partial_from_list(
    p: &PartialTournament,
    list: &TransitiveSetList,
    k: usize,
) -> Option<ColorPartition> {
    let mut colorer = Colorer::new(p.constraint_rows(), ColoringOptions::default());
    colorer.partition(list.sets(), p.vertices(), k).map(ColorPartition::new)
}

/// Dichromatic number of the subtournament induced by `s`.
pub fn chromatic_of_subset(t: &Tournament, s: VertexSet) -> Result<usize> {
    if s.is_empty() {
        return Err(Error::Parameter("chromatic number of an empty set".into()));
    }
    Ok(dichromatic_number(&t.induced(s)?))
}

/// True iff `t[s]` is colourable with at most `k` classes.
pub fn subset_k_colorable(t: &Tournament, s: VertexSet, k: usize) -> bool {
    let sets = digraph::maximal_acyclic_sets(t.rows(), s);
    Colorer::new(t.rows(), ColoringOptions::default()).partition(&sets, s, k).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn triangle_needs_two() {
        let c3 = Tournament::paley(3).unwrap();
        assert!(k_colorable(&c3, 1).is_none());
        let p = k_colorable(&c3, 2).unwrap();
        assert!(p.verify(&c3));
        assert_eq!(dichromatic_number(&c3), 2);
    }

    #[test]
    fn transitive_needs_one() {
        for n in [1, 2, 5, 17, 32] {
            assert_eq!(dichromatic_number(&Tournament::transitive(n).unwrap()), 1);
        }
    }

    #[test]
    fn seven_vertex_three_chromatic() {
        for (name, t) in named::seven_vertex_three_chromatic() {
            assert!(k_colorable(&t, 2).is_none(), "{name}");
            assert!(k_colorable(&t, 3).unwrap().verify(&t), "{name}");
        }
        assert_eq!(dichromatic_number(&Tournament::paley(7).unwrap()), 3);
    }

    #[test]
    fn paley11_is_four_chromatic() {
        let t = Tournament::paley(11).unwrap();
        assert_eq!(dichromatic_number(&t), 4);
    }

    #[test]
    fn memoized_search_agrees() {
        let t = Tournament::paley(11).unwrap();
        let opts = ColoringOptions { memoize: true };
        assert!(k_colorable_with(&t, 3, opts).is_none());
        assert!(k_colorable_with(&t, 4, opts).unwrap().verify(&t));
    }

    #[test]
    fn partial_colourability() {
        let p = PartialTournament::empty(6).unwrap();
        // nothing decided: only singletons are safe classes
        assert!(!k_colorable_partial(&p, 5));
        assert!(k_colorable_partial(&p, 6));
        let w1 = named::w1();
        let tt5 = Tournament::transitive(5).unwrap();
        let q = PartialTournament::disjoint_union(&w1, &tt5).unwrap();
        // no arcs across, so classes cannot mix the two sides
        assert!(!k_colorable_partial(&q, 3));
        assert!(k_colorable_partial(&q, 4));
        let full = PartialTournament::from(&w1);
        assert!(!k_colorable_partial(&full, 2));
        assert!(k_colorable_partial(&full, 3));
    }

    #[test]
    fn chromatic_of_subsets() {
        let t = Tournament::paley(11).unwrap();
        assert_eq!(chromatic_of_subset(&t, VertexSet::singleton(4)).unwrap(), 1);
        assert!(chromatic_of_subset(&t, VertexSet::EMPTY).is_err());
        assert!(subset_k_colorable(&t, VertexSet::from([0, 1, 2]), 2));
    }
}
