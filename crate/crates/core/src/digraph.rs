//! Acyclicity primitives over bit-row adjacency (`rows[v]` = out-neighbours of `v`).
//!
//! These work for tournaments and for partially oriented graphs alike: an
//! undecided pair simply has no bit in either row.

use crate::vertex_set::VertexSet;

/// True iff the subgraph induced by `s` has no directed cycle.
pub fn is_acyclic(rows: &[u32], s: VertexSet) -> bool {
    let mut rest = s.bits();
    while rest != 0 {
        let mut sinks = 0u32;
        let mut it = rest;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            if rows[v] & rest == 0 {
                sinks |= 1 << v;
            }
        }
        if sinks == 0 {
            return false;
        }
        rest &= !sinks;
    }
    true
}

/// Vertices of `within` reachable from `from` by directed paths inside `within`
/// (the start set itself is included when it lies in `within`).
#[inline]
pub fn reach(rows: &[u32], from: u32, within: u32) -> u32 {
    let mut seen = from & within;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u32;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            next |= rows[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// True iff `v` lies on a directed cycle of the subgraph induced by `within ∪ {v}`.
#[inline]
pub fn on_cycle(rows: &[u32], within: u32, v: usize) -> bool {
    let within = within | 1 << v;
    reach(rows, rows[v] & within, within) >> v & 1 == 1
}

/// True iff adding `v` to the acyclic set `s` keeps it acyclic.
#[inline]
pub fn extends_acyclic(rows: &[u32], s: u32, v: usize) -> bool {
    !on_cycle(rows, s, v)
}

/// All inclusion-maximal acyclic subsets of `universe`, sorted by bit pattern.
///
/// Branches on vertices in increasing order (include / exclude). An exclude
/// branch survives only while every excluded vertex can still be closed into a
/// cycle by vertices that are chosen or undecided, so every leaf is maximal.
pub fn maximal_acyclic_sets(rows: &[u32], universe: VertexSet) -> Vec<VertexSet> {
    maximal_acyclic_sets_containing(rows, universe, VertexSet::EMPTY)
}

/// Maximal acyclic subsets of `universe` that contain `forced`, sorted. Empty
/// when `forced` is cyclic or leaves `universe`.
pub fn maximal_acyclic_sets_containing(
    rows: &[u32],
    universe: VertexSet,
    forced: VertexSet,
) -> Vec<VertexSet> {
    let mut out = Vec::new();
    if universe.is_empty() || !forced.is_subset(universe) || !is_acyclic(rows, forced) {
        return out;
    }
    enumerate_rec(rows, forced.bits(), (universe - forced).bits(), 0, &mut out);
    out.sort_unstable();
    out
}

fn enumerate_rec(rows: &[u32], chosen: u32, rest: u32, excluded: u32, out: &mut Vec<VertexSet>) {
    let open = chosen | rest;
    let mut ex = excluded;
    while ex != 0 {
        let x = ex.trailing_zeros() as usize;
        ex &= ex - 1;
        if !on_cycle(rows, open, x) {
            return;
        }
    }
    if rest == 0 {
        out.push(VertexSet::from_bits(chosen));
        return;
    }
    if is_acyclic(rows, VertexSet::from_bits(open)) {
        // Everything left fits; excluded vertices were checked against `open`.
        out.push(VertexSet::from_bits(open));
        return;
    }
    let v = rest.trailing_zeros() as usize;
    let rest = rest & !(1 << v);
    if extends_acyclic(rows, chosen, v) {
        enumerate_rec(rows, chosen | 1 << v, rest, excluded, out);
    }
    if on_cycle(rows, chosen | rest, v) {
        enumerate_rec(rows, chosen, rest, excluded | 1 << v, out);
    }
}
