//! The four 3-chromatic tournaments on seven vertices, in their drawn labelling.
//!
//! All four share the triangles `1 -> 2 -> 3 -> 1` and `4 -> 5 -> 6 -> 4`, with
//! `0` dominating `{1, 2, 3}` and dominated by `{4, 5, 6}`. They differ only in
//! the nine arcs between the two triangles.

use crate::tournament::Tournament;

const COMMON: [(usize, usize); 12] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (4, 0),
    (5, 0),
    (6, 0),
    (1, 2),
    (2, 3),
    (3, 1),
    (4, 5),
    (5, 6),
    (6, 4),
];

fn build(cross: [(usize, usize); 9]) -> Tournament {
    let arcs: Vec<_> = COMMON.iter().chain(cross.iter()).copied().collect();
    Tournament::from_arcs(7, &arcs).expect("drawn tournaments are complete")
}

/// The Paley tournament on seven vertices as drawn with two triangles around 0.
/// Isomorphic to [`Tournament::paley`]`(7)` but with a different labelling.
pub fn pal7_drawn() -> Tournament {
    build([(1, 5), (1, 6), (4, 1), (2, 5), (2, 4), (6, 2), (3, 4), (3, 6), (5, 3)])
}

pub fn w() -> Tournament {
    build([(1, 5), (1, 6), (1, 4), (2, 5), (2, 4), (2, 6), (3, 4), (3, 6), (3, 5)])
}

pub fn w0() -> Tournament {
    build([(1, 5), (1, 6), (4, 1), (2, 6), (2, 4), (5, 2), (3, 4), (3, 5), (6, 3)])
}

/// The rigid one; every 4-chromatic tournament on 12 vertices is a gluing of it with `TT_5`.
pub fn w1() -> Tournament {
    build([(1, 5), (1, 6), (1, 4), (2, 6), (2, 4), (5, 2), (3, 4), (3, 5), (6, 3)])
}

/// `[pal7_drawn, w, w0, w1]` with their names.
pub fn seven_vertex_three_chromatic() -> [(&'static str, Tournament); 4] {
    [("Pal7", pal7_drawn()), ("W", w()), ("W0", w0()), ("W1", w1())]
}
