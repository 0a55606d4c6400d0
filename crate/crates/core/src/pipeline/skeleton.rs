//! The 11-vertex skeleton `W_1 + TT_4` and the 640 ways of adding a fifth
//! transitive vertex.
//!
//! Vertices `0..7` carry the drawn labelling of `W_1`, `7..11` are `a, b, c, d`
//! in transitive order and `11` is `x`. The skeleton is isomorphic to `Pal_11`
//! and, since `W_1` is rigid, the arcs between `W_1` and `a, b, c, d` are forced.

use crate::error::{Error, Result};
use crate::isomorphism;
use crate::named;
use crate::tournament::Tournament;
use crate::transitive;
use crate::vertex_set::VertexSet;

pub const A: usize = 7;
pub const B: usize = 8;
pub const C: usize = 9;
pub const D: usize = 10;
pub const X: usize = 11;

/// Vertices of `W_1` inside the skeleton.
pub fn w1_part() -> VertexSet {
    VertexSet::full(7)
}

/// `{a, b, c, d, x}`, which induces `TT_5`.
pub fn transitive_part() -> VertexSet {
    VertexSet::from([A, B, C, D, X])
}

// (u, v) means u -> v
const CROSS: [(usize, usize); 28] = [
    (2, A), (B, 2), (C, 2), (2, D),
    (3, A), (B, 3), (3, C), (D, 3),
    (4, A), (4, B), (C, 4), (4, D),
    (5, A), (B, 5), (5, C), (D, 5),
    (0, A), (0, B), (C, 0), (D, 0),
    (A, 1), (1, B), (C, 1), (D, 1),
    (A, 6), (6, B), (6, C), (D, 6),
];

/// The skeleton from hard-coded data.
pub fn skeleton() -> Tournament {
    let w1 = named::w1();
    let mut arcs: Vec<(usize, usize)> = w1.arcs().collect();
    arcs.extend([(A, B), (A, C), (A, D), (B, C), (B, D), (C, D)]);
    arcs.extend(CROSS);
    Tournament::from_arcs(11, &arcs).expect("skeleton data is a tournament")
}

/// Rebuilds the skeleton from `Pal_11`: every copy of `W_1` in `Pal_11`, with the
/// remaining four vertices sorted into transitive order, must give the same
/// tournament. Returns that tournament and the number of copies inspected.
pub fn derive_from_paley() -> Result<(Tournament, usize)> {
    let pal = Tournament::paley(11)?;
    let w1 = named::w1();
    let mut found: Option<Tournament> = None;
    let mut copies = 0;
    for mask in 0u32..1 << 11 {
        if mask.count_ones() != 7 {
            continue;
        }
        let s = VertexSet::from_bits(mask);
        let Some(phi) = isomorphism::isomorphism(&w1, &pal.induced(s)?) else {
            continue;
        };
        copies += 1;
        let members = s.to_vec();
        let rest = pal.vertices() - s;
        if !transitive::is_transitive(&pal, rest) {
            return Err(Error::Structural(format!("complement of W_1 copy {s} is not TT_4")));
        }
        let mut tail = rest.to_vec();
        tail.sort_by_key(|&v| std::cmp::Reverse(pal.out_degree_in(v, rest)));
        // position p of the skeleton is host vertex order[p]
        let mut order: Vec<usize> = (0..7).map(|v| members[phi[v]]).collect();
        order.extend(tail);
        let t = Tournament::from_fn(11, |i, j| pal.has_arc(order[i], order[j]))?;
        match &found {
            None => found = Some(t),
            Some(f) if *f == t => {}
            Some(_) => return Err(Error::Structural(format!("copy {s} gives a different skeleton"))),
        }
    }
    found.map(|t| (t, copies)).ok_or_else(|| Error::Structural("Pal_11 has no W_1".into()))
}

/// Checks the hard-coded skeleton against the derivation.
pub fn check_skeleton() -> Result<usize> {
    let (derived, copies) = derive_from_paley()?;
    if derived != skeleton() {
        return Err(Error::Structural("hard-coded skeleton differs from the Pal_11 derivation".into()));
    }
    Ok(copies)
}

/// One placement of `x`: its rank among `a, b, c, d` (0 = before `a`, 4 = after
/// `d`) and its arcs to `W_1` (bit `v` set means `x -> v`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Placement {
    pub rank: usize,
    pub out_to_w1: u8,
}

impl Placement {
    pub const COUNT: usize = 5 * 128;

    /// Placements in a fixed order: `index = rank * 128 + out_to_w1`.
    pub fn from_index(index: usize) -> Self {
        Placement { rank: index / 128, out_to_w1: (index % 128) as u8 }
    }

    pub fn index(&self) -> usize {
        self.rank * 128 + self.out_to_w1 as usize
    }

    /// The 12-vertex tournament `skeleton + x`.
    pub fn tournament(&self, skeleton: &Tournament) -> Tournament {
        let tt = [A, B, C, D];
        Tournament::from_fn(12, |i, j| {
            if j < X {
                return skeleton.has_arc(i, j);
            }
            // pair (i, x)
            match tt.iter().position(|&v| v == i) {
                Some(k) => k < self.rank,
                None => self.out_to_w1 >> i & 1 == 0,
            }
        })
        .expect("12 vertices")
    }
}
