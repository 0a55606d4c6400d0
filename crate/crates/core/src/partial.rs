//! Partially oriented tournaments: the search state of the completion procedure.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tournament::{split_text, Tournament};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// An oriented graph on `n` vertices together with the list of pairs that carry
/// no arc yet.
///
/// Every pair `i < j` is in exactly one state: `i -> j`, `j -> i`, or undecided.
/// The undecided list is kept sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialTournament {
    n: usize,
    out: [u32; MAX_VERTICES],
    // `out` plus both directions of every undecided pair
    constraint: [u32; MAX_VERTICES],
    undecided: Vec<(u8, u8)>,
}

impl PartialTournament {
    /// `n` vertices, no arcs.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::Parameter(format!("vertex count must be in 1..=32, got {n}")));
        }
        let mut undecided = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                undecided.push((i as u8, j as u8));
            }
        }
        let mut constraint = [0; MAX_VERTICES];
        for (v, row) in constraint.iter_mut().enumerate().take(n) {
            *row = VertexSet::full(n).without(v).bits();
        }
        Ok(PartialTournament { n, out: [0; MAX_VERTICES], constraint, undecided })
    }

    /// Builds a partial tournament from explicit arc rows. Pairs with no arc are
    /// undecided; digons and loops are rejected.
    pub fn from_rows(rows: &[u32]) -> Result<Self> {
        let n = rows.len();
        let mut p = PartialTournament::empty(n)?;
        let full = VertexSet::full(n).bits();
        for (i, &r) in rows.iter().enumerate() {
            if r & !full != 0 || r >> i & 1 == 1 {
                return Err(Error::Parameter(format!("row {i} is not a valid out-set")));
            }
            p.out[i] = r;
        }
        for i in 0..n {
            for j in i + 1..n {
                if p.out[i] >> j & 1 == 1 && p.out[j] >> i & 1 == 1 {
                    return Err(Error::Parameter(format!("digon between {i} and {j}")));
                }
            }
        }
        p.undecided.retain(|&(i, j)| {
            let (i, j) = (i as usize, j as usize);
            p.out[i] >> j & 1 == 0 && p.out[j] >> i & 1 == 0
        });
        for i in 0..n {
            p.constraint[i] = p.out[i];
        }
        for &(i, j) in &p.undecided {
            p.constraint[i as usize] |= 1 << j;
            p.constraint[j as usize] |= 1 << i;
        }
        Ok(p)
    }

    /// Disjoint union of two tournaments; every pair between them is undecided.
    /// Vertices of `b` are shifted by `a.n()`.
    pub fn disjoint_union(a: &Tournament, b: &Tournament) -> Result<Self> {
        let (na, nb) = (a.n(), b.n());
        if na + nb > MAX_VERTICES {
            return Err(Error::Parameter(format!("{na} + {nb} vertices exceeds 32")));
        }
        let mut rows = vec![0u32; na + nb];
        for v in 0..na {
            rows[v] = a.out(v).bits();
        }
        for v in 0..nb {
            rows[na + v] = b.out(v).bits() << na;
        }
        PartialTournament::from_rows(&rows)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Decided out-neighbours of `v`.
    #[inline]
    pub fn out(&self, v: usize) -> VertexSet {
        VertexSet::from_bits(self.out[v])
    }

    #[inline]
    pub fn rows(&self) -> &[u32] {
        &self.out[..self.n]
    }

    /// Decided arcs plus a digon on every undecided pair. A set is acyclic here
    /// iff it is fully decided and transitive, i.e. transitive in every completion.
    #[inline]
    pub fn constraint_rows(&self) -> &[u32] {
        &self.constraint[..self.n]
    }

    #[inline]
    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.out[i] >> j & 1 == 1
    }

    #[inline]
    pub fn is_decided(&self, i: usize, j: usize) -> bool {
        self.has_arc(i, j) || self.has_arc(j, i)
    }

    /// Undecided pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn undecided(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.undecided.iter().map(|&(i, j)| (i as usize, j as usize))
    }

    #[inline]
    pub fn undecided_count(&self) -> usize {
        self.undecided.len()
    }

    #[inline]
    pub fn is_complete(&self) -> bool {
        self.undecided.is_empty()
    }

    /// Orients the undecided pair `{a, b}` as `a -> b`, in place.
    pub fn orient(&mut self, a: usize, b: usize) -> Result<()> {
        if a >= self.n || b >= self.n || a == b {
            return Err(Error::Usage(format!("no pair {{{a},{b}}} on {} vertices", self.n)));
        }
        let key = (a.min(b) as u8, a.max(b) as u8);
        let idx = self
            .undecided
            .binary_search(&key)
            .map_err(|_| Error::Usage(format!("pair {{{a},{b}}} is already oriented")))?;
        self.undecided.remove(idx);
        self.out[a] |= 1 << b;
        self.constraint[b] &= !(1 << a);
        Ok(())
    }

    /// Copy with the undecided pair `{a, b}` oriented as `a -> b`.
    pub fn add_arc(&self, a: usize, b: usize) -> Result<Self> {
        let mut p = self.clone();
        p.orient(a, b)?;
        Ok(p)
    }

    /// The tournament, when every pair is decided.
    pub fn to_tournament(&self) -> Option<Tournament> {
        if self.is_complete() {
            Some(Tournament::from_rows(self.rows()).expect("complete partial tournament"))
        } else {
            None
        }
    }

    /// True when `t` agrees with every decided arc.
    pub fn is_completed_by(&self, t: &Tournament) -> bool {
        t.n() == self.n && (0..self.n).all(|v| self.out[v] & !t.out(v).bits() == 0)
    }
}

impl From<&Tournament> for PartialTournament {
    fn from(t: &Tournament) -> Self {
        PartialTournament::from_rows(t.rows()).expect("tournaments are valid oriented graphs")
    }
}

impl fmt::Display for PartialTournament {
    /// Same as the tournament text format with `?` for undecided pairs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        s.push_str(&self.n.to_string());
        s.push(':');
        for i in 0..self.n {
            for j in i + 1..self.n {
                s.push(if self.has_arc(i, j) {
                    '1'
                } else if self.has_arc(j, i) {
                    '0'
                } else {
                    '?'
                });
            }
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for PartialTournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialTournament({self})")
    }
}

impl FromStr for PartialTournament {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, bits) = split_text(s)?;
        let mut rows = vec![0u32; n];
        let mut chars = bits.chars();
        for i in 0..n {
            for j in i + 1..n {
                match chars.next() {
                    Some('1') => rows[i] |= 1 << j,
                    Some('0') => rows[j] |= 1 << i,
                    Some('?') => {}
                    other => {
                        return Err(Error::Parse(format!("unexpected character {other:?}")));
                    }
                }
            }
        }
        PartialTournament::from_rows(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_arc_updates_state() {
        let p = PartialTournament::empty(4).unwrap();
        assert_eq!(p.undecided_count(), 6);
        let q = p.add_arc(2, 0).unwrap();
        assert!(q.has_arc(2, 0));
        assert_eq!(q.undecided_count(), 5);
        assert!(matches!(q.add_arc(0, 2), Err(Error::Usage(_))));
        assert!(matches!(q.add_arc(2, 0), Err(Error::Usage(_))));
    }

    #[test]
    fn orienting_everything_yields_a_tournament() {
        let mut p = PartialTournament::empty(5).unwrap();
        let pairs: Vec<_> = p.undecided().collect();
        for (k, &(i, j)) in pairs.iter().enumerate().rev() {
            if k % 3 == 0 {
                p.orient(j, i).unwrap();
            } else {
                p.orient(i, j).unwrap();
            }
        }
        let t = p.to_tournament().unwrap();
        assert!(p.is_completed_by(&t));
    }

    #[test]
    fn disjoint_union_leaves_cross_pairs_open() {
        let a = Tournament::transitive(5).unwrap();
        let b = Tournament::paley(7).unwrap();
        let p = PartialTournament::disjoint_union(&b, &a).unwrap();
        assert_eq!(p.undecided_count(), 35);
        assert!(p.undecided().all(|(i, j)| i < 7 && j >= 7));
    }

    #[test]
    fn text_with_unknowns() {
        let p: PartialTournament = "4:1?0??1".parse().unwrap();
        assert_eq!(p.undecided_count(), 3);
        assert_eq!(p.to_string(), "4:1?0??1");
        assert!(p.has_arc(0, 1) && p.has_arc(3, 0) && p.has_arc(2, 3));
        assert!(p.to_tournament().is_none());
    }
}
