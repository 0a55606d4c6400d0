//! Complete tournaments on at most 32 vertices and their named constructors.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// An orientation of the complete graph on `n` vertices.
///
/// `out[i]` holds the out-neighbourhood of `i`; exactly one of `i -> j` and
/// `j -> i` is present for every pair, and there are no loops.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    out: [u32; MAX_VERTICES],
}

impl Tournament {
    /// Builds a tournament from a predicate `arc(i, j)` queried for every `i < j`;
    /// `true` means `i -> j`, `false` means `j -> i`.
    pub fn from_fn(n: usize, mut arc: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_order(n)?;
        let mut out = [0u32; MAX_VERTICES];
        for i in 0..n {
            for j in i + 1..n {
                if arc(i, j) {
                    out[i] |= 1 << j;
                } else {
                    out[j] |= 1 << i;
                }
            }
        }
        Ok(Tournament { n, out })
    }

    /// Builds a tournament from explicit out-neighbourhood rows, validating completeness.
    pub fn from_rows(rows: &[u32]) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let full = VertexSet::full(n).bits();
        let mut out = [0u32; MAX_VERTICES];
        for (i, &r) in rows.iter().enumerate() {
            if r & !full != 0 {
                return Err(Error::Parameter(format!("row {i} has bits outside 0..{n}")));
            }
            if r >> i & 1 == 1 {
                return Err(Error::Parameter(format!("loop at vertex {i}")));
            }
            out[i] = r;
        }
        for i in 0..n {
            for j in i + 1..n {
                let ij = out[i] >> j & 1;
                let ji = out[j] >> i & 1;
                if ij + ji != 1 {
                    return Err(Error::Parameter(format!(
                        "pair {{{i},{j}}} must carry exactly one arc"
                    )));
                }
            }
        }
        Ok(Tournament { n, out })
    }

    /// Builds a tournament from a list of arcs that must orient every pair exactly once.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        check_order(n)?;
        let mut rows = vec![0u32; n];
        for &(a, b) in arcs {
            if a >= n || b >= n || a == b {
                return Err(Error::Parameter(format!("bad arc {a}->{b} for n={n}")));
            }
            rows[a] |= 1 << b;
        }
        Tournament::from_rows(&rows)
    }

    /// Paley tournament: arc `i -> j` iff `j - i` is a non-zero square modulo `n`.
    pub fn paley(n: usize) -> Result<Self> {
        if n > 31 {
            return Err(Error::Parameter(format!("paley({n}): n must be at most 31")));
        }
        if !is_prime(n) {
            return Err(Error::Parameter(format!("paley({n}): n must be prime")));
        }
        if n % 4 != 3 {
            return Err(Error::Parameter(format!("paley({n}): n must be 3 mod 4")));
        }
        let mut square = vec![false; n];
        for x in 1..n {
            square[x * x % n] = true;
        }
        Tournament::from_fn(n, |i, j| square[(j - i) % n])
    }

    /// Transitive tournament `TT_k` with arc `i -> j` iff `i < j`.
    pub fn transitive(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parameter("transitive tournament needs k >= 1".into()));
        }
        Tournament::from_fn(k, |_, _| true)
    }

    /// Circulant tournament on `Z_n` with arc `i -> j` iff `(j - i) mod n` lies in `diffs`.
    pub fn circulant(n: usize, diffs: &[usize]) -> Result<Self> {
        check_order(n)?;
        let mut set = vec![false; n];
        for &d in diffs {
            set[d % n] = true;
        }
        for d in 1..n {
            if set[d] == set[n - d] {
                return Err(Error::Parameter(format!(
                    "difference set must contain exactly one of {d} and {}",
                    n - d
                )));
            }
        }
        Tournament::from_fn(n, |i, j| set[j - i])
    }

    /// The unique `TT_5`-free tournament on 13 vertices: `i -> j` iff
    /// `j - i mod 13` lies in `{1, 2, 3, 5, 6, 9}`.
    pub fn x13() -> Self {
        Tournament::circulant(13, &[1, 2, 3, 5, 6, 9]).expect("valid difference set")
    }

    /// The 19-vertex tournament obtained from `paley(7)` by replacing every vertex
    /// except 0 with a directed triangle.
    ///
    /// Vertex 0 keeps index 0 and the triangle of `i` occupies `3i-2, 3i-1, 3i`
    /// with internal cycle `3i-2 -> 3i-1 -> 3i -> 3i-2`.
    pub fn blowup_pal7() -> Self {
        let pal = Tournament::paley(7).expect("7 is a valid Paley order");
        let base = |v: usize| v.div_ceil(3);
        Tournament::from_fn(19, |a, b| {
            let (ba, bb) = (base(a), base(b));
            if ba == bb {
                // a < b inside one triangle: forward along the cycle except 3i -> 3i-2
                !(b - a == 2)
            } else {
                pal.has_arc(ba, bb)
            }
        })
        .expect("19 vertices")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// All vertices.
    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.out[i] >> j & 1 == 1
    }

    #[inline]
    pub fn out(&self, v: usize) -> VertexSet {
        VertexSet::from_bits(self.out[v])
    }

    #[inline]
    pub fn inn(&self, v: usize) -> VertexSet {
        VertexSet::from_bits(!self.out[v] & VertexSet::full(self.n).bits() & !(1 << v))
    }

    /// Out-neighbourhood rows, one per vertex.
    #[inline]
    pub fn rows(&self) -> &[u32] {
        &self.out[..self.n]
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones() as usize
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.n - 1 - self.out_degree(v)
    }

    /// Out-degree of `v` counted inside `s`.
    #[inline]
    pub fn out_degree_in(&self, v: usize, s: VertexSet) -> usize {
        (self.out[v] & s.bits()).count_ones() as usize
    }

    pub fn arc_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.out(i).iter().map(move |j| (i, j)))
    }

    /// Reverses every arc.
    pub fn reversed(&self) -> Self {
        let mut t = *self;
        for v in 0..self.n {
            t.out[v] = self.inn(v).bits();
        }
        t
    }

    /// Reverses the single arc between `i` and `j`.
    pub fn with_reversed_arc(&self, i: usize, j: usize) -> Self {
        let mut t = *self;
        t.out[i] ^= 1 << j;
        t.out[j] ^= 1 << i;
        t
    }

    /// Subtournament induced by `s`, relabelled in increasing vertex order.
    pub fn induced(&self, s: VertexSet) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parameter("induced subtournament of an empty set".into()));
        }
        if !s.is_subset(self.vertices()) {
            return Err(Error::Parameter(format!("{s} is not a subset of 0..{}", self.n)));
        }
        let vs = s.to_vec();
        Ok(Tournament::from_fn(vs.len(), |a, b| self.has_arc(vs[a], vs[b])).expect("subset fits"))
    }

    /// Tournament with vertex `v` removed.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        self.induced(self.vertices().without(v))
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n || !is_permutation(perm) {
            return Err(Error::Parameter("relabel needs a permutation of 0..n".into()));
        }
        let mut out = [0u32; MAX_VERTICES];
        for v in 0..self.n {
            for w in self.out(v) {
                out[perm[v]] |= 1 << perm[w];
            }
        }
        Ok(Tournament { n: self.n, out })
    }

    /// The tournament on `self ⊔ other` where every vertex of `self` dominates every
    /// vertex of `other` (vertices of `other` are shifted by `self.n()`).
    pub fn dominating_sum(&self, other: &Tournament) -> Result<Self> {
        let n1 = self.n;
        Tournament::from_fn(n1 + other.n, |i, j| {
            if j < n1 {
                self.has_arc(i, j)
            } else if i >= n1 {
                other.has_arc(i - n1, j - n1)
            } else {
                true
            }
        })
    }

    /// Out-degree sequence in vertex order.
    pub fn scores(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.out_degree(v)).collect()
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::Parameter(format!(
            "vertex count must be in 1..={MAX_VERTICES}, got {n}"
        )));
    }
    Ok(())
}

pub(crate) fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = 0u64;
    for &p in perm {
        if p >= perm.len() || seen >> p & 1 == 1 {
            return false;
        }
        seen |= 1 << p;
    }
    true
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Number of characters in the pair string for `n` vertices.
pub(crate) const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Splits `n:<bits>` into the order and the pair string.
pub(crate) fn split_text(s: &str) -> Result<(usize, &str)> {
    let s = s.trim();
    let (n, bits) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("missing ':' in {s:?}")))?;
    let n: usize = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad vertex count {n:?}")))?;
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::Parse(format!("vertex count {n} out of range")));
    }
    if bits.len() != pair_count(n) {
        return Err(Error::Parse(format!(
            "expected {} pair characters for n={n}, got {}",
            pair_count(n),
            bits.len()
        )));
    }
    Ok((n, bits))
}

impl fmt::Display for Tournament {
    /// `n:<bits>` with one character per pair `i < j` in lexicographic order,
    /// `1` meaning `i -> j`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::with_capacity(pair_count(self.n) + 4);
        s.push_str(&self.n.to_string());
        s.push(':');
        for i in 0..self.n {
            for j in i + 1..self.n {
                s.push(if self.has_arc(i, j) { '1' } else { '0' });
            }
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament({self})")
    }
}

impl FromStr for Tournament {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, bits) = split_text(s)?;
        let mut chars = bits.chars();
        let mut bad = None;
        let t = Tournament::from_fn(n, |_, _| match chars.next() {
            Some('1') => true,
            Some('0') => false,
            other => {
                bad = other;
                false
            }
        })?;
        if let Some(c) = bad {
            return Err(Error::Parse(format!("unexpected character {c:?} in tournament")));
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paley_three_is_a_directed_triangle() {
        let t = Tournament::paley(3).unwrap();
        assert!(t.has_arc(0, 1) && t.has_arc(1, 2) && t.has_arc(2, 0));
    }

    #[test]
    fn paley_seven_arcs_from_zero() {
        let t = Tournament::paley(7).unwrap();
        // squares mod 7 are {1, 2, 4}
        assert_eq!(t.out(0), VertexSet::from([1, 2, 4]));
        assert!(t.has_arc(3, 0) && t.has_arc(5, 0) && t.has_arc(6, 0));
    }

    #[test]
    fn paley_rejects_bad_orders() {
        for n in [1, 4, 5, 9, 13, 15, 43] {
            assert!(matches!(Tournament::paley(n), Err(Error::Parameter(_))), "n={n}");
        }
        assert!(Tournament::paley(31).is_ok());
    }

    #[test]
    fn transitive_small() {
        let t1 = Tournament::transitive(1).unwrap();
        assert_eq!(t1.n(), 1);
        assert_eq!(t1.arcs().count(), 0);
        let t3 = Tournament::transitive(3).unwrap();
        assert_eq!(t3.arcs().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(Tournament::transitive(0).is_err());
        assert!(Tournament::transitive(33).is_err());
    }

    #[test]
    fn x13_is_regular() {
        let t = Tournament::x13();
        assert!(t.has_arc(0, 1) && !t.has_arc(1, 0));
        for v in 0..13 {
            assert_eq!(t.out_degree(v), 6);
            assert_eq!(t.in_degree(v), 6);
        }
    }

    #[test]
    fn blowup_structure() {
        let d = Tournament::blowup_pal7();
        assert_eq!(d.n(), 19);
        assert_eq!(d.arcs().count(), 171);
        assert!(d.has_arc(1, 2) && d.has_arc(2, 3) && d.has_arc(3, 1));
        let pal = Tournament::paley(7).unwrap();
        // any representative of each triangle gives back the base tournament
        for pick in [[0usize; 6], [1; 6], [2, 0, 1, 2, 0, 1]] {
            let mut s = VertexSet::singleton(0);
            for (i, &p) in pick.iter().enumerate() {
                s.insert(3 * (i + 1) - 2 + p);
            }
            assert_eq!(d.induced(s).unwrap(), pal);
        }
    }

    #[test]
    fn induced_relabels_in_order() {
        let t = Tournament::paley(7).unwrap();
        // 0 -> 1 -> 3 -> 0 with differences 1, 2, 4
        let c = t.induced(VertexSet::from([0, 1, 3])).unwrap();
        assert_eq!(c, Tournament::paley(3).unwrap());
        assert_eq!(t.induced(t.vertices()).unwrap(), t);
        assert!(t.induced(VertexSet::EMPTY).is_err());
        let x = Tournament::x13().induced(VertexSet::from([0, 1, 2, 3])).unwrap();
        assert_eq!(x, Tournament::transitive(4).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let t = Tournament::paley(7).unwrap();
        let s = t.to_string();
        assert_eq!(s.len(), 2 + 21);
        assert_eq!(s.parse::<Tournament>().unwrap(), t);
        assert_eq!("1:".parse::<Tournament>().unwrap(), Tournament::transitive(1).unwrap());
        assert!("3:1?1".parse::<Tournament>().is_err());
        assert!("3:11".parse::<Tournament>().is_err());
        assert!("x".parse::<Tournament>().is_err());
    }

    #[test]
    fn from_rows_rejects_digons_and_gaps() {
        assert!(Tournament::from_rows(&[0b10, 0b01]).is_err());
        assert!(Tournament::from_rows(&[0, 0]).is_err());
        assert!(Tournament::from_rows(&[0b10, 0]).is_ok());
    }
}
