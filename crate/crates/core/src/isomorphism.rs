//! Canonical forms, isomorphisms, automorphisms, subtournament search and the
//! census of small tournaments.
//!
//! A code lists the arcs of a relabelled tournament column by column: pairs
//! `(0,1), (0,2), (1,2), (0,3), ..` with `1` meaning the lower position beats
//! the higher one. The canonical code is the least such string over all
//! relabelings that respect an isomorphism-invariant ordered partition of the
//! vertices (iterated score refinement). Reading column by column lets a partial
//! relabeling be compared against the best code found so far and cut early.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::tournament::{is_permutation, Tournament};
use crate::transitive;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Largest order accepted by [`canonical_form`].
pub const MAX_CANONICAL_ORDER: usize = 19;

/// Largest order accepted by [`enumerate_tournaments`].
pub const MAX_CENSUS_ORDER: usize = 8;

/// Column-major arc code of a relabelled tournament, bits packed most
/// significant first. Ordered by `(n, code)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    code: Vec<u8>,
}

impl CanonicalForm {
    fn from_blocks(n: usize, blocks: &[u32]) -> Self {
        let mut code = vec![0u8; (n * n.saturating_sub(1) / 2).div_ceil(8)];
        let mut k = 0;
        for p in 1..n {
            for i in 0..p {
                if blocks[p] >> (p - 1 - i) & 1 == 1 {
                    code[k / 8] |= 0x80 >> (k % 8);
                }
                k += 1;
            }
        }
        CanonicalForm { n, code }
    }

    fn from_order(t: &Tournament, order: &[usize]) -> Self {
        let blocks = blocks_of(t, order);
        CanonicalForm::from_blocks(t.n(), &blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Packed code bytes.
    pub fn code(&self) -> &[u8] {
        &self.code
    }

    fn bit(&self, k: usize) -> bool {
        self.code[k / 8] & (0x80 >> (k % 8)) != 0
    }

    /// The relabelled tournament the code describes.
    pub fn to_tournament(&self) -> Tournament {
        let mut rows = vec![0u32; self.n];
        let mut k = 0;
        for p in 1..self.n {
            for i in 0..p {
                if self.bit(k) {
                    rows[i] |= 1 << p;
                } else {
                    rows[p] |= 1 << i;
                }
                k += 1;
            }
        }
        Tournament::from_rows(&rows).expect("codes describe complete tournaments")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for k in 0..self.n * self.n.saturating_sub(1) / 2 {
            f.write_str(if self.bit(k) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({self})")
    }
}

/// Column blocks of the code for a given placement (`order[p]` = vertex at position `p`).
fn blocks_of(t: &Tournament, order: &[usize]) -> Vec<u32> {
    let mut blocks = vec![0u32; order.len()];
    for p in 1..order.len() {
        let mut b = 0u32;
        for &u in &order[..p] {
            b = b << 1 | t.has_arc(u, order[p]) as u32;
        }
        blocks[p] = b;
    }
    blocks
}

/// Iterated score refinement. Returns a colour per vertex; colours are ranks of
/// isomorphism-invariant signatures, so equal colour classes line up between
/// isomorphic tournaments.
pub fn refined_colors(t: &Tournament) -> Vec<usize> {
    let n = t.n();
    let mut color = ranks(&(0..n).map(|v| t.out_degree(v)).collect::<Vec<_>>());
    let mut classes = color.iter().max().map_or(0, |m| m + 1);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut counts = vec![0usize; classes];
                for w in t.out(v) {
                    counts[color[w]] += 1;
                }
                (color[v], counts)
            })
            .collect();
        let next = ranks(&sigs);
        let next_classes = next.iter().max().map_or(0, |m| m + 1);
        if next_classes == classes {
            return next;
        }
        color = next;
        classes = next_classes;
    }
}

/// Rank of each value among the distinct values.
fn ranks<T: Ord + Clone>(values: &[T]) -> Vec<usize> {
    let mut sorted = values.to_vec();
    sorted.sort();
    sorted.dedup();
    values
        .iter()
        .map(|x| sorted.binary_search(x).expect("present"))
        .collect()
}

/// Branch-and-bound over placements constrained to per-position vertex masks.
struct CanonSearch<'a> {
    t: &'a Tournament,
    allowed: Vec<u32>,
    best: Vec<u32>,
    valid: usize,
    order: Vec<usize>,
    best_order: Vec<usize>,
}

impl<'a> CanonSearch<'a> {
    fn new(t: &'a Tournament, allowed: Vec<u32>) -> Self {
        let n = t.n();
        CanonSearch {
            t,
            allowed,
            best: vec![0; n],
            valid: 0,
            order: Vec::with_capacity(n),
            best_order: Vec::new(),
        }
    }

    fn run(mut self) -> (Vec<u32>, Vec<usize>) {
        let acc = [0u32; MAX_VERTICES];
        self.go(0, 0, &acc);
        (self.best, self.best_order)
    }

    /// `acc[v]` is the block vertex `v` would get at position `p`.
    fn go(&mut self, p: usize, used: u32, acc: &[u32; MAX_VERTICES]) {
        let n = self.t.n();
        if p == n {
            self.best_order.clone_from(&self.order);
            return;
        }
        let mut cands: Vec<(u32, usize)> = Vec::with_capacity(n - p);
        let mut mask = self.allowed[p] & !used;
        while mask != 0 {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            cands.push((acc[v], v));
        }
        cands.sort_unstable();
        for (block, v) in cands {
            if p < self.valid {
                match block.cmp(&self.best[p]) {
                    Ordering::Greater => break,
                    Ordering::Less => {
                        self.best[p] = block;
                        self.valid = p + 1;
                    }
                    Ordering::Equal => {}
                }
            } else {
                self.best[p] = block;
                self.valid = p + 1;
            }
            let mut next = *acc;
            let row = self.t.out(v).bits();
            let mut rest = VertexSet::full(n).bits() & !used & !(1 << v);
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next[w] = next[w] << 1 | (row >> w & 1);
            }
            self.order.push(v);
            self.go(p + 1, used | 1 << v, &next);
            self.order.pop();
        }
    }
}

/// Position masks from an ordered colouring: positions are filled colour by colour.
fn position_masks(colors: &[usize]) -> Vec<u32> {
    let mut by_color: Vec<(usize, usize)> = colors.iter().enumerate().map(|(v, &c)| (c, v)).collect();
    by_color.sort_unstable();
    by_color
        .iter()
        .map(|&(c, _)| {
            colors
                .iter()
                .enumerate()
                .filter(|&(_, &d)| d == c)
                .fold(0u32, |m, (v, _)| m | 1 << v)
        })
        .collect()
}

fn check_canonical_order(n: usize) -> Result<()> {
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::Capability(format!(
            "canonical forms are supported up to {MAX_CANONICAL_ORDER} vertices, got {n}"
        )));
    }
    Ok(())
}

/// Canonical code together with the placement achieving it
/// (`order[p]` is the original vertex put at position `p`).
pub fn canonical_labeling(t: &Tournament) -> Result<(CanonicalForm, Vec<usize>)> {
    check_canonical_order(t.n())?;
    let masks = position_masks(&refined_colors(t));
    let (blocks, order) = CanonSearch::new(t, masks).run();
    Ok((CanonicalForm::from_blocks(t.n(), &blocks), order))
}

/// Canonical form: equal exactly for isomorphic tournaments.
pub fn canonical_form(t: &Tournament) -> Result<CanonicalForm> {
    canonical_labeling(t).map(|(c, _)| c)
}

/// The canonical representative (the tournament spelled by the canonical code).
pub fn canonical_representative(t: &Tournament) -> Result<Tournament> {
    canonical_form(t).map(|c| c.to_tournament())
}

/// Least code among placements that put `last` at the final position, or `None`
/// when `last` is not in the final colour class.
fn code_with_last(t: &Tournament, masks: &[u32], last: usize) -> Option<Vec<u32>> {
    let n = t.n();
    if masks[n - 1] >> last & 1 == 0 {
        return None;
    }
    let mut allowed = masks.to_vec();
    allowed[n - 1] = 1 << last;
    for m in allowed.iter_mut().take(n - 1) {
        *m &= !(1 << last);
    }
    Some(CanonSearch::new(t, allowed).run().0)
}

/// Backtracking search for bijections `a -> b` that preserve arcs, restricted so
/// vertex `v` may only map into `targets[v]`. Calls `found` on each; stops early
/// when `found` returns `false`.
fn for_each_isomorphism(
    a: &Tournament,
    b: &Tournament,
    targets: &[u32],
    found: &mut dyn FnMut(&[usize]) -> bool,
) {
    fn go(
        a: &Tournament,
        b: &Tournament,
        targets: &[u32],
        v: usize,
        used: u32,
        image: &mut Vec<usize>,
        found: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if v == a.n() {
            return found(image);
        }
        let mut cand = targets[v] & !used;
        for (u, &iu) in image.iter().enumerate() {
            cand &= if a.has_arc(u, v) { b.out(iu).bits() } else { b.inn(iu).bits() };
        }
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            image.push(w);
            let go_on = go(a, b, targets, v + 1, used | 1 << w, image, found);
            image.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    let mut image = Vec::with_capacity(a.n());
    go(a, b, targets, 0, 0, &mut image, found);
}

fn degree_targets(a: &Tournament, b: &Tournament) -> Vec<u32> {
    (0..a.n())
        .map(|v| {
            (0..b.n())
                .filter(|&w| b.out_degree(w) == a.out_degree(v))
                .fold(0u32, |m, w| m | 1 << w)
        })
        .collect()
}

/// An isomorphism `a -> b` as the image of each vertex of `a`, if one exists.
pub fn isomorphism(a: &Tournament, b: &Tournament) -> Option<Vec<usize>> {
    if a.n() != b.n() {
        return None;
    }
    let mut sa = a.scores();
    let mut sb = b.scores();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let targets = degree_targets(a, b);
    let mut result = None;
    for_each_isomorphism(a, b, &targets, &mut |img| {
        result = Some(img.to_vec());
        false
    });
    result
}

pub fn are_isomorphic(a: &Tournament, b: &Tournament) -> bool {
    isomorphism(a, b).is_some()
}

/// The full automorphism group as explicit permutations (`perm[v]` = image of `v`),
/// in lexicographic order; the identity comes first.
pub fn automorphisms(t: &Tournament) -> Vec<Vec<usize>> {
    let colors = refined_colors(t);
    let targets: Vec<u32> = (0..t.n())
        .map(|v| (0..t.n()).filter(|&w| colors[w] == colors[v]).fold(0u32, |m, w| m | 1 << w))
        .collect();
    let mut all = Vec::new();
    for_each_isomorphism(t, t, &targets, &mut |img| {
        all.push(img.to_vec());
        true
    });
    all
}

/// Orbit of `v` under the automorphism group.
pub fn orbit(auts: &[Vec<usize>], v: usize) -> VertexSet {
    auts.iter().map(|g| g[v]).collect()
}

/// A vertex set of `host` inducing a copy of `pattern`, if one exists.
pub fn contains_subtournament(host: &Tournament, pattern: &Tournament) -> Option<VertexSet> {
    subtournament_embedding(host, pattern).map(|img| img.into_iter().collect())
}

/// An arc-preserving injection `pattern -> host`, if one exists.
pub fn subtournament_embedding(host: &Tournament, pattern: &Tournament) -> Option<Vec<usize>> {
    if pattern.n() > host.n() {
        return None;
    }
    // A pattern vertex needs at least as many out- and in-neighbours in the host.
    let targets: Vec<u32> = (0..pattern.n())
        .map(|v| {
            (0..host.n())
                .filter(|&w| {
                    host.out_degree(w) >= pattern.out_degree(v)
                        && host.in_degree(w) >= pattern.in_degree(v)
                })
                .fold(0u32, |m, w| m | 1 << w)
        })
        .collect();
    let mut result = None;
    for_each_isomorphism(pattern, host, &targets, &mut |img| {
        result = Some(img.to_vec());
        false
    });
    result
}

/// Every tournament on `n` vertices up to isomorphism, as canonical
/// representatives sorted by canonical code.
///
/// Orderly generation by canonical augmentation: each representative on `n-1`
/// vertices is extended by a new last vertex in all `2^(n-1)` ways, and a child is
/// kept only when the new vertex is in the orbit the canonical labelling puts
/// last. Children of one parent are then deduplicated by code.
pub fn enumerate_tournaments(n: usize) -> Result<Vec<Tournament>> {
    Ok(census(n)?.into_iter().map(|c| c.to_tournament()).collect())
}

/// Canonical codes of all tournaments on `n` vertices, strictly increasing.
pub fn census(n: usize) -> Result<Vec<CanonicalForm>> {
    if n == 0 {
        return Err(Error::Parameter("census needs n >= 1".into()));
    }
    if n > MAX_CENSUS_ORDER {
        return Err(Error::Capability(format!(
            "census is supported up to {MAX_CENSUS_ORDER} vertices, got {n}"
        )));
    }
    let mut level = vec![canonical_form(&Tournament::transitive(1)?)?];
    for m in 2..=n {
        let parents: Vec<Tournament> = level.iter().map(|c| c.to_tournament()).collect();
        let mut next: Vec<CanonicalForm> = parents
            .par_iter()
            .flat_map_iter(|p| augment(p, m))
            .collect();
        next.sort_unstable();
        debug_assert!(next.windows(2).all(|w| w[0] < w[1]), "duplicate class at n={m}");
        level = next;
    }
    Ok(level)
}

fn augment(parent: &Tournament, m: usize) -> Vec<CanonicalForm> {
    let v = m - 1;
    let mut seen = BTreeSet::new();
    for pattern in 0u32..1 << v {
        let child = Tournament::from_fn(m, |i, j| {
            if j == v {
                pattern >> i & 1 == 0
            } else {
                parent.has_arc(i, j)
            }
        })
        .expect("m <= 8");
        let masks = position_masks(&refined_colors(&child));
        let Some(mine) = code_with_last(&child, &masks, v) else {
            continue;
        };
        let mut best = mine.clone();
        let mut last = masks[m - 1] & !(1 << v);
        while last != 0 {
            let u = last.trailing_zeros() as usize;
            last &= last - 1;
            let c = code_with_last(&child, &masks, u).expect("u is in the last class");
            if c < best {
                best = c;
            }
        }
        if mine == best {
            seen.insert(CanonicalForm::from_blocks(m, &best));
        }
    }
    seen.into_iter().collect()
}

/// A group of relabelings given by explicit permutations of positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    n: usize,
    elements: Vec<Vec<usize>>,
}

impl SymmetryGroup {
    /// Only the identity.
    pub fn trivial(n: usize) -> Self {
        SymmetryGroup { n, elements: vec![(0..n).collect()] }
    }

    /// Cyclic group generated by rotating `cycle[0] -> cycle[1] -> .. -> cycle[0]`.
    pub fn cyclic(n: usize, cycle: &[usize]) -> Result<Self> {
        if cycle.iter().any(|&v| v >= n) || VertexSet::from_iter(cycle.iter().copied()).len() != cycle.len() {
            return Err(Error::Parameter("cycle must list distinct positions below n".into()));
        }
        let mut elements = Vec::with_capacity(cycle.len().max(1));
        for r in 0..cycle.len().max(1) {
            let mut g: Vec<usize> = (0..n).collect();
            for (i, &c) in cycle.iter().enumerate() {
                g[c] = cycle[(i + r) % cycle.len()];
            }
            elements.push(g);
        }
        Ok(SymmetryGroup { n, elements })
    }

    /// Closure of the given permutations under composition.
    pub fn generated_by(n: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for g in generators {
            if g.len() != n || !is_permutation(g) {
                return Err(Error::Parameter("generators must be permutations of 0..n".into()));
            }
        }
        let id: Vec<usize> = (0..n).collect();
        let mut set = BTreeSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in generators {
                let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(SymmetryGroup { n, elements: set.into_iter().collect() })
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Normalised labelling for a tournament with a distinguished transitive set:
/// the fixed vertices first in transitive order (source first), then the others
/// in increasing order. Returns `order[p]` = original vertex at position `p`.
pub fn fixed_set_order(t: &Tournament, fixed: VertexSet) -> Result<Vec<usize>> {
    if !transitive::is_transitive(t, fixed) {
        return Err(Error::Parameter(format!("fixed set {fixed} does not induce a transitive tournament")));
    }
    let mut head: Vec<usize> = fixed.to_vec();
    head.sort_by_key(|&v| std::cmp::Reverse(t.out_degree_in(v, fixed)));
    head.extend((t.vertices() - fixed).iter());
    Ok(head)
}

/// Least code over the relabelings in `group`, after putting the transitive set
/// `fixed` first in its transitive order. Group elements act on positions and
/// must fix the first `|fixed|` positions.
pub fn canonical_form_fixing(
    t: &Tournament,
    fixed: VertexSet,
    group: &SymmetryGroup,
) -> Result<CanonicalForm> {
    if group.n != t.n() {
        return Err(Error::Parameter("group acts on a different number of vertices".into()));
    }
    let f = fixed.len();
    if group.elements.iter().any(|g| (0..f).any(|p| g[p] != p)) {
        return Err(Error::Parameter("group must fix the distinguished positions".into()));
    }
    let base = fixed_set_order(t, fixed)?;
    let mut best: Option<CanonicalForm> = None;
    for g in &group.elements {
        // position p of the result holds the vertex that g sends to p
        let mut order = vec![0usize; t.n()];
        for (p, &v) in base.iter().enumerate() {
            order[g[p]] = v;
        }
        let code = CanonicalForm::from_order(t, &order);
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    }
    Ok(best.expect("groups contain the identity"))
}
