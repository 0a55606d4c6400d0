//! Branch-and-prune completion of partial tournaments, and the gluing machinery
//! built on top of it: 8-completions, 13-completions, completion types and
//! type compatibility.
//!
//! [`Completions`] walks the binary tree of orientations of the undecided pairs
//! depth first. A [`Pruner`] may discard a subtree only when every completion in
//! it is certified uninteresting; every tournament that reaches a leaf is
//! re-checked from scratch before it is reported, so pruning affects speed only.

use std::collections::BTreeMap;
use std::fmt;

use crate::coloring;
use crate::error::{Error, Result};
use crate::isomorphism::{self, CanonicalForm, SymmetryGroup};
use crate::partial::PartialTournament;
use crate::tournament::Tournament;
use crate::transitive::{self, TransitiveSetList};
use crate::vertex_set::VertexSet;

/// Which subtrees may be discarded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pruner {
    /// Cut when the decided arcs already admit a cover by this many acyclic sets.
    pub colorable: Option<usize>,
    /// Cut when the decided arcs already contain two disjoint `TT_5`.
    pub two_disjoint_tt5: bool,
}

impl Pruner {
    pub const fn k_colorable(k: usize) -> Self {
        Pruner { colorable: Some(k), two_disjoint_tt5: false }
    }

    pub const fn two_disjoint_tt5() -> Self {
        Pruner { colorable: None, two_disjoint_tt5: true }
    }

    /// Both cuts.
    pub const fn composite(k: usize) -> Self {
        Pruner { colorable: Some(k), two_disjoint_tt5: true }
    }

    /// Pass-through: enumerates every completion.
    pub const fn none() -> Self {
        Pruner { colorable: None, two_disjoint_tt5: false }
    }

    /// `last` is the arc that produced `p` from an uncut parent, with the new
    /// transitive sets through it; any new cover or packing must use the arc, so
    /// only those need to be tried. `None` means check from scratch.
    fn cuts(&self, p: &PartialTournament, list: &TransitiveSetList, last: Option<&LastArc>) -> bool {
        if let Some(k) = self.colorable {
            let covered = match last {
                None => coloring::k_colorable_partial_from_list(p, list, k).is_some(),
                Some(l) => {
                    let mut colorer = coloring::Colorer::new(p.constraint_rows(), Default::default());
                    l.fresh
                        .iter()
                        .any(|&f| colorer.partition(list.sets(), p.vertices() - f, k - 1).is_some())
                }
            };
            if covered {
                return true;
            }
        }
        if !self.two_disjoint_tt5 {
            return false;
        }
        match last {
            None => transitive::disjoint_tt_packing(p.rows(), p.vertices(), 5, 2).is_some(),
            Some(l) => {
                let ab = VertexSet::from([l.a, l.b]);
                l.fresh.iter().any(|&f| {
                    transitive::all_tt(p.rows(), f, 5)
                        .into_iter()
                        .filter(|s| ab.is_subset(*s))
                        .any(|s| transitive::find_tt(p.rows(), p.vertices() - s, 5).is_some())
                })
            }
        }
    }

    /// Exact check on a finished tournament, independent of the search state.
    pub fn accepts(&self, t: &Tournament) -> bool {
        if let Some(k) = self.colorable {
            if coloring::k_colorable(t, k).is_some() {
                return false;
            }
        }
        !(self.two_disjoint_tt5 && transitive::disjoint_tt5_packing(t, 2).is_some())
    }

    /// Short name used in reports and on the command line.
    pub fn label(&self) -> String {
        match (self.colorable, self.two_disjoint_tt5) {
            (Some(k), false) => format!("chi{k}"),
            (Some(k), true) => format!("chi{k}+tt5x2"),
            (None, true) => "tt5x2".to_string(),
            (None, false) => "none".to_string(),
        }
    }
}

impl fmt::Display for Pruner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl std::str::FromStr for Pruner {
    type Err = Error;

    /// `chi3`, `chi4`, `tt5x2`, `chi3+tt5x2`, `none`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Pruner::none();
        for part in s.split('+') {
            match part {
                "tt5x2" => p.two_disjoint_tt5 = true,
                "none" => {}
                _ => {
                    let k = part
                        .strip_prefix("chi")
                        .and_then(|k| k.parse::<usize>().ok())
                        .filter(|&k| k >= 1)
                        .ok_or_else(|| Error::Parse(format!("unknown pruner {part:?}")))?;
                    p.colorable = Some(k);
                }
            }
        }
        Ok(p)
    }
}

/// How the next pair to orient is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BranchStrategy {
    /// Lexicographically least undecided pair.
    Lexicographic,
    /// Least undecided pair `(a, b)` that can grow a largest transitive set: `a`
    /// lies in such a set `S` and `b` is already decided against the rest of `S`.
    /// Falls back to the least pair overall.
    #[default]
    LargestTransitiveSet,
}

impl BranchStrategy {
    fn choose(self, p: &PartialTournament, list: &TransitiveSetList) -> (usize, usize) {
        let first = p.undecided().next().expect("incomplete state has a pair");
        match self {
            BranchStrategy::Lexicographic => first,
            BranchStrategy::LargestTransitiveSet => {
                let rows = p.constraint_rows();
                // vertices with an undecided pair to `v`
                let open = |v: usize| {
                    VertexSet::from_bits(rows[v] & rows.iter().enumerate().fold(0u32, |m, (u, &r)| m | (r >> v & 1) << u))
                };
                let top = list.max_size();
                let mut best: Option<(usize, usize)> = None;
                for &s in list.iter().filter(|s| s.len() == top) {
                    for a in s {
                        for b in open(a) {
                            if (open(b) & s).is_empty() || open(b) & s == VertexSet::singleton(a) {
                                let pair = (a.min(b), a.max(b));
                                if best.is_none_or(|q| pair < q) {
                                    best = Some(pair);
                                }
                            }
                        }
                    }
                }
                best.unwrap_or(first)
            }
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BranchStrategy::Lexicographic => "lex",
            BranchStrategy::LargestTransitiveSet => "largest-set",
        }
    }
}

/// Counters for one search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SearchStats {
    /// Nodes taken off the stack.
    pub nodes: u64,
    /// Subtrees discarded by the pruner.
    pub cuts: u64,
    /// Tournaments reported.
    pub emitted: u64,
    /// Leaves that failed the final exact check.
    pub rejected: u64,
}

impl SearchStats {
    pub fn merge(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.cuts += other.cuts;
        self.emitted += other.emitted;
        self.rejected += other.rejected;
    }
}

struct LastArc {
    a: usize,
    b: usize,
    fresh: Vec<VertexSet>,
}

struct Node {
    p: PartialTournament,
    list: TransitiveSetList,
    last: Option<LastArc>,
}

/// Depth-first stream of the completions of a partial tournament that survive
/// the pruner (`completions(T + ab)` before `completions(T + ba)`).
pub struct Completions {
    stack: Vec<Node>,
    pruner: Pruner,
    strategy: BranchStrategy,
    stats: SearchStats,
}

impl Completions {
    pub fn new(p: &PartialTournament, pruner: Pruner) -> Self {
        Completions::with_strategy(p, pruner, BranchStrategy::default())
    }

    pub fn with_strategy(p: &PartialTournament, pruner: Pruner, strategy: BranchStrategy) -> Self {
        Completions::resume(vec![p.clone()], pruner, strategy, SearchStats::default())
    }

    /// Restarts from a saved frontier (bottom of the stack first).
    pub fn resume(
        frontier: Vec<PartialTournament>,
        pruner: Pruner,
        strategy: BranchStrategy,
        stats: SearchStats,
    ) -> Self {
        let stack = frontier
            .into_iter()
            .map(|p| {
                let list = transitive::maximal_transitive_sets_partial(&p);
                Node { p, list, last: None }
            })
            .collect();
        Completions { stack, pruner, strategy, stats }
    }

    /// Open branches, bottom of the stack first.
    pub fn frontier(&self) -> Vec<PartialTournament> {
        self.stack.iter().map(|n| n.p.clone()).collect()
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    pub fn is_finished(&self) -> bool {
        self.stack.is_empty()
    }

    /// Expands one node. Returns a tournament when that node was an accepted leaf.
    pub fn step(&mut self) -> Option<Tournament> {
        let Node { p, list, last } = self.stack.pop()?;
        self.stats.nodes += 1;
        if self.pruner.cuts(&p, &list, last.as_ref()) {
            self.stats.cuts += 1;
            return None;
        }
        if let Some(t) = p.to_tournament() {
            if self.pruner.accepts(&t) {
                self.stats.emitted += 1;
                return Some(t);
            }
            self.stats.rejected += 1;
            return None;
        }
        let (a, b) = self.strategy.choose(&p, &list);
        for (x, y) in [(b, a), (a, b)] {
            let child = p.add_arc(x, y).expect("pair is undecided");
            let (list, fresh) = transitive::update_with_fresh(&list, &child, x, y);
            let last = Some(LastArc { a: x, b: y, fresh });
            self.stack.push(Node { p: child, list, last });
        }
        None
    }
}

impl Iterator for Completions {
    type Item = Tournament;

    fn next(&mut self) -> Option<Tournament> {
        while !self.stack.is_empty() {
            if let Some(t) = self.step() {
                return Some(t);
            }
        }
        None
    }
}

/// Stream of completions of `p` not eliminated by `prune`.
pub fn completions(p: &PartialTournament, prune: Pruner) -> Completions {
    Completions::new(p, prune)
}

/// A tournament with distinguished transitive 5-sets and a glue part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Completion {
    pub t: Tournament,
    /// One set for 8-completions; two for completions of a pair.
    pub tt5: Vec<VertexSet>,
    pub glue: VertexSet,
}

impl Completion {
    /// Checks the structural invariants: distinguished sets induce `TT_5`, are
    /// disjoint from each other and from the glue, and everything is covered.
    pub fn is_well_formed(&self) -> bool {
        let mut seen = self.glue;
        for &a in &self.tt5 {
            if a.len() != 5 || !transitive::is_transitive(&self.t, a) || !a.is_disjoint(seen) {
                return false;
            }
            seen |= a;
        }
        seen == self.t.vertices()
    }
}

/// The directed triangle used as the glue of 8-completions: `5 -> 6 -> 7 -> 5`.
pub const TRIANGLE: [usize; 3] = [5, 6, 7];

/// Base of every 8-completion: `TT_5` on `0..5` next to the triangle on `5..8`,
/// with the 15 cross pairs undecided.
pub fn eight_completion_base() -> PartialTournament {
    let tt5 = Tournament::transitive(5).expect("5 vertices");
    let c3 = Tournament::paley(3).expect("3 is a Paley order");
    PartialTournament::disjoint_union(&tt5, &c3).expect("8 vertices")
}

/// Every 3-chromatic gluing of `TT_5` with a directed triangle, up to rotating the
/// triangle, sorted by the restricted canonical code.
pub fn eight_completions() -> Vec<Completion> {
    let group = SymmetryGroup::cyclic(8, &TRIANGLE).expect("valid cycle");
    let fixed = VertexSet::full(5);
    let mut classes: BTreeMap<CanonicalForm, Tournament> = BTreeMap::new();
    for t in completions(&eight_completion_base(), Pruner::k_colorable(2)) {
        let code = isomorphism::canonical_form_fixing(&t, fixed, &group).expect("fixed set is TT5");
        classes.entry(code).or_insert(t);
    }
    classes
        .into_values()
        .map(|t| Completion { t, tt5: vec![fixed], glue: VertexSet::from(TRIANGLE) })
        .collect()
}

/// Identifies `s1` in `c1` with `s2` in `c2` along `matching` (pairs
/// `(vertex of s1, vertex of s2)`). Vertices of `c1` keep their labels; the
/// unmatched vertices of `c2` follow in increasing order. Pairs between the two
/// unmatched parts stay undecided.
pub fn glue_identify(
    c1: &Tournament,
    s1: VertexSet,
    c2: &Tournament,
    s2: VertexSet,
    matching: &[(usize, usize)],
) -> Result<PartialTournament> {
    if matching.len() != s1.len() || matching.len() != s2.len() {
        return Err(Error::Parameter("matching must pair up the marked sets".into()));
    }
    let m1: VertexSet = matching.iter().map(|&(a, _)| a).collect();
    let m2: VertexSet = matching.iter().map(|&(_, b)| b).collect();
    if m1 != s1 || m2 != s2 {
        return Err(Error::Parameter("matching is not a bijection between the marked sets".into()));
    }
    for &(a, b) in matching {
        for &(x, y) in matching {
            if a != x && c1.has_arc(a, x) != c2.has_arc(b, y) {
                return Err(Error::Parameter(format!(
                    "matching is not an isomorphism: {a}->{x} vs {b},{y}"
                )));
            }
        }
    }
    let n1 = c1.n();
    let rest2: Vec<usize> = (c2.vertices() - s2).to_vec();
    let n = n1 + rest2.len();
    if n > crate::vertex_set::MAX_VERTICES {
        return Err(Error::Parameter(format!("glued graph would have {n} vertices")));
    }
    // where each vertex of c2 lands
    let mut place = vec![0usize; c2.n()];
    for &(a, b) in matching {
        place[b] = a;
    }
    for (k, &v) in rest2.iter().enumerate() {
        place[v] = n1 + k;
    }
    let mut rows = vec![0u32; n];
    rows[..n1].copy_from_slice(c1.rows());
    for (u, v) in c2.arcs() {
        rows[place[u]] |= 1 << place[v];
    }
    PartialTournament::from_rows(&rows)
}

/// Matching for identifying the triangles of two 8-completions: triangle vertex
/// `i` of `c` meets triangle vertex `i + rotation` of `c'`.
pub fn triangle_matching(rotation: usize) -> Vec<(usize, usize)> {
    (0..3).map(|i| (TRIANGLE[i], TRIANGLE[(i + rotation) % 3])).collect()
}

/// The 13-vertex base for a pair of 8-completions: `c`'s `TT_5` on `0..5`, the
/// shared triangle on `5..8`, and `c'`'s `TT_5` on `8..13`.
pub fn pair_base(c: &Completion, c2: &Completion, rotation: usize) -> Result<PartialTournament> {
    if rotation > 2 {
        return Err(Error::Parameter(format!("rotation must be 0, 1 or 2, got {rotation}")));
    }
    glue_identify(&c.t, c.glue, &c2.t, c2.glue, &triangle_matching(rotation))
}

/// Every 4-chromatic way to orient the 25 pairs between the two `TT_5`s.
pub fn thirteen_completions(c: &Completion, c2: &Completion, rotation: usize) -> Result<Vec<Tournament>> {
    Ok(completions(&pair_base(c, c2, rotation)?, Pruner::k_colorable(3)).collect())
}

/// A family of subsets of a small universe (at most 10 vertices), stored as a
/// bitmap over local masks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetFamily {
    universe: VertexSet,
    bits: Vec<u64>,
}

impl SubsetFamily {
    pub fn empty(universe: VertexSet) -> Result<Self> {
        if universe.len() > 10 {
            return Err(Error::Capability("subset families support at most 10 elements".into()));
        }
        Ok(SubsetFamily { universe, bits: vec![0; (1usize << universe.len()).div_ceil(64)] })
    }

    pub fn universe(&self) -> VertexSet {
        self.universe
    }

    fn local(&self, s: VertexSet) -> Option<usize> {
        if !s.is_subset(self.universe) {
            return None;
        }
        Some(
            self.universe
                .iter()
                .enumerate()
                .filter(|&(_, v)| s.contains(v))
                .fold(0usize, |m, (i, _)| m | 1 << i),
        )
    }

    fn global(&self, mask: usize) -> VertexSet {
        self.universe
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| v)
            .collect()
    }

    pub fn insert(&mut self, s: VertexSet) {
        let m = self.local(s).expect("subset of the universe");
        self.bits[m / 64] |= 1 << (m % 64);
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.local(s).is_some_and(|m| self.bits[m / 64] >> (m % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn members(&self) -> impl Iterator<Item = VertexSet> + '_ {
        (0..1usize << self.universe.len())
            .filter(|&m| self.bits[m / 64] >> (m % 64) & 1 == 1)
            .map(|m| self.global(m))
    }

    /// Some member of `self` whose complement in the universe is a member of `other`.
    pub fn complementary_member(&self, other: &SubsetFamily) -> Result<Option<VertexSet>> {
        if self.universe != other.universe {
            return Err(Error::Parameter("families live on different universes".into()));
        }
        let full = (1usize << self.universe.len()) - 1;
        Ok((0..=full)
            .find(|&m| {
                let c = full ^ m;
                self.bits[m / 64] >> (m % 64) & 1 == 1 && other.bits[c / 64] >> (c % 64) & 1 == 1
            })
            .map(|m| self.global(m)))
    }
}

impl fmt::Debug for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

/// Subsets `B'` of `universe` with size in `sizes` such that `base ∪ B'` induces
/// a 2-colourable subtournament of `t`.
pub fn two_colorable_extensions(
    t: &Tournament,
    base: VertexSet,
    universe: VertexSet,
    sizes: std::ops::RangeInclusive<usize>,
) -> Result<SubsetFamily> {
    let mut fam = SubsetFamily::empty(universe)?;
    for mask in 0usize..1 << universe.len() {
        let s = fam.global(mask);
        if sizes.contains(&s.len()) && coloring::subset_k_colorable(t, base | s, 2) {
            fam.insert(s);
        }
    }
    Ok(fam)
}

/// Type of a gluing of a distinguished `TT_5` with a glue part: the glue subsets
/// of size 3 to 5 whose union with the `TT_5` is 2-colourable.
pub type CompletionType = SubsetFamily;

pub fn completion_type(t: &Tournament, tt5: VertexSet, glue: VertexSet) -> Result<CompletionType> {
    if !tt5.is_disjoint(glue) {
        return Err(Error::Parameter("distinguished set and glue overlap".into()));
    }
    two_colorable_extensions(t, tt5, glue, 3..=5)
}

/// True iff one member of each type together partition the glue set.
pub fn types_compatible(t1: &CompletionType, t2: &CompletionType) -> Result<bool> {
    Ok(t1.complementary_member(t2)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn complete_input_is_its_own_completion() {
        let t = Tournament::paley(7).unwrap();
        let out: Vec<_> = completions(&PartialTournament::from(&t), Pruner::k_colorable(2)).collect();
        assert_eq!(out, vec![t]);
        let none: Vec<_> = completions(&PartialTournament::from(&t), Pruner::k_colorable(3)).collect();
        assert!(none.is_empty());
    }

    #[test]
    fn unpruned_search_enumerates_everything() {
        let p = PartialTournament::empty(4).unwrap();
        let all: Vec<_> = completions(&p, Pruner::none()).collect();
        assert_eq!(all.len(), 64);
        let lex: Vec<_> =
            Completions::with_strategy(&p, Pruner::none(), BranchStrategy::Lexicographic).collect();
        assert_eq!(lex.len(), 64);
    }

    #[test]
    fn pruner_text() {
        assert_eq!("chi3".parse::<Pruner>().unwrap(), Pruner::k_colorable(3));
        assert_eq!("tt5x2".parse::<Pruner>().unwrap(), Pruner::two_disjoint_tt5());
        assert_eq!("chi3+tt5x2".parse::<Pruner>().unwrap(), Pruner::composite(3));
        assert!("chi".parse::<Pruner>().is_err());
        assert_eq!(Pruner::composite(4).to_string(), "chi4+tt5x2");
    }

    #[test]
    fn gluing_two_copies() {
        let c = &eight_completions()[0];
        let p = glue_identify(&c.t, c.glue, &c.t, c.glue, &triangle_matching(0)).unwrap();
        assert_eq!(p.n(), 13);
        assert_eq!(p.undecided_count(), 25);
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(p.has_arc(i, j), c.t.has_arc(i, j));
            }
        }
        // the triangle cannot be matched against its reverse
        let bad = glue_identify(&c.t, c.glue, &c.t, c.glue, &[(5, 5), (6, 7), (7, 6)]);
        assert!(matches!(bad, Err(Error::Parameter(_))));
    }

    #[test]
    fn eight_completion_count() {
        let all = eight_completions();
        assert_eq!(all.len(), 256);
        assert!(all.iter().all(|c| c.is_well_formed()));
    }

    #[test]
    fn types_of_two_colourable_gluing() {
        // W_1 dominated by TT_5 is 3-chromatic; a transitive glue gives the full window
        let tt5 = Tournament::transitive(5).unwrap();
        let tt8 = Tournament::transitive(8).unwrap();
        let t = tt5.dominating_sum(&tt8).unwrap();
        let glue = VertexSet::full(13) - VertexSet::full(5);
        let ty = completion_type(&t, VertexSet::full(5), glue).unwrap();
        assert_eq!(ty.len(), 56 + 70 + 56);
        assert!(types_compatible(&ty, &ty).unwrap());
        let empty = SubsetFamily::empty(glue).unwrap();
        assert!(!types_compatible(&empty, &ty).unwrap());
        let w1 = named::w1();
        let g = tt5.dominating_sum(&w1).unwrap();
        let glue7 = VertexSet::full(12) - VertexSet::full(5);
        // every tournament on at most five vertices is 2-colourable
        assert_eq!(completion_type(&g, VertexSet::full(5), glue7).unwrap().len(), 35 + 35 + 21);
    }
}
