//! The named verification scenarios.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::checkpoint::{Flow, RunOptions, Session};
use super::report::ScenarioReport;
use super::skeleton::{self, Placement};
use crate::coloring::{self, ColorPartition};
use crate::completions::{self, Pruner};
use crate::error::{Error, Result};
use crate::isomorphism::{self, CanonicalForm};
use crate::named;
use crate::partial::PartialTournament;
use crate::tournament::Tournament;
use crate::transitive;
use crate::vertex_set::VertexSet;

/// Scenario ids, in the order they are listed by the command-line tool.
pub const SCENARIOS: [&str; 10] = [
    "verify_t7_census",
    "verify_x13_structure",
    "verify_19_certificate",
    "verify_skeleton_claims",
    "verify_12_contains_pal11",
    "census_8",
    "verify_8_completions",
    "verify_13_completion_stats",
    "search_18_two_tt5",
    "search_18_three_tt5",
];

/// Scenarios that take hours or more when run in full.
pub const LONG_RUNNING: [&str; 4] =
    ["verify_12_contains_pal11", "verify_13_completion_stats", "search_18_two_tt5", "search_18_three_tt5"];

/// Runs the scenario `id`.
pub fn run(id: &str, opts: &RunOptions) -> Result<ScenarioReport> {
    let start = std::time::Instant::now();
    let mut report = match id {
        "verify_t7_census" => verify_t7_census()?,
        "verify_x13_structure" => verify_x13_structure()?,
        "verify_19_certificate" => verify_19_certificate()?,
        "verify_skeleton_claims" => verify_skeleton_claims()?,
        "verify_12_contains_pal11" => verify_12_contains_pal11(opts)?,
        "census_8" => census_8(opts)?,
        "verify_8_completions" => verify_8_completions(opts)?,
        "verify_13_completion_stats" => verify_13_completion_stats(opts)?,
        "search_18_two_tt5" => search_18_two_tt5(opts)?,
        "search_18_three_tt5" => search_18_three_tt5(opts)?,
        _ => return Err(Error::Usage(format!("unknown scenario {id:?}; known: {}", SCENARIOS.join(", ")))),
    };
    report.wall_time = start.elapsed();
    Ok(report)
}

/// Colouring with at most `k` classes, checked structurally before it is trusted.
fn verified_coloring(t: &Tournament, k: usize) -> Option<ColorPartition> {
    coloring::k_colorable(t, k).filter(|p| p.len() <= k && p.verify(t))
}

fn write_list(opts: &RunOptions, name: &str, ts: &[Tournament]) -> Result<Option<PathBuf>> {
    let Some(dir) = &opts.output_dir else { return Ok(None) };
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let text: String = ts.iter().map(|t| format!("{t}\n")).collect();
    fs::write(&path, text)?;
    Ok(Some(path))
}

fn search_config(report: &mut ScenarioReport, opts: &RunOptions) {
    report.config("shard", opts.shard).config("strategy", opts.strategy.label());
}

fn parse_items(items: &[String], prefix: &str) -> Result<Vec<Tournament>> {
    items.iter().filter_map(|s| s.strip_prefix(prefix)).map(str::parse).collect()
}

pub fn verify_t7_census() -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("verify_t7_census");
    let t7 = isomorphism::enumerate_tournaments(7)?;
    r.check("tournaments_7", t7.len(), 456);
    let mut three = BTreeSet::new();
    let mut bad_witness = 0;
    for t in &t7 {
        let (k, w) = coloring::dichromatic_witness(t);
        if !w.verify(t) || w.len() != k {
            bad_witness += 1;
        }
        if k == 3 {
            three.insert(isomorphism::canonical_form(t)?);
        }
    }
    r.check("three_chromatic_7", three.len(), 4);
    let drawn: BTreeSet<CanonicalForm> = named::seven_vertex_three_chromatic()
        .iter()
        .map(|(_, t)| isomorphism::canonical_form(t))
        .collect::<Result<_>>()?;
    r.check("matches_drawn_four", three == drawn, true);
    let drawn_three =
        named::seven_vertex_three_chromatic().iter().filter(|(_, t)| coloring::k_colorable(t, 2).is_none()).count();
    r.check("drawn_not_two_colorable", drawn_three, 4);
    let t6 = isomorphism::enumerate_tournaments(6)?;
    r.check("tournaments_6", t6.len(), 56);
    let two = t6.iter().filter(|t| verified_coloring(t, 2).is_some()).count();
    r.check("two_colorable_6", two, 56);
    r.check("witness_failures", bad_witness, 0);
    Ok(r)
}

/// Transitive 4-sets of `X_13` whose two highest-scoring vertices are `{0, 1}`
/// or `{0, 2}`, each as a sorted list.
pub fn x13_top_tt4() -> Vec<Vec<usize>> {
    let x = Tournament::x13();
    let mut out: Vec<Vec<usize>> = transitive::all_tt(x.rows(), x.vertices(), 4)
        .into_iter()
        .filter(|&s| {
            let mut by_score = s.to_vec();
            by_score.sort_by_key(|&v| std::cmp::Reverse(x.out_degree_in(v, s)));
            by_score[0] == 0 && (by_score[1] == 1 || by_score[1] == 2)
        })
        .map(|s| s.to_vec())
        .collect();
    out.sort();
    out
}

pub fn verify_x13_structure() -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("verify_x13_structure");
    let x = Tournament::x13();
    r.check("tt5_free", transitive::contains_tt(&x, 5).is_none(), true);
    let auts = isomorphism::automorphisms(&x);
    r.count("automorphisms", auts.len());
    r.check("vertex_transitive", isomorphism::orbit(&auts, 0) == x.vertices(), true);
    let stray_arcs = x
        .arcs()
        .filter(|&(i, j)| !auts.iter().any(|g| g[i] == 0 && (g[j] == 1 || g[j] == 2)))
        .count();
    r.check("arcs_outside_orbits_01_02", stray_arcs, 0);

    let tt4 = x13_top_tt4();
    let expected = vec![vec![0, 1, 2, 3], vec![0, 1, 2, 6], vec![0, 1, 3, 6], vec![0, 2, 3, 5]];
    r.check("top_tt4_sets", format!("{tt4:?}"), format!("{expected:?}"));
    let residuals: Vec<Tournament> = expected
        .iter()
        .map(|a| x.induced(x.vertices() - a.iter().copied().collect::<VertexSet>()))
        .collect::<Result<_>>()?;
    let rigid = residuals.iter().filter(|t| isomorphism::automorphisms(t).len() == 1).count();
    r.check("rigid_residuals", rigid, 4);
    let mut iso_pairs = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if isomorphism::are_isomorphic(&residuals[i], &residuals[j]) {
                iso_pairs += 1;
            }
        }
    }
    r.check("isomorphic_residual_pairs", iso_pairs, 0);
    let rest = x.vertices() - VertexSet::from([0, 1, 2, 3]);
    let indeg: Vec<usize> = [4, 5, 6].iter().map(|&v| (x.inn(v) & rest).len()).collect();
    r.check("first_residual_indegree_4_5_6", format!("{indeg:?}"), "[3, 3, 3]");

    // every 14-vertex tournament contains TT_5: sampled
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let samples = 100_000;
    let misses = (0..samples)
        .filter(|_| {
            let t = Tournament::from_fn(14, |_, _| rng.gen()).expect("14 vertices");
            transitive::contains_tt(&t, 5).is_none_or(|s| !transitive::is_transitive(&t, s))
        })
        .count();
    r.count("random_14_samples", samples);
    r.check("random_14_without_tt5", misses, 0);
    Ok(r)
}

pub fn verify_19_certificate() -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("verify_19_certificate");
    let t = Tournament::blowup_pal7();
    r.check("four_colorable", coloring::k_colorable(&t, 4).is_some(), false);
    r.check("five_coloring_verified", verified_coloring(&t, 5).is_some(), true);
    let mut reversals = 0;
    let mut reversals_ok = 0;
    for i in 0..t.n() {
        for j in i + 1..t.n() {
            reversals += 1;
            if verified_coloring(&t.with_reversed_arc(i, j), 4).is_some() {
                reversals_ok += 1;
            }
        }
    }
    r.check("arc_reversals", reversals, 171);
    r.check("arc_reversals_four_colorable", reversals_ok, 171);
    let deletions_ok =
        (0..t.n()).filter(|&v| t.delete_vertex(v).is_ok_and(|d| verified_coloring(&d, 4).is_some())).count();
    r.check("vertex_deletions_four_colorable", deletions_ok, 19);
    Ok(r)
}

/// For one placement of `x`: bit `m` is set iff `{a, b, c, d, x} ∪ B'` is
/// 2-colourable, where `B' ⊆ W_1` has indicator `m`.
pub fn two_colorable_family(t: &Tournament) -> Result<u128> {
    let a = skeleton::transitive_part();
    let mut fam = 0u128;
    for m in 0u32..128 {
        let s = a | VertexSet::from_bits(m);
        if verified_coloring(&t.induced(s)?, 2).is_some() {
            fam |= 1 << m;
        }
    }
    Ok(fam)
}

fn mask(vs: &[usize]) -> u32 {
    vs.iter().fold(0, |m, &v| m | 1 << v)
}

pub fn verify_skeleton_claims() -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("verify_skeleton_claims");
    let copies = skeleton::check_skeleton()?;
    r.count("w1_copies_in_pal11", copies);
    let sk = skeleton::skeleton();
    let mut families = Vec::with_capacity(Placement::COUNT);
    let mut fails = [0usize; 4];
    for idx in 0..Placement::COUNT {
        let t = Placement::from_index(idx).tournament(&sk);
        let fam = two_colorable_family(&t)?;
        let col = |vs: &[usize]| fam >> mask(vs) & 1 == 1;
        if !col(&[0, 1, 4]) {
            fails[0] += 1;
        }
        if !(col(&[0, 1, 2, 3]) || col(&[0, 4, 5, 6])) {
            fails[1] += 1;
        }
        if !col(&[4, 5, 6]) && !col(&[2, 3, 5, 6]) && !(col(&[0, 2, 4]) && col(&[1, 3, 5, 6])) {
            fails[2] += 1;
        }
        if !col(&[1, 2, 3]) && !col(&[2, 3, 5, 6]) && !(col(&[0, 1, 6]) && col(&[2, 3, 4, 5])) {
            fails[3] += 1;
        }
        families.push(fam);
    }
    r.count("placements", families.len());
    for (k, f) in fails.iter().enumerate() {
        r.check(&format!("claim_{}_failures", k + 1), f, 0);
    }
    // families[j] read through complements: bit m set iff W_1 \ m is in family j
    let complemented: Vec<u128> = families
        .iter()
        .map(|&f| (0..128).filter(|&m| f >> (127 ^ m) & 1 == 1).fold(0u128, |acc, m| acc | 1 << m))
        .collect();
    let mut no_split = 0u64;
    for &f in &families {
        no_split += complemented.iter().filter(|&&g| f & g == 0).count() as u64;
    }
    r.count("placement_pairs", families.len() * families.len());
    r.check("pairs_without_split", no_split, 0);
    Ok(r)
}

pub fn verify_12_contains_pal11(opts: &RunOptions) -> Result<ScenarioReport> {
    let id = "verify_12_contains_pal11";
    let mut r = ScenarioReport::new(id);
    search_config(&mut r, opts);
    let xs = named::seven_vertex_three_chromatic();
    let tt5 = Tournament::transitive(5)?;
    let pal11 = Tournament::paley(11)?;
    let mut s = Session::open(id, opts)?;
    for (_, unit) in s.pending_units(xs.len()) {
        let (name, x) = xs[unit];
        let root = PartialTournament::disjoint_union(&x, &tt5)?;
        let flow = s.search(&root, Pruner::k_colorable(3), |ck, t| {
            *ck.counter(&format!("outputs.{name}")) += 1;
            ck.digest.absorb(&t.to_string());
            let glued = t.induced(VertexSet::full(7))? == x && transitive::is_transitive(&t, VertexSet::full(12) - VertexSet::full(7));
            if !glued {
                *ck.counter("not_a_gluing") += 1;
            }
            let emb = isomorphism::subtournament_embedding(&t, &pal11);
            let ok = emb.is_some_and(|e| (0..11).all(|i| (0..11).all(|j| i == j || pal11.has_arc(i, j) == t.has_arc(e[i], e[j]))));
            if !ok {
                *ck.counter("without_pal11") += 1;
                ck.items.push(format!("without_pal11 {t}"));
            }
            Ok(())
        })?;
        if flow == Flow::Stop || s.finish_unit()? == Flow::Stop {
            break;
        }
    }
    let done = s.ck.progress >= s.owned_units(xs.len());
    for (unit, (name, _)) in xs.iter().enumerate() {
        if !opts.shard.owns(unit) {
            continue;
        }
        let n = s.ck.get(&format!("outputs.{name}"));
        if *name == "W1" {
            r.count("outputs.W1", n);
        } else if done {
            r.check(&format!("outputs.{name}"), n, 0);
        } else {
            r.count(&format!("outputs.{name}"), n);
        }
    }
    r.check("outputs_without_pal11", s.ck.get("without_pal11"), 0);
    r.check("outputs_not_a_gluing", s.ck.get("not_a_gluing"), 0);
    r.count("nodes", s.nodes_total()).count("cuts", s.ck.get("cuts") + s.ck.stats.cuts).count("digest", s.ck.digest.hex());
    r.incomplete = !done;
    s.save()?;
    Ok(r)
}

/// The 3-chromatic tournaments on 8 vertices, and those among them without
/// `TT_5`, as canonical representatives.
pub fn three_chromatic_8() -> Result<(Vec<Tournament>, Vec<Tournament>)> {
    let all = isomorphism::enumerate_tournaments(8)?;
    let three: Vec<Tournament> = all
        .into_iter()
        .filter(|t| coloring::k_colorable(t, 2).is_none() && verified_coloring(t, 3).is_some())
        .collect();
    let free = three.iter().copied().filter(|t| transitive::contains_tt(t, 5).is_none()).collect();
    Ok((three, free))
}

pub fn census_8(opts: &RunOptions) -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("census_8");
    let sizes: Vec<usize> =
        (1..=8).map(|n| isomorphism::census(n).map(|c| c.len())).collect::<Result<_>>()?;
    r.check("census_sizes", format!("{sizes:?}"), "[1, 1, 2, 4, 12, 56, 456, 6880]");
    let (three, free) = three_chromatic_8()?;
    r.check("three_chromatic_8", three.len(), 258);
    r.check("three_chromatic_tt5_free_8", free.len(), 94);
    r.certificates.extend(write_list(opts, "three_chromatic_8.txt", &three)?);
    r.certificates.extend(write_list(opts, "three_chromatic_tt5_free_8.txt", &free)?);
    Ok(r)
}

/// Deduplicates the raw 8-vertex gluings in `raw` as [`completions::eight_completions`] does.
fn dedup_eight(raw: &[Tournament]) -> Result<Vec<Tournament>> {
    let group = isomorphism::SymmetryGroup::cyclic(8, &completions::TRIANGLE)?;
    let mut classes = BTreeMap::new();
    for t in raw {
        classes.entry(isomorphism::canonical_form_fixing(t, VertexSet::full(5), &group)?).or_insert(*t);
    }
    Ok(classes.into_values().collect())
}

pub fn verify_8_completions(opts: &RunOptions) -> Result<ScenarioReport> {
    let id = "verify_8_completions";
    let mut r = ScenarioReport::new(id);
    search_config(&mut r, opts);
    let mut s = Session::open(id, opts)?;
    let mut stopped = false;
    for _ in s.pending_units(1) {
        let flow = s.search(&completions::eight_completion_base(), Pruner::k_colorable(2), |ck, t| {
            ck.digest.absorb(&t.to_string());
            ck.items.push(t.to_string());
            Ok(())
        })?;
        if flow == Flow::Stop || s.finish_unit()? == Flow::Stop {
            stopped = flow == Flow::Stop;
            break;
        }
    }
    if stopped || s.ck.progress < 1 {
        r.count("raw_gluings_so_far", s.ck.items.len());
        r.incomplete = true;
        s.save()?;
        return Ok(r);
    }
    let raw = parse_items(&s.ck.items, "")?;
    r.count("raw_gluings", raw.len());
    let classes = dedup_eight(&raw)?;
    r.check("eight_completions", classes.len(), 256);
    r.check("matches_library", classes == completions::eight_completions().into_iter().map(|c| c.t).collect::<Vec<_>>(), true);
    let bad = classes
        .iter()
        .filter(|t| coloring::k_colorable(t, 2).is_some() || verified_coloring(t, 3).is_none())
        .count();
    r.check("not_three_chromatic", bad, 0);
    let (three, _) = three_chromatic_8()?;
    let census: BTreeSet<CanonicalForm> = three.iter().map(isomorphism::canonical_form).collect::<Result<_>>()?;
    let underlying: BTreeSet<CanonicalForm> =
        classes.iter().map(isomorphism::canonical_form).collect::<Result<_>>()?;
    r.count("underlying_tournaments", underlying.len());
    r.check("underlying_in_census", underlying.is_subset(&census), true);
    r.count("nodes", s.nodes_total()).count("digest", s.ck.digest.hex());
    r.certificates.extend(write_list(opts, "eight_completions.txt", &classes)?);
    s.save()?;
    Ok(r)
}

/// Ways of counting "pairs with a 13-completion": ordered or unordered pairs of
/// 8-completions, each rotation separately or summed over rotations.
pub const CONVENTIONS: [&str; 4] = ["ordered_rotation", "unordered_rotation", "ordered_any_rotation", "unordered_any_rotation"];

fn record(ck: &mut super::checkpoint::Checkpoint, conv: &str, count: u64, weight: u64) {
    if count > 0 {
        *ck.counter(&format!("{conv}.nonempty")) += weight;
        *ck.counter(&format!("{conv}.total")) += weight * count;
    }
    if count == 1 {
        *ck.counter(&format!("{conv}.exactly_one")) += weight;
    }
    let max = ck.counter(&format!("{conv}.max"));
    *max = (*max).max(count);
}

pub fn verify_13_completion_stats(opts: &RunOptions) -> Result<ScenarioReport> {
    let id = "verify_13_completion_stats";
    let mut r = ScenarioReport::new(id);
    search_config(&mut r, opts);
    let eight = completions::eight_completions();
    let pairs: Vec<(usize, usize)> =
        (0..eight.len()).flat_map(|i| (i..eight.len()).map(move |j| (i, j))).collect();
    let mut s = Session::open(id, opts)?;
    // shard by the first completion of the pair
    let owned: Vec<usize> = (0..pairs.len()).filter(|&u| opts.shard.owns(pairs[u].0)).collect();
    let mut stopped = false;
    'units: for &u in owned.iter().skip(s.ck.progress as usize) {
        let (i, j) = pairs[u];
        let start = s.ck.cursor.first().copied().unwrap_or(0) as usize;
        for rot in start..3 {
            s.ck.cursor = vec![rot as u64];
            let base = completions::pair_base(&eight[i], &eight[j], rot)?;
            let flow = s.search(&base, Pruner::k_colorable(3), |ck, t| {
                *ck.counter(&format!("pair.r{rot}")) += 1;
                ck.digest.absorb(&t.to_string());
                Ok(())
            })?;
            if flow == Flow::Stop {
                stopped = true;
                break 'units;
            }
        }
        let counts: Vec<u64> = (0..3).map(|rot| s.ck.get(&format!("pair.r{rot}"))).collect();
        for rot in 0..3 {
            s.ck.counters.remove(&format!("pair.r{rot}"));
        }
        let w = if i == j { 1 } else { 2 };
        let sum: u64 = counts.iter().sum();
        for &c in &counts {
            record(&mut s.ck, "ordered_rotation", c, w);
            record(&mut s.ck, "unordered_rotation", c, 1);
        }
        record(&mut s.ck, "ordered_any_rotation", sum, w);
        record(&mut s.ck, "unordered_any_rotation", sum, 1);
        *s.ck.counter("pairs_done") += 1;
        if s.finish_unit()? == Flow::Stop {
            stopped = true;
            break;
        }
    }
    let done = !stopped && s.ck.progress >= owned.len() as u64;
    r.count("pairs_done", s.ck.get("pairs_done"));
    let mut any_match = false;
    for conv in CONVENTIONS {
        let nonempty = s.ck.get(&format!("{conv}.nonempty"));
        let total = s.ck.get(&format!("{conv}.total"));
        let max = s.ck.get(&format!("{conv}.max"));
        let one = s.ck.get(&format!("{conv}.exactly_one"));
        let mean = if nonempty > 0 { total as f64 / nonempty as f64 } else { 0.0 };
        r.count(&format!("{conv}.nonempty"), nonempty)
            .count(&format!("{conv}.mean"), format!("{mean:.2}"))
            .count(&format!("{conv}.max"), max)
            .count(&format!("{conv}.exactly_one"), one)
            .count(&format!("{conv}.exactly_one_fraction"), format!("{:.3}", if nonempty > 0 { one as f64 / nonempty as f64 } else { 0.0 }));
        let quarter = nonempty > 0 && (one as f64 / nonempty as f64 - 0.25).abs() <= 0.05;
        if nonempty == 4508 && (mean - 47.6).abs() <= 0.05 && max == 2072 && quarter {
            any_match = true;
        }
    }
    if done && opts.shard.is_whole() {
        r.check("some_convention_matches_published", any_match, true);
    }
    r.count("nodes", s.nodes_total()).count("digest", s.ck.digest.hex());
    r.incomplete = !done;
    s.save()?;
    Ok(r)
}

/// Random orientation of the undecided pairs.
fn random_completion(p: &PartialTournament, rng: &mut ChaCha8Rng) -> Tournament {
    let mut q = p.clone();
    for (a, b) in p.undecided() {
        let (x, y) = if rng.gen() { (a, b) } else { (b, a) };
        q.orient(x, y).expect("undecided pair");
    }
    q.to_tournament().expect("all pairs oriented")
}

/// Compatible pairs per 8-vertex part that get a random-orientation spot check.
const SPOT_CHECKS: u64 = 3;

pub fn search_18_two_tt5(opts: &RunOptions) -> Result<ScenarioReport> {
    let id = "search_18_two_tt5";
    let mut r = ScenarioReport::new(id);
    search_config(&mut r, opts);
    r.config("split_window", if opts.unrestricted_split { "0..8" } else { "3..5" });
    let (_, parts) = three_chromatic_8()?;
    let tt5 = Tournament::transitive(5)?;
    let a = VertexSet::full(5);
    let glue = VertexSet::full(13) - a;
    let mut s = Session::open(id, opts)?;
    let mut stopped = false;
    'units: for (_, unit) in s.pending_units(parts.len()) {
        let b = parts[unit];
        // phase 0: the 13-completions of this part, kept as items
        if s.ck.cursor.is_empty() {
            let root = PartialTournament::disjoint_union(&tt5, &b)?;
            let flow = s.search(&root, Pruner::composite(3), |ck, t| {
                ck.items.push(format!("c13 {t}"));
                Ok(())
            })?;
            if flow == Flow::Stop {
                stopped = true;
                break;
            }
            s.ck.cursor = vec![1, 0];
        }
        let list = parse_items(&s.ck.items, "c13 ")?;
        let typed: Vec<_> = list.iter().map(|t| completions::completion_type(t, a, glue)).collect::<Result<_>>()?;
        let wide: Vec<_> = list
            .iter()
            .map(|t| completions::two_colorable_extensions(t, a, glue, 0..=8))
            .collect::<Result<_>>()?;
        let pairs: Vec<(usize, usize)> = (0..list.len()).flat_map(|k| (k..list.len()).map(move |l| (k, l))).collect();
        let first = s.ck.cursor[1] as usize;
        for (pos, &(k, l)) in pairs.iter().enumerate().skip(first) {
            s.ck.cursor = vec![1, pos as u64];
            let typed_ok = completions::types_compatible(&typed[k], &typed[l])?;
            let wide_ok = wide[k].complementary_member(&wide[l])?.is_some();
            if typed_ok && !wide_ok {
                *s.ck.counter("typed_without_wide_split") += 1;
            }
            let skip = if opts.unrestricted_split { wide_ok } else { typed_ok };
            let glued = completions::glue_identify(&list[k], glue, &list[l], glue, &glue.iter().map(|v| (v, v)).collect::<Vec<_>>())?;
            if skip {
                *s.ck.counter("compatible_pairs") += 1;
                if s.ck.get("spot_checked") < SPOT_CHECKS * (s.ck.progress + 1) {
                    let mut rng = ChaCha8Rng::seed_from_u64((unit * 1_000_003 + pos) as u64);
                    let t = random_completion(&glued, &mut rng);
                    *s.ck.counter("spot_checked") += 1;
                    if verified_coloring(&t, 4).is_none() {
                        *s.ck.counter("spot_check_failures") += 1;
                        s.ck.items.push(format!("cert {t}"));
                    }
                }
                continue;
            }
            let flow = s.search(&glued, Pruner::k_colorable(4), |ck, t| {
                *ck.counter("five_chromatic") += 1;
                ck.items.push(format!("cert {t}"));
                Ok(())
            })?;
            if flow == Flow::Stop {
                // resumes at this pair, whose search state is saved
                stopped = true;
                break 'units;
            }
            *s.ck.counter("searched_pairs") += 1;
        }
        *s.ck.counter("thirteen_completions") += list.len() as u64;
        *s.ck.counter("parts_done") += 1;
        s.ck.items.retain(|i| !i.starts_with("c13 "));
        if s.finish_unit()? == Flow::Stop {
            stopped = true;
            break;
        }
    }
    let done = !stopped && s.ck.progress >= s.owned_units(parts.len());
    for key in ["parts_done", "thirteen_completions", "compatible_pairs", "searched_pairs", "spot_checked"] {
        r.count(key, s.ck.get(key));
    }
    r.count("nodes", s.nodes_total());
    r.check("five_chromatic", s.ck.get("five_chromatic"), 0);
    r.check("spot_check_failures", s.ck.get("spot_check_failures"), 0);
    r.check("typed_without_wide_split", s.ck.get("typed_without_wide_split"), 0);
    let certs = parse_items(&s.ck.items, "cert ")?;
    if !certs.is_empty() {
        r.certificates.extend(write_list(opts, "search_18_two_tt5_certificates.txt", &certs)?);
    }
    r.incomplete = !done;
    s.save()?;
    Ok(r)
}

/// Builds the 18-vertex tournament from three 13-completions laid out as
/// [`completions::pair_base`] does: `c12` for `(C1, C2, r12)`, `c13` for
/// `(C1, C3, r13)` and `c23` for `(C2, C3, r13 - r12)`. The result has `C1`'s
/// `TT_5` on `0..5`, the triangle on `5..8` (labelled as in `C1`), `C2`'s `TT_5`
/// on `8..13` and `C3`'s on `13..18`.
pub fn assemble_triple(c12: &Tournament, c13: &Tournament, c23: &Tournament, r12: usize) -> Result<Tournament> {
    if c12.n() != 13 || c13.n() != 13 || c23.n() != 13 || r12 > 2 {
        return Err(Error::Parameter("three 13-vertex completions and a rotation are required".into()));
    }
    let id13: Vec<usize> = (0..13).collect();
    let to18_13: Vec<usize> = (0..8).chain(13..18).collect();
    // c23 vertex 5+j is C2's triangle vertex j, which sits on C1's vertex j - r12
    let to18_23: Vec<usize> = (0..13)
        .map(|v| match v {
            0..5 => 8 + v,
            5..8 => 5 + (v - 5 + 3 - r12) % 3,
            _ => 13 + (v - 8),
        })
        .collect();
    let mut arcs: HashMap<(usize, usize), bool> = HashMap::new();
    for (t, map) in [(c12, &id13), (c13, &to18_13), (c23, &to18_23)] {
        for i in 0..13 {
            for j in i + 1..13 {
                let (u, v) = (map[i], map[j]);
                let key = (u.min(v), u.max(v));
                let dir = t.has_arc(i, j) == (u < v);
                if let Some(&old) = arcs.get(&key) {
                    if old != dir {
                        return Err(Error::Structural(format!("completions disagree on the pair {key:?}")));
                    }
                }
                arcs.insert(key, dir);
            }
        }
    }
    Tournament::from_fn(18, |i, j| arcs[&(i, j)])
}

pub fn search_18_three_tt5(opts: &RunOptions) -> Result<ScenarioReport> {
    let id = "search_18_three_tt5";
    let mut r = ScenarioReport::new(id);
    search_config(&mut r, opts);
    let eight = completions::eight_completions();
    let n = eight.len();
    let mut s = Session::open(id, opts)?;
    let mut cache: HashMap<(usize, usize, usize), Vec<Tournament>> = HashMap::new();
    let mut thirteen = |s: &mut Session, i: usize, j: usize, rot: usize| -> Result<Vec<Tournament>> {
        if let Some(v) = cache.get(&(i, j, rot)) {
            return Ok(v.clone());
        }
        let mut c = completions::Completions::with_strategy(
            &completions::pair_base(&eight[i], &eight[j], rot)?,
            Pruner::k_colorable(3),
            opts.strategy,
        );
        let v: Vec<Tournament> = c.by_ref().collect();
        s.charge(c.stats().nodes);
        *s.ck.counter("nodes") += c.stats().nodes;
        cache.insert((i, j, rot), v.clone());
        Ok(v)
    };
    // triples i <= j <= k in lexicographic order, sharded by position
    let triple = |mut u: usize| -> (usize, usize, usize) {
        for i in 0..n {
            for j in i..n {
                let len = n - j;
                if u < len {
                    return (i, j, j + u);
                }
                u -= len;
            }
        }
        unreachable!("triple index in range")
    };
    let total = n * (n + 1) * (n + 2) / 6;
    let mut stopped = false;
    'units: for u in (0..total).filter(|&u| opts.shard.owns(u)).skip(s.ck.progress as usize) {
        let (i, j, k) = triple(u);
        let start = s.ck.cursor.first().copied().unwrap_or(0) as usize;
        for rots in start..9 {
            s.ck.cursor = vec![rots as u64];
            let (r12, r13) = (rots / 3, rots % 3);
            let r23 = (r13 + 3 - r12) % 3;
            let c12 = thirteen(&mut s, i, j, r12)?;
            let c13 = if c12.is_empty() { Vec::new() } else { thirteen(&mut s, i, k, r13)? };
            let c23 = if c13.is_empty() { Vec::new() } else { thirteen(&mut s, j, k, r23)? };
            if c23.is_empty() {
                *s.ck.counter("skipped_rotations") += 1;
            } else {
                for x in &c12 {
                    for y in &c13 {
                        for z in &c23 {
                            let t = assemble_triple(x, y, z, r12)?;
                            *s.ck.counter("assembled") += 1;
                            if verified_coloring(&t, 4).is_none() {
                                *s.ck.counter("five_chromatic") += 1;
                                s.ck.items.push(format!("cert {t}"));
                            }
                        }
                    }
                }
            }
            if s.exhausted() {
                s.ck.cursor = vec![rots as u64 + 1];
                s.save()?;
                stopped = true;
                break 'units;
            }
        }
        *s.ck.counter("triples_done") += 1;
        if s.finish_unit()? == Flow::Stop {
            stopped = true;
            break;
        }
    }
    let owned = (0..total).filter(|&u| opts.shard.owns(u)).count() as u64;
    let done = !stopped && s.ck.progress >= owned;
    for key in ["triples_done", "skipped_rotations", "assembled", "nodes"] {
        r.count(key, s.ck.get(key));
    }
    r.check("five_chromatic", s.ck.get("five_chromatic"), 0);
    let certs = parse_items(&s.ck.items, "cert ")?;
    if !certs.is_empty() {
        r.certificates.extend(write_list(opts, "search_18_three_tt5_certificates.txt", &certs)?);
    }
    r.incomplete = !done;
    s.save()?;
    Ok(r)
}
