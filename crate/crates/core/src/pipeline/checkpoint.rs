//! Checkpoints for long scenarios, and the run session that writes them.
//!
//! A checkpoint is a small text file:
//!
//! ```text
//! checkpoint v1
//! scenario=verify_12_contains_pal11
//! shard=0/4
//! progress=2
//! digest=5f0c...
//! counter.outputs.W=0
//! item=12:0110...
//! stats=1200 600 0 0
//! frontier=12:01?1...
//! ```
//!
//! `progress` counts finished work units of the shard, `cursor` (optional)
//! locates the position inside the current unit, counters and items carry the
//! scenario's accumulators, and the frontier holds the open branches of the
//! search in progress (bottom of the stack first).

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use sha2::{Digest as _, Sha256};

use crate::completions::{BranchStrategy, Completions, Pruner, SearchStats};
use crate::error::{Error, Result};
use crate::partial::PartialTournament;
use crate::tournament::Tournament;

/// `index/count`: this shard owns the outer-loop values `v` with `v % count == index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shard {
    pub index: usize,
    pub count: usize,
}

impl Shard {
    pub const WHOLE: Shard = Shard { index: 0, count: 1 };

    pub fn new(index: usize, count: usize) -> Result<Self> {
        if count == 0 || index >= count {
            return Err(Error::Parameter(format!("invalid shard {index}/{count}")));
        }
        Ok(Shard { index, count })
    }

    pub fn owns(&self, v: usize) -> bool {
        v % self.count == self.index
    }

    pub fn is_whole(&self) -> bool {
        self.count == 1
    }
}

impl Default for Shard {
    fn default() -> Self {
        Shard::WHOLE
    }
}

impl fmt::Display for Shard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.count)
    }
}

impl FromStr for Shard {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (i, n) = s.split_once('/').ok_or_else(|| Error::Parse(format!("shard must be i/N, got {s:?}")))?;
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad shard {s:?}")));
        Shard::new(parse(i)?, parse(n)?)
    }
}

/// Running SHA-256 over everything a scenario has produced, in order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WorkDigest([u8; 32]);

impl WorkDigest {
    pub fn new() -> Self {
        WorkDigest([0; 32])
    }

    pub fn absorb(&mut self, item: &str) {
        let mut h = Sha256::new();
        h.update(self.0);
        h.update(item.as_bytes());
        self.0 = h.finalize().into();
    }

    pub fn hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn from_hex(s: &str) -> Result<Self> {
        if s.len() != 64 || !s.is_ascii() {
            return Err(Error::Parse(format!("bad digest {s:?}")));
        }
        let mut out = [0u8; 32];
        for (i, b) in out.iter_mut().enumerate() {
            *b = u8::from_str_radix(&s[2 * i..2 * i + 2], 16).map_err(|_| Error::Parse(format!("bad digest {s:?}")))?;
        }
        Ok(WorkDigest(out))
    }
}

impl Default for WorkDigest {
    fn default() -> Self {
        WorkDigest::new()
    }
}

impl fmt::Debug for WorkDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hex())
    }
}

/// Serializable state of a shard.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Checkpoint {
    pub scenario: String,
    pub shard: Shard,
    /// Finished work units; only ever grows.
    pub progress: u64,
    /// Position inside the current unit (scenario specific).
    pub cursor: Vec<u64>,
    pub digest: WorkDigest,
    pub counters: BTreeMap<String, u64>,
    pub items: Vec<String>,
    /// Counters of the search in progress.
    pub stats: SearchStats,
    pub frontier: Vec<PartialTournament>,
}

impl Checkpoint {
    pub fn new(scenario: &str, shard: Shard) -> Self {
        Checkpoint { scenario: scenario.to_string(), shard, ..Default::default() }
    }

    pub fn counter(&mut self, key: &str) -> &mut u64 {
        self.counters.entry(key.to_string()).or_insert(0)
    }

    pub fn get(&self, key: &str) -> u64 {
        self.counters.get(key).copied().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("checkpoint v1\n");
        out.push_str(&format!("scenario={}\nshard={}\nprogress={}\n", self.scenario, self.shard, self.progress));
        if !self.cursor.is_empty() {
            let c: Vec<String> = self.cursor.iter().map(u64::to_string).collect();
            out.push_str(&format!("cursor={}\n", c.join(" ")));
        }
        out.push_str(&format!("digest={}\n", self.digest.hex()));
        for (k, v) in &self.counters {
            out.push_str(&format!("counter.{k}={v}\n"));
        }
        for item in &self.items {
            out.push_str(&format!("item={item}\n"));
        }
        let s = &self.stats;
        out.push_str(&format!("stats={} {} {} {}\n", s.nodes, s.cuts, s.emitted, s.rejected));
        for p in &self.frontier {
            out.push_str(&format!("frontier={p}\n"));
        }
        out
    }

    /// Writes atomically (temporary file, then rename).
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, self.to_text())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        fs::read_to_string(path)?.parse()
    }
}

impl FromStr for Checkpoint {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some("checkpoint v1") {
            return Err(Error::Parse("not a checkpoint file".into()));
        }
        let bad = |l: &str| Error::Parse(format!("bad checkpoint line {l:?}"));
        let mut ck = Checkpoint::default();
        let mut seen_scenario = false;
        for line in lines.filter(|l| !l.is_empty()) {
            let (key, value) = line.split_once('=').ok_or_else(|| bad(line))?;
            match key {
                "scenario" => {
                    ck.scenario = value.to_string();
                    seen_scenario = true;
                }
                "shard" => ck.shard = value.parse()?,
                "progress" => ck.progress = value.parse().map_err(|_| bad(line))?,
                "cursor" => {
                    ck.cursor = value
                        .split_whitespace()
                        .map(|x| x.parse().map_err(|_| bad(line)))
                        .collect::<Result<_>>()?
                }
                "digest" => ck.digest = WorkDigest::from_hex(value)?,
                "item" => ck.items.push(value.to_string()),
                "stats" => {
                    let v: Vec<u64> =
                        value.split_whitespace().map(|x| x.parse().map_err(|_| bad(line))).collect::<Result<_>>()?;
                    if v.len() != 4 {
                        return Err(bad(line));
                    }
                    ck.stats = SearchStats { nodes: v[0], cuts: v[1], emitted: v[2], rejected: v[3] };
                }
                "frontier" => ck.frontier.push(value.parse()?),
                _ => match key.strip_prefix("counter.") {
                    Some(k) => {
                        ck.counters.insert(k.to_string(), value.parse().map_err(|_| bad(line))?);
                    }
                    None => return Err(bad(line)),
                },
            }
        }
        if !seen_scenario {
            return Err(Error::Parse("checkpoint has no scenario".into()));
        }
        Ok(ck)
    }
}

/// When to write checkpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckpointPolicy {
    pub every_nodes: u64,
    pub every: Duration,
}

impl Default for CheckpointPolicy {
    fn default() -> Self {
        CheckpointPolicy { every_nodes: 1_000_000, every: Duration::from_secs(60) }
    }
}

/// How a scenario is run.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub shard: Shard,
    /// Where checkpoints go; no checkpointing when unset.
    pub checkpoint_dir: Option<PathBuf>,
    /// Continue from an existing checkpoint.
    pub resume: bool,
    /// Where certificate files go; none are written when unset.
    pub output_dir: Option<PathBuf>,
    /// Stop after this many search nodes in this invocation.
    pub node_budget: Option<u64>,
    /// Stop after this many finished work units in this invocation.
    pub unit_budget: Option<u64>,
    pub policy: CheckpointPolicy,
    pub strategy: BranchStrategy,
    /// Two-TT5 search: decide compatibility over every split of the glue
    /// vertices instead of the 3..5 window.
    pub unrestricted_split: bool,
}

/// Outcome of a budgeted step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flow {
    Continue,
    /// Budget exhausted; state has been saved.
    Stop,
}

/// Mutable state of one scenario invocation: the checkpoint plus budgets.
pub struct Session {
    pub ck: Checkpoint,
    pub opts: RunOptions,
    path: Option<PathBuf>,
    nodes_run: u64,
    units_run: u64,
    last_save: Instant,
    nodes_at_save: u64,
}

impl Session {
    /// Opens a session, loading the checkpoint when resuming.
    pub fn open(scenario: &str, opts: &RunOptions) -> Result<Self> {
        let path = opts
            .checkpoint_dir
            .as_ref()
            .map(|d| d.join(format!("{scenario}.shard{}of{}.ckpt", opts.shard.index, opts.shard.count)));
        if let Some(d) = &opts.checkpoint_dir {
            fs::create_dir_all(d)?;
        }
        let ck = match &path {
            Some(p) if opts.resume && p.exists() => {
                let ck = Checkpoint::load(p)?;
                if ck.scenario != scenario || ck.shard != opts.shard {
                    return Err(Error::Usage(format!(
                        "checkpoint {} belongs to {} shard {}",
                        p.display(),
                        ck.scenario,
                        ck.shard
                    )));
                }
                ck
            }
            _ => Checkpoint::new(scenario, opts.shard),
        };
        Ok(Session {
            ck,
            opts: opts.clone(),
            path,
            nodes_run: 0,
            units_run: 0,
            last_save: Instant::now(),
            nodes_at_save: 0,
        })
    }

    pub fn save(&mut self) -> Result<()> {
        if let Some(p) = &self.path {
            self.ck.save(p)?;
        }
        self.last_save = Instant::now();
        self.nodes_at_save = self.nodes_run;
        Ok(())
    }

    /// Units of `0..total` owned by this shard that are not finished yet, as
    /// `(position in shard, unit)`.
    pub fn pending_units(&self, total: usize) -> Vec<(u64, usize)> {
        let shard = self.opts.shard;
        (0..total)
            .filter(|&u| shard.owns(u))
            .enumerate()
            .map(|(k, u)| (k as u64, u))
            .filter(|&(k, _)| k >= self.ck.progress)
            .collect()
    }

    /// Number of units owned by this shard.
    pub fn owned_units(&self, total: usize) -> u64 {
        (0..total).filter(|&u| self.opts.shard.owns(u)).count() as u64
    }

    /// Marks the current unit finished and saves when due.
    pub fn finish_unit(&mut self) -> Result<Flow> {
        self.ck.progress += 1;
        self.ck.cursor.clear();
        self.ck.frontier.clear();
        self.ck.stats = SearchStats::default();
        self.units_run += 1;
        let over = self.opts.unit_budget.is_some_and(|b| self.units_run >= b);
        if over || self.due() {
            self.save()?;
        }
        Ok(if over { Flow::Stop } else { Flow::Continue })
    }

    fn due(&self) -> bool {
        self.path.is_some()
            && (self.nodes_run - self.nodes_at_save >= self.opts.policy.every_nodes
                || self.last_save.elapsed() >= self.opts.policy.every)
    }

    fn node_budget_left(&self) -> bool {
        self.opts.node_budget.is_none_or(|b| self.nodes_run < b)
    }

    /// Runs (or resumes) a completion search of `root`. Each emitted tournament
    /// is handed to `emit` along with the checkpoint, so accumulators stay in
    /// the saved state. Search totals are added to the `nodes` and `cuts` counters
    /// when the search finishes.
    pub fn search(
        &mut self,
        root: &PartialTournament,
        pruner: Pruner,
        mut emit: impl FnMut(&mut Checkpoint, Tournament) -> Result<()>,
    ) -> Result<Flow> {
        let mut search = if self.ck.frontier.is_empty() && self.ck.stats == SearchStats::default() {
            Completions::with_strategy(root, pruner, self.opts.strategy)
        } else {
            let frontier = std::mem::take(&mut self.ck.frontier);
            Completions::resume(frontier, pruner, self.opts.strategy, self.ck.stats)
        };
        let mut tick = 0u32;
        while !search.is_finished() {
            if !self.node_budget_left() {
                self.ck.frontier = search.frontier();
                self.ck.stats = search.stats();
                self.save()?;
                return Ok(Flow::Stop);
            }
            if let Some(t) = search.step() {
                emit(&mut self.ck, t)?;
            }
            self.nodes_run += 1;
            tick += 1;
            if tick == 4096 {
                tick = 0;
                if self.due() {
                    self.ck.frontier = search.frontier();
                    self.ck.stats = search.stats();
                    self.save()?;
                }
            }
        }
        let stats = search.stats();
        *self.ck.counter("nodes") += stats.nodes;
        *self.ck.counter("cuts") += stats.cuts;
        self.ck.frontier.clear();
        self.ck.stats = SearchStats::default();
        Ok(Flow::Continue)
    }

    /// Search nodes so far, including an unfinished search.
    pub fn nodes_total(&self) -> u64 {
        self.ck.get("nodes") + self.ck.stats.nodes
    }

    /// Charges work done outside [`search`](Self::search) against the node budget.
    pub fn charge(&mut self, nodes: u64) {
        self.nodes_run += nodes;
    }

    /// True when the node budget of this invocation is exhausted.
    pub fn exhausted(&self) -> bool {
        !self.node_budget_left()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shard_text() {
        let s: Shard = "2/5".parse().unwrap();
        assert_eq!(s, Shard::new(2, 5).unwrap());
        assert!(s.owns(7) && !s.owns(8));
        assert!("5/5".parse::<Shard>().is_err());
        assert!("x".parse::<Shard>().is_err());
    }

    #[test]
    fn checkpoint_round_trip() {
        let mut ck = Checkpoint::new("demo", Shard::new(1, 3).unwrap());
        ck.progress = 7;
        ck.cursor = vec![3, 1];
        ck.digest.absorb("hello");
        *ck.counter("outputs") = 12;
        ck.items.push("3:101".into());
        ck.stats = SearchStats { nodes: 10, cuts: 4, emitted: 1, rejected: 0 };
        ck.frontier.push("4:01?1?0".parse().unwrap());
        let text = ck.to_text();
        let back: Checkpoint = text.parse().unwrap();
        assert_eq!(back, ck);
        assert_eq!(back.to_text(), text);
        assert!("nonsense".parse::<Checkpoint>().is_err());
    }
}
