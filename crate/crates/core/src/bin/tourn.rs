use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use dichromatic::completions::{BranchStrategy, Completions, Pruner};
use dichromatic::pipeline::{self, RunOptions, Shard};
use dichromatic::{coloring, isomorphism, transitive, PartialTournament, Tournament};

#[derive(Parser)]
#[command(name = "tourn", version, about = "Acyclic colourings of small tournaments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print every tournament on n vertices up to isomorphism
    Gen {
        n: usize,
        /// Keep only tournaments with this dichromatic number
        #[arg(long)]
        chi: Option<usize>,
        /// Keep only tournaments without a transitive 5-set
        #[arg(long)]
        tt5_free: bool,
    },
    /// Print the number of tournaments on 1..=8 vertices
    Census {
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
    /// Dichromatic number and a witness colouring for each line of a file
    Chi { file: PathBuf },
    /// Stream the completions of each partial tournament in a file
    Complete {
        file: PathBuf,
        /// chi3, chi4, tt5x2, chi3+tt5x2, ...
        #[arg(long)]
        prune: Pruner,
        #[arg(long)]
        limit: Option<usize>,
        /// Print node and cut counts and wall time to stderr
        #[arg(long)]
        stats: bool,
        #[arg(long, default_value = "largest-set")]
        strategy: String,
    },
    /// Run a verification scenario (exit 0 verified, 2 refuted, 3 partial)
    Verify {
        scenario: String,
        #[arg(long, default_value = "0/1")]
        shard: Shard,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        resume: bool,
        /// Directory for certificate and list files
        #[arg(long)]
        output: Option<PathBuf>,
        /// Stop (with a checkpoint) after this many search nodes
        #[arg(long)]
        node_budget: Option<u64>,
        /// Stop (with a checkpoint) after this many finished work units
        #[arg(long)]
        unit_budget: Option<u64>,
        /// Decide pair compatibility over every split of the glue vertices
        #[arg(long)]
        unrestricted_split: bool,
    },
    /// List the scenario ids
    Scenarios,
}

fn strategy(s: &str) -> anyhow::Result<BranchStrategy> {
    Ok(match s {
        "lex" => BranchStrategy::Lexicographic,
        "largest-set" => BranchStrategy::LargestTransitiveSet,
        _ => bail!("unknown strategy {s:?} (lex, largest-set)"),
    })
}

fn lines(file: &PathBuf) -> anyhow::Result<Vec<String>> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    Ok(text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from).collect())
}

fn main() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    let mut out = BufWriter::new(io::stdout().lock());
    match cli.cmd {
        Cmd::Gen { n, chi, tt5_free } => {
            for t in isomorphism::enumerate_tournaments(n)? {
                if chi.is_some_and(|k| coloring::dichromatic_number(&t) != k) {
                    continue;
                }
                if tt5_free && transitive::contains_tt(&t, 5).is_some() {
                    continue;
                }
                writeln!(out, "{t}")?;
            }
        }
        Cmd::Census { max } => {
            for n in 1..=max {
                writeln!(out, "n={n} count={}", isomorphism::census(n)?.len())?;
            }
        }
        Cmd::Chi { file } => {
            for line in lines(&file)? {
                let t: Tournament = line.parse().with_context(|| format!("parsing {line:?}"))?;
                let (k, w) = coloring::dichromatic_witness(&t);
                let classes: Vec<String> = w.classes().iter().map(|c| c.to_string()).collect();
                writeln!(out, "{t} chi={k} classes={}", classes.join(","))?;
            }
        }
        Cmd::Complete { file, prune, limit, stats, strategy: s } => {
            let strategy = strategy(&s)?;
            for line in lines(&file)? {
                let p: PartialTournament = line.parse().with_context(|| format!("parsing {line:?}"))?;
                let start = Instant::now();
                let mut search = Completions::with_strategy(&p, prune, strategy);
                let mut emitted = 0;
                while limit.is_none_or(|l| emitted < l) {
                    let Some(t) = search.next() else { break };
                    writeln!(out, "{t}")?;
                    emitted += 1;
                }
                if stats {
                    out.flush()?;
                    let st = search.stats();
                    eprintln!(
                        "input={p} nodes={} cuts={} emitted={} finished={} wall_time_ms={}",
                        st.nodes,
                        st.cuts,
                        st.emitted,
                        search.is_finished(),
                        start.elapsed().as_millis()
                    );
                }
            }
        }
        Cmd::Verify { scenario, shard, checkpoint, resume, output, node_budget, unit_budget, unrestricted_split } => {
            if resume && checkpoint.is_none() {
                bail!("--resume needs --checkpoint");
            }
            let opts = RunOptions {
                shard,
                checkpoint_dir: checkpoint,
                resume,
                output_dir: output,
                node_budget,
                unit_budget,
                unrestricted_split,
                ..RunOptions::default()
            };
            let report = pipeline::run(&scenario, &opts)?;
            write!(out, "{}", report.render())?;
            out.flush()?;
            return Ok(ExitCode::from(report.status().exit_code()));
        }
        Cmd::Scenarios => {
            for id in pipeline::SCENARIOS {
                writeln!(out, "{id}")?;
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}
