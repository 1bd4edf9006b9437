use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use mtsearch::harness::{ExperimentSpec, GameKind};
use mtsearch::tt::TableSize;
use mtsearch::{Algorithm, Branching, DepthSchedule, GuessPolicy, MoveOrdering, TtConfig, Value};

#[derive(Debug, Parser)]
#[command(name = "mtsearch", version, about = "Null-window game-tree search experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every algorithm on every position and check they agree.
    Compare(Common),
    /// Leaf counts of Alpha-Beta, AB-SSS* and AB-DUAL* across table sizes.
    Memsweep(Common),
    /// MTD(f) cost as the first guess moves away from the true value.
    GuessSweep {
        #[command(flatten)]
        common: Common,
        /// Offsets added to the true value, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "-50,-20,-5,0,5,20,50"
        )]
        deltas: Vec<Value>,
    },
    /// Per-ply cutoff statistics of the first algorithm listed.
    Ordering(Common),
    /// Search random trees for one where ID AB-SSS* evaluates more leaves
    /// than ID Alpha-Beta.
    Hunt {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value = "tt")]
        ordering: MoveOrdering,
    },
    /// Trace AB-SSS* on the worked example tree and check every pass.
    Pearl,
    /// The Stockman SSS* reference implementation.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// A single iterative-deepening search of one position.
    Search {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "mtdf")]
        algo: Algorithm,
        /// Index of the position within the suite.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Print every leaf evaluation, all iterations in order.
        #[arg(long)]
        trace_leaves: bool,
    },
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum OracleCommand {
    /// Run SSS* on each position and print its trace.
    Run {
        #[command(flatten)]
        common: Common,
    },
    /// Check AB-SSS* against SSS* leaf for leaf on random trees.
    Equiv {
        #[arg(long, default_value_t = 1000)]
        trees: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Branching factors are drawn from this range per tree.
        #[arg(long, default_value = "2..4")]
        branching: Branching,
        /// Depths are drawn from 1..=this per tree.
        #[arg(long, default_value_t = 6)]
        max_depth: u32,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, default_value = "othello")]
    pub game: GameKind,
    /// Position file: Othello move lines or synthetic tree lines.
    #[arg(long)]
    pub positions: Option<PathBuf>,
    /// Table sizes as log2(entries): `20`, `4..16`, `lossless`, or a comma list.
    #[arg(long = "tt-bits", visible_alias = "tt", value_parser = parse_tables)]
    pub tt: Option<Tables>,
    /// Deepest iteration.
    #[arg(long)]
    pub depth: Option<u32>,
    /// Iterative-deepening step; Othello defaults to 2 to avoid parity swings.
    #[arg(long)]
    pub step: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    pub algos: Option<Vec<Algorithm>>,
    #[arg(long)]
    pub ordering: Option<MoveOrdering>,
    /// First guess for MTD(f), MT and aspiration: a value, `prev` or `prev2`.
    #[arg(long, allow_hyphen_values = true)]
    pub first_guess: Option<GuessPolicy>,
    #[arg(long)]
    pub asp_width: Option<Value>,
    #[arg(long)]
    pub mtd_step: Option<Value>,
    /// Seed of the first generated synthetic tree.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of generated synthetic trees.
    #[arg(long)]
    pub trees: Option<usize>,
    #[arg(long)]
    pub branching: Option<Branching>,
    /// Synthetic tree height; defaults to the search depth.
    #[arg(long)]
    pub tree_depth: Option<u32>,
    #[arg(long)]
    pub corr: Option<f64>,
    /// Transposition density of synthetic trees.
    #[arg(long)]
    pub tp: Option<f64>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct Tables(pub Vec<TtConfig>);

fn parse_tables(s: &str) -> Result<Tables, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        match part.split_once("..") {
            Some((a, b)) => {
                let lo: u8 = a.parse().map_err(|e| format!("{a:?}: {e}"))?;
                let hi: u8 = b.parse().map_err(|e| format!("{b:?}: {e}"))?;
                for bits in lo..=hi {
                    out.push(table(&bits.to_string())?);
                }
            }
            None => out.push(table(part)?),
        }
    }
    if out.is_empty() {
        return Err("no table sizes given".into());
    }
    Ok(Tables(out))
}

fn table(s: &str) -> Result<TtConfig, String> {
    Ok(match s.parse::<TableSize>()? {
        TableSize::Bits(b) => TtConfig::bits(b),
        TableSize::Lossless => TtConfig::lossless(),
    })
}

impl Common {
    pub fn spec(&self) -> ExperimentSpec {
        let mut spec = ExperimentSpec::new(self.game);
        spec.positions.clone_from(&self.positions);
        if let Some(t) = &self.tt {
            spec.tt.clone_from(&t.0);
        }
        if self.depth.is_some() || self.step.is_some() {
            let depth = self.depth.unwrap_or(spec.schedule.max);
            spec.schedule = DepthSchedule::new(depth, self.step.unwrap_or(spec.schedule.step));
        }
        if let Some(a) = &self.algos {
            spec.algorithms.clone_from(a);
        }
        if let Some(o) = self.ordering {
            spec.ordering = o;
        }
        if let Some(g) = &self.first_guess {
            spec.guess = g.clone();
        }
        if let Some(w) = self.asp_width {
            spec.asp_width = w;
        }
        if let Some(s) = self.mtd_step {
            spec.mtd_step = s;
        }
        if let Some(s) = self.seed {
            spec.seed = s;
        }
        if let Some(n) = self.trees {
            spec.synth_count = n;
        }
        if let Some(b) = self.branching {
            spec.synth.branching = b;
        }
        spec.synth.depth = self.tree_depth.unwrap_or(spec.schedule.max);
        if let Some(c) = self.corr {
            spec.synth.correlation = c;
        }
        if let Some(p) = self.tp {
            spec.synth.transposition_density = p;
        }
        spec.output.clone_from(&self.out);
        spec
    }
}
