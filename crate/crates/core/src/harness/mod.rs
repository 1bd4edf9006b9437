//! Experiment runner: algorithm comparisons, table-size sweeps, first-guess
//! sweeps, move-ordering reports, the iterative-deepening dominance hunt and
//! the worked-example trace. Results are plain rows serialised to CSV.
//!
//! Positions run in parallel, each with its own context and table; rows are
//! always emitted in position order so the same spec gives the same bytes
//! (apart from wall-time columns).

mod compare;
mod guess;
mod hunt;
mod memsweep;
mod ordering_report;
mod pearl_trace;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::positions::othello_suite;
use crate::game::{
    load_positions, Branching, GameError, OthelloState, PearlTree, PositionEntry, SynthTreeConfig, SyntheticTree,
};
use crate::search::{Algorithm, DepthSchedule, GuessPolicy, IdConfig, MoveOrdering};
use crate::sss::SssError;
use crate::tt::TtConfig;
use crate::value::Value;

pub use compare::{run_compare, CompareReport, ComparisonRow, Disagreement};
pub use guess::{run_guess_sweep, GuessRow};
pub use hunt::{nondominance_hunt, replay_hunt_tree, Counterexample, HuntConfig, HuntReport, HuntRun};
pub use memsweep::{level_off, run_memsweep, MemsweepReport, MemsweepRow};
pub use ordering_report::{ordering_report, OrderingRow};
pub use pearl_trace::{trace_pearl, PearlTrace};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Sss(#[from] SssError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GameKind {
    Pearl,
    Synth,
    Othello,
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameKind::Pearl => "pearl",
            GameKind::Synth => "synth",
            GameKind::Othello => "othello",
        })
    }
}

impl FromStr for GameKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pearl" => Ok(GameKind::Pearl),
            "synth" => Ok(GameKind::Synth),
            "othello" => Ok(GameKind::Othello),
            _ => Err(format!("unknown game {s:?} (pearl, synth, othello)")),
        }
    }
}

/// Everything that determines an experiment's output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub game: GameKind,
    /// Position file; without one, Othello uses the bundled suite and
    /// synthetic runs generate `synth_count` trees from `synth`.
    pub positions: Option<PathBuf>,
    pub synth: SynthTreeConfig,
    pub synth_count: usize,
    pub algorithms: Vec<Algorithm>,
    pub schedule: DepthSchedule,
    /// Table configurations; sweeps use all of them, other runs the first.
    pub tt: Vec<TtConfig>,
    pub ordering: MoveOrdering,
    pub guess: GuessPolicy,
    pub asp_width: Value,
    pub mtd_step: Value,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn new(game: GameKind) -> ExperimentSpec {
        let depth = match game {
            GameKind::Pearl => 4,
            GameKind::Synth => 6,
            GameKind::Othello => 6,
        };
        ExperimentSpec {
            game,
            positions: None,
            synth: SynthTreeConfig::new(1, Branching::range(2, 4), depth).with_correlation(0.5),
            synth_count: 20,
            algorithms: Algorithm::COMPARED.to_vec(),
            schedule: DepthSchedule::new(depth, if game == GameKind::Othello { 2 } else { 1 }),
            tt: vec![TtConfig::default()],
            ordering: MoveOrdering::TtHistory,
            guess: GuessPolicy::Previous,
            asp_width: 8,
            mtd_step: 4,
            seed: 1,
            output: None,
        }
    }

    pub fn id_config(&self) -> IdConfig {
        IdConfig {
            schedule: self.schedule,
            guess: self.guess.clone(),
            asp_width: self.asp_width,
            mtd_step: self.mtd_step,
        }
    }

    pub fn primary_tt(&self) -> TtConfig {
        self.tt.first().copied().unwrap_or_default()
    }
}

/// A benchmark position bound to its game.
#[derive(Clone, Debug)]
pub enum Position {
    Pearl { id: String, tree: PearlTree },
    Othello { id: String, state: OthelloState },
    Synth { id: String, tree: Arc<SyntheticTree> },
}

impl Position {
    pub fn id(&self) -> &str {
        match self {
            Position::Pearl { id, .. } | Position::Othello { id, .. } | Position::Synth { id, .. } => id,
        }
    }

    pub fn synthetic(config: &SynthTreeConfig) -> Result<Position, GameError> {
        Ok(Position::Synth {
            id: format!("s{}", config.seed),
            tree: Arc::new(SyntheticTree::generate(config)?),
        })
    }
}

/// Runs `$body` with `$g` bound to the position's game and `$r` to its root.
macro_rules! on_position {
    ($pos:expr, |$g:ident, $r:ident| $body:expr) => {
        match $pos {
            $crate::harness::Position::Pearl { tree, .. } => {
                let $g = tree;
                let $r = $crate::game::Game::root(tree);
                $body
            }
            $crate::harness::Position::Othello { state, .. } => {
                let $g = &$crate::game::Othello6;
                let $r = state.clone();
                $body
            }
            $crate::harness::Position::Synth { tree, .. } => {
                let $g = &**tree;
                let $r = $crate::game::Game::root(&**tree);
                $body
            }
        }
    };
}
pub(crate) use on_position;

/// Resolves the spec's positions.
pub fn load_suite(spec: &ExperimentSpec) -> Result<Vec<Position>, HarnessError> {
    let from_file = match &spec.positions {
        Some(p) => Some(load_positions(p)?),
        None => None,
    };
    let out = match (spec.game, from_file) {
        (GameKind::Pearl, _) => vec![Position::Pearl {
            id: "pearl".into(),
            tree: PearlTree::default(),
        }],
        (GameKind::Othello, None) => othello_suite()
            .into_iter()
            .map(|(id, state)| Position::Othello { id, state })
            .collect(),
        (GameKind::Othello, Some(entries)) => {
            let mut v = Vec::new();
            for e in entries {
                match e {
                    PositionEntry::Othello { line, state, .. } => v.push(Position::Othello {
                        id: format!("L{line}"),
                        state,
                    }),
                    PositionEntry::Synthetic { line, .. } => {
                        return Err(HarnessError::Usage(format!(
                            "line {line}: synthetic entry in an Othello run"
                        )))
                    }
                }
            }
            v
        }
        (GameKind::Synth, None) => (0..spec.synth_count as u64)
            .map(|i| {
                let mut c = spec.synth.clone();
                c.seed = spec.seed.wrapping_add(i);
                Position::synthetic(&c)
            })
            .collect::<Result<_, _>>()?,
        (GameKind::Synth, Some(entries)) => {
            let mut v = Vec::new();
            for e in entries {
                match e {
                    PositionEntry::Synthetic { config, .. } => v.push(Position::synthetic(&config)?),
                    PositionEntry::Othello { line, .. } => {
                        return Err(HarnessError::Usage(format!(
                            "line {line}: Othello entry in a synthetic run"
                        )))
                    }
                }
            }
            v
        }
    };
    Ok(out)
}

pub fn write_csv<T: Serialize>(rows: &[T], out: impl Write) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string<T: Serialize>(rows: &[T]) -> Result<String, HarnessError> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}
