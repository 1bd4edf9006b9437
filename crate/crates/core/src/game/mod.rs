//! The game abstraction every search runs over, plus three concrete games.

pub mod othello;
pub mod pearl;
pub mod positions;
pub mod synthetic;

use std::fmt;

use thiserror::Error;

use crate::value::{Side, Value};

pub use othello::{Othello6, OthelloState};
pub use pearl::{PearlNode, PearlTree};
pub use positions::{load_positions, parse_positions, PositionEntry};
pub use synthetic::{Branching, SynthNodeId, SynthTreeConfig, SyntheticTree};

/// A move, identified by its position in the parent's static move list.
///
/// `code` is game-specific content (a square for Othello, a child index for
/// explicit trees) used for naming and history indexing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub ordinal: u16,
    pub code: u32,
}

impl Move {
    pub fn new(ordinal: u16, code: u32) -> Move {
        Move { ordinal, code }
    }
}

#[derive(Debug, Error)]
pub enum GameError {
    #[error("illegal move {mv:?} in state {state}")]
    IllegalMove { mv: Move, state: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A two-player zero-sum game with perfect information.
///
/// All methods are pure functions of the state. Evaluations are absolute
/// (from MAX's point of view); the search converts them to negamax form.
pub trait Game {
    type State: Clone + fmt::Debug;

    fn root(&self) -> Self::State;

    /// Moves in static left-to-right order; empty iff the state is terminal.
    fn legal_moves(&self, s: &Self::State) -> Vec<Move>;

    fn apply_move(&self, s: &Self::State, m: Move) -> Result<Self::State, GameError>;

    fn evaluate(&self, s: &Self::State) -> Value;

    fn state_key(&self, s: &Self::State) -> u64;

    fn side_to_move(&self, s: &Self::State) -> Side;

    fn ply(&self, s: &Self::State) -> u32;

    fn is_terminal(&self, s: &Self::State) -> bool {
        self.legal_moves(s).is_empty()
    }

    /// Inclusive range every evaluation falls in, when known.
    fn value_bounds(&self) -> Option<(Value, Value)> {
        None
    }

    /// Number of distinct history slots per side.
    fn history_slots(&self) -> usize;

    /// History slot a move is credited to.
    fn history_slot(&self, s: &Self::State, m: Move) -> usize;

    /// Human-readable node name used in traces.
    fn label(&self, s: &Self::State) -> String {
        format!("{:016x}", self.state_key(s))
    }

    fn move_name(&self, _s: &Self::State, m: Move) -> String {
        format!("#{}", m.ordinal)
    }
}

/// Splitmix64 finaliser, used wherever a cheap deterministic hash is needed.
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
