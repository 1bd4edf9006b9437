use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SearchContext;
use crate::game::{Game, Move};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveOrdering {
    /// The game's left-to-right order, always.
    Static,
    /// Stored best move first, the rest static.
    TtOnly,
    /// Stored best move first, the rest by descending history score.
    #[default]
    TtHistory,
}

impl fmt::Display for MoveOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveOrdering::Static => "static",
            MoveOrdering::TtOnly => "tt",
            MoveOrdering::TtHistory => "tt-history",
        })
    }
}

impl FromStr for MoveOrdering {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "static" => Ok(MoveOrdering::Static),
            "tt" => Ok(MoveOrdering::TtOnly),
            "tt-history" | "history" => Ok(MoveOrdering::TtHistory),
            _ => Err(format!("unknown ordering {s:?} (static, tt, tt-history)")),
        }
    }
}

impl<G: Game> SearchContext<'_, G> {
    /// Reorders `moves` (given in static order) in place. A stored move that
    /// is not among `moves` is ignored.
    pub fn order_moves(&self, s: &G::State, moves: &mut [Move], tt_move: Option<u16>) {
        if self.ordering == MoveOrdering::Static || moves.len() < 2 {
            return;
        }
        let mut rest = 0;
        if let Some(i) = tt_move.and_then(|ord| moves.iter().position(|m| m.ordinal == ord)) {
            moves[..=i].rotate_right(1);
            rest = 1;
        }
        if self.ordering == MoveOrdering::TtHistory {
            let side = self.game.side_to_move(s);
            // Stable sort keeps ordinal order among equal scores.
            moves[rest..].sort_by_key(|&m| std::cmp::Reverse(self.history_score(side, self.game.history_slot(s, m))));
        }
    }
}
