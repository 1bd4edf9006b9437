//! Scores, sides and search windows.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer score. Absolute values are always from MAX's point of view.
pub type Value = i32;

/// Finite stand-in for infinity. Every evaluation lies strictly inside
/// `(-VALUE_INF, VALUE_INF)`, and `VALUE_INF + 1` as well as `-VALUE_INF - 1`
/// are still representable.
pub const VALUE_INF: Value = i32::MAX / 2 - 1;

/// The player to move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Max,
    Min,
}

impl Side {
    pub fn opponent(self) -> Side {
        match self {
            Side::Max => Side::Min,
            Side::Min => Side::Max,
        }
    }

    /// +1 for MAX, -1 for MIN; converts absolute scores into negamax scores.
    pub fn sign(self) -> Value {
        match self {
            Side::Max => 1,
            Side::Min => -1,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Side::Max => 0,
            Side::Min => 1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Max => f.write_str("MAX"),
            Side::Min => f.write_str("MIN"),
        }
    }
}

/// An open search window `(alpha, beta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub alpha: Value,
    pub beta: Value,
}

impl Window {
    pub const FULL: Window = Window {
        alpha: -VALUE_INF,
        beta: VALUE_INF,
    };

    pub fn new(alpha: Value, beta: Value) -> Window {
        Window { alpha, beta }
    }

    /// The window `(gamma - 1, gamma)` used by a test against `gamma`.
    pub fn null(gamma: Value) -> Window {
        Window {
            alpha: gamma - 1,
            beta: gamma,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.alpha < self.beta
    }

    /// The same window seen from the other side of the board.
    pub fn negated(self) -> Window {
        Window {
            alpha: -self.beta,
            beta: -self.alpha,
        }
    }
}

/// Clamps a guess into the range accepted as a null-window test value.
pub fn clamp_gamma(v: Value) -> Value {
    v.clamp(-VALUE_INF + 1, VALUE_INF)
}
