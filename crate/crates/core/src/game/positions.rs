//! Benchmark position files.
//!
//! UTF-8 text, one position per line, `#` starts a comment. A line is either
//! an Othello move sequence replayed from the initial board (`b3 c2 -- d5`)
//! or a synthetic tree description (`seed=1 w=2..4 d=6 corr=0.5 tp=0`).

use std::path::Path;

use super::othello::{Othello6, OthelloState};
use super::synthetic::SynthTreeConfig;
use super::GameError;

#[derive(Clone, Debug)]
pub enum PositionEntry {
    Othello {
        line: usize,
        moves: String,
        state: OthelloState,
    },
    Synthetic {
        line: usize,
        config: SynthTreeConfig,
    },
}

impl PositionEntry {
    pub fn line(&self) -> usize {
        match self {
            PositionEntry::Othello { line, .. } | PositionEntry::Synthetic { line, .. } => *line,
        }
    }
}

pub fn parse_positions(text: &str) -> Result<Vec<PositionEntry>, GameError> {
    let game = Othello6;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if content.contains('=') {
            let config = SynthTreeConfig::parse_line(content).map_err(|msg| GameError::Parse { line, msg })?;
            out.push(PositionEntry::Synthetic { line, config });
        } else {
            let state = game
                .replay(content.split_whitespace())
                .map_err(|msg| GameError::Parse { line, msg })?;
            out.push(PositionEntry::Othello {
                line,
                moves: content.to_string(),
                state,
            });
        }
    }
    Ok(out)
}

pub fn load_positions(path: impl AsRef<Path>) -> Result<Vec<PositionEntry>, GameError> {
    let text = std::fs::read_to_string(path)?;
    parse_positions(&text)
}

/// The bundled 20-position 6x6 Othello suite.
pub const OTHELLO_SUITE: &str = include_str!("../../data/othello6_suite.txt");

pub fn othello_suite() -> Vec<(String, OthelloState)> {
    parse_positions(OTHELLO_SUITE)
        .expect("bundled suite parses")
        .into_iter()
        .filter_map(|e| match e {
            PositionEntry::Othello { line, state, .. } => Some((format!("L{line}"), state)),
            PositionEntry::Synthetic { .. } => None,
        })
        .collect()
}
