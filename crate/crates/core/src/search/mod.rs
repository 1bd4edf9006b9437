//! Depth-first engines sharing one context: Alpha-Beta, MT, NegaScout and
//! iterative deepening.
//!
//! Internally everything is negamax: a node's value is seen from the side to
//! move. The public entry points take and return absolute values and convert
//! at the root, so a MIN-rooted window `(a, b)` becomes `(-b, -a)`.

mod alphabeta;
mod id;
mod negascout;
mod ordering;

use std::collections::HashSet;
use std::fmt;

use crate::game::{Game, Move};
use crate::tt::{BoundKind, TranspositionTable, TtConfig, TERMINAL_DEPTH};
use crate::value::{Side, Value, VALUE_INF};

pub use id::{Algorithm, DepthSchedule, GuessPolicy, IdConfig, IdResult, IterationResult};
pub use ordering::MoveOrdering;

/// Cutoff statistics for one ply (distance from the search root).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PlyStats {
    pub cut_nodes: u64,
    /// Cut nodes where the first move searched produced the cutoff.
    pub first_move_cutoffs: u64,
    pub moves_tried_at_cut: u64,
}

impl PlyStats {
    pub fn first_move_rate(&self) -> f64 {
        if self.cut_nodes == 0 {
            return 0.0;
        }
        self.first_move_cutoffs as f64 / self.cut_nodes as f64
    }

    pub fn mean_moves_at_cut(&self) -> f64 {
        if self.cut_nodes == 0 {
            return 0.0;
        }
        self.moves_tried_at_cut as f64 / self.cut_nodes as f64
    }

    pub fn add(&mut self, o: &PlyStats) {
        self.cut_nodes += o.cut_nodes;
        self.first_move_cutoffs += o.first_move_cutoffs;
        self.moves_tried_at_cut += o.moves_tried_at_cut;
    }
}

/// A leaf evaluation: state key and absolute value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeafEval {
    pub key: u64,
    pub value: Value,
}

/// A node entry: state key and remaining depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Visit {
    pub key: u64,
    pub depth: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub leaf_evals: u64,
    pub interior_visits: u64,
    /// Nodes answered from stored bounds without being searched.
    pub transposition_hits: u64,
    pub mt_calls: u64,
    pub plies: Vec<PlyStats>,
    pub leaf_trace: Option<Vec<LeafEval>>,
    pub visit_trace: Option<Vec<Visit>>,
    pub distinct: Option<HashSet<u64>>,
}

impl SearchStats {
    pub fn total_nodes(&self) -> u64 {
        self.leaf_evals + self.interior_visits + self.transposition_hits
    }

    pub fn distinct_states(&self) -> Option<u64> {
        self.distinct.as_ref().map(|d| d.len() as u64)
    }

    fn ply_mut(&mut self, ply: usize) -> &mut PlyStats {
        if self.plies.len() <= ply {
            self.plies.resize(ply + 1, PlyStats::default());
        }
        &mut self.plies[ply]
    }
}

/// One search's working state: the game, its table, history scores and
/// counters. Distinct searches use distinct contexts.
pub struct SearchContext<'g, G: Game> {
    game: &'g G,
    tt: TranspositionTable,
    history: Vec<u64>,
    ordering: MoveOrdering,
    pub stats: SearchStats,
}

impl<G: Game> Clone for SearchContext<'_, G> {
    fn clone(&self) -> Self {
        SearchContext {
            game: self.game,
            tt: self.tt.clone(),
            history: self.history.clone(),
            ordering: self.ordering,
            stats: self.stats.clone(),
        }
    }
}

impl<G: Game> fmt::Debug for SearchContext<'_, G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SearchContext")
            .field("tt", &self.tt.config())
            .field("ordering", &self.ordering)
            .field("stats", &self.stats)
            .finish_non_exhaustive()
    }
}

pub(crate) enum Entered {
    Resolved(Value),
    Expand { key: u64, moves: Vec<Move> },
}

impl<'g, G: Game> SearchContext<'g, G> {
    pub fn new(game: &'g G, tt: TtConfig) -> Self {
        SearchContext {
            game,
            tt: TranspositionTable::new(tt),
            history: vec![0; 2 * game.history_slots()],
            ordering: MoveOrdering::default(),
            stats: SearchStats::default(),
        }
    }

    pub fn with_ordering(mut self, ordering: MoveOrdering) -> Self {
        self.ordering = ordering;
        self
    }

    pub fn with_leaf_trace(mut self) -> Self {
        self.stats.leaf_trace = Some(Vec::new());
        self
    }

    pub fn with_visit_trace(mut self) -> Self {
        self.stats.visit_trace = Some(Vec::new());
        self
    }

    pub fn with_distinct_count(mut self) -> Self {
        self.stats.distinct = Some(HashSet::new());
        self
    }

    pub fn game(&self) -> &'g G {
        self.game
    }

    pub fn ordering(&self) -> MoveOrdering {
        self.ordering
    }

    pub fn tt(&self) -> &TranspositionTable {
        &self.tt
    }

    pub fn tt_mut(&mut self) -> &mut TranspositionTable {
        &mut self.tt
    }

    pub fn history_score(&self, side: Side, slot: usize) -> u64 {
        self.history[side.index() * self.game.history_slots() + slot]
    }

    pub fn halve_history(&mut self) {
        self.history.iter_mut().for_each(|h| *h /= 2);
    }

    pub fn clear_history(&mut self) {
        self.history.iter_mut().for_each(|h| *h = 0);
    }

    /// Resets counters and traces, keeping the table and history.
    pub fn reset_stats(&mut self) {
        let fresh = SearchStats {
            leaf_trace: self.stats.leaf_trace.as_ref().map(|_| Vec::new()),
            visit_trace: self.stats.visit_trace.as_ref().map(|_| Vec::new()),
            distinct: self.stats.distinct.as_ref().map(|_| HashSet::new()),
            ..SearchStats::default()
        };
        self.stats = fresh;
    }

    /// Stored bounds for `s` in absolute terms, with the entry's depth.
    pub fn absolute_bounds(&self, s: &G::State) -> Option<(Value, Value, u32)> {
        let e = self.tt.peek(self.game.state_key(s))?;
        Some(match self.game.side_to_move(s) {
            Side::Max => (e.lower, e.upper, e.depth),
            Side::Min => (-e.upper, -e.lower, e.depth),
        })
    }

    /// Best move recorded for `s`, if it is still legal.
    pub fn tt_move(&self, s: &G::State) -> Option<Move> {
        let ord = self.tt.peek(self.game.state_key(s))?.best_move?;
        self.game.legal_moves(s).into_iter().find(|m| m.ordinal == ord)
    }

    fn relative(&self, s: &G::State, v: Value) -> Value {
        v * self.game.side_to_move(s).sign()
    }

    pub(crate) fn child(&self, s: &G::State, m: Move) -> G::State {
        self.game
            .apply_move(s, m)
            .expect("move generator produced an illegal move")
    }

    /// Common node prologue: trace, probe, leaf handling, move generation.
    pub(crate) fn enter(&mut self, s: &G::State, depth: u32, alpha: Value, beta: Value) -> Entered {
        let key = self.game.state_key(s);
        if let Some(t) = &mut self.stats.visit_trace {
            t.push(Visit { key, depth });
        }
        if let Some(d) = &mut self.stats.distinct {
            d.insert(key);
        }
        let entry = self.tt.probe(key);
        if let Some(e) = entry.filter(|e| e.depth >= depth) {
            let hit = if e.lower >= beta {
                Some(e.lower)
            } else if e.upper <= alpha {
                Some(e.upper)
            } else if e.lower == e.upper {
                Some(e.lower)
            } else {
                None
            };
            if let Some(v) = hit {
                self.stats.transposition_hits += 1;
                return Entered::Resolved(v);
            }
        }
        if depth == 0 {
            return Entered::Resolved(self.leaf(key, s, 0));
        }
        let mut moves = self.game.legal_moves(s);
        if moves.is_empty() {
            return Entered::Resolved(self.leaf(key, s, TERMINAL_DEPTH));
        }
        self.stats.interior_visits += 1;
        self.order_moves(s, &mut moves, entry.and_then(|e| e.best_move));
        Entered::Expand { key, moves }
    }

    fn leaf(&mut self, key: u64, s: &G::State, depth: u32) -> Value {
        let value = self.game.evaluate(s);
        debug_assert!(value.abs() < VALUE_INF);
        self.stats.leaf_evals += 1;
        if let Some(t) = &mut self.stats.leaf_trace {
            t.push(LeafEval { key, value });
        }
        let rel = self.relative(s, value);
        self.tt.store(key, depth, BoundKind::Exact, rel, None);
        rel
    }

    /// Stores a search result with the fail-soft classification against the
    /// window the node was entered with.
    pub(crate) fn store_result(
        &mut self,
        key: u64,
        depth: u32,
        alpha: Value,
        beta: Value,
        g: Value,
        best: Option<Move>,
    ) {
        let kind = if g <= alpha {
            BoundKind::Upper
        } else if g >= beta {
            BoundKind::Lower
        } else {
            BoundKind::Exact
        };
        // A fail-low node has no meaningful best move; keep the older one.
        let best = match kind {
            BoundKind::Upper => None,
            _ => best.map(|m| m.ordinal),
        };
        self.tt.store(key, depth, kind, g, best);
    }

    pub(crate) fn record_cutoff(&mut self, s: &G::State, m: Move, depth: u32, ply: usize, index: usize) {
        let p = self.stats.ply_mut(ply);
        p.cut_nodes += 1;
        if index == 0 {
            p.first_move_cutoffs += 1;
        }
        p.moves_tried_at_cut += index as u64 + 1;
        let slot = self.game.side_to_move(s).index() * self.game.history_slots() + self.game.history_slot(s, m);
        self.history[slot] = self.history[slot].saturating_add(1u64 << depth.min(40));
    }
}
