use super::{Entered, SearchContext};
use crate::game::Game;
use crate::value::{Side, Value, Window, VALUE_INF};

impl<G: Game> SearchContext<'_, G> {
    /// Fail-soft Alpha-Beta with storage.
    ///
    /// With `f` the minimax value at horizon `depth`: a result strictly inside
    /// the window equals `f`, a result `<= alpha` is an upper bound and a
    /// result `>= beta` a lower bound.
    ///
    /// # Panics
    ///
    /// If `window.alpha >= window.beta`.
    pub fn alpha_beta(&mut self, s: &G::State, depth: u32, window: Window) -> Value {
        assert!(window.is_valid(), "empty window {window:?}");
        match self.game.side_to_move(s) {
            Side::Max => self.ab_node(s, depth, window.alpha, window.beta, 0),
            Side::Min => -self.ab_node(s, depth, -window.beta, -window.alpha, 0),
        }
    }

    /// MT: the null-window test `f >= gamma?`, equivalent to
    /// `alpha_beta(s, depth, (gamma - 1, gamma))` node for node.
    ///
    /// # Panics
    ///
    /// If `gamma` lies outside `(-VALUE_INF, VALUE_INF]`.
    pub fn mt(&mut self, s: &G::State, depth: u32, gamma: Value) -> Value {
        assert!(gamma > -VALUE_INF && gamma <= VALUE_INF, "gamma {gamma} out of range");
        self.stats.mt_calls += 1;
        match self.game.side_to_move(s) {
            Side::Max => self.mt_node(s, depth, gamma, 0),
            Side::Min => -self.mt_node(s, depth, -gamma + 1, 0),
        }
    }

    fn ab_node(&mut self, s: &G::State, depth: u32, alpha: Value, beta: Value, ply: usize) -> Value {
        let (key, moves) = match self.enter(s, depth, alpha, beta) {
            Entered::Resolved(v) => return v,
            Entered::Expand { key, moves } => (key, moves),
        };
        let mut g = -VALUE_INF;
        let mut a = alpha;
        let mut best = None;
        for (i, &m) in moves.iter().enumerate() {
            let child = self.child(s, m);
            let v = -self.ab_node(&child, depth - 1, -beta, -a, ply + 1);
            if v > g {
                g = v;
                best = Some(m);
            }
            a = a.max(g);
            if g >= beta {
                self.record_cutoff(s, m, depth, ply, i);
                break;
            }
        }
        self.store_result(key, depth, alpha, beta, g, best);
        g
    }

    fn mt_node(&mut self, s: &G::State, depth: u32, gamma: Value, ply: usize) -> Value {
        let (key, moves) = match self.enter(s, depth, gamma - 1, gamma) {
            Entered::Resolved(v) => return v,
            Entered::Expand { key, moves } => (key, moves),
        };
        let mut g = -VALUE_INF;
        let mut best = None;
        for (i, &m) in moves.iter().enumerate() {
            let child = self.child(s, m);
            let v = -self.mt_node(&child, depth - 1, -gamma + 1, ply + 1);
            if v > g {
                g = v;
                best = Some(m);
            }
            if g >= gamma {
                self.record_cutoff(s, m, depth, ply, i);
                break;
            }
        }
        self.store_result(key, depth, gamma - 1, gamma, g, best);
        g
    }
}
