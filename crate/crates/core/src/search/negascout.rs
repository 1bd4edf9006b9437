use super::{Entered, SearchContext};
use crate::game::Game;
use crate::value::{Side, Value, Window, VALUE_INF};

impl<G: Game> SearchContext<'_, G> {
    /// Fail-soft NegaScout: the first move gets the full window, later moves a
    /// null window, re-searched when they fail high inside the window.
    ///
    /// # Panics
    ///
    /// If `window.alpha >= window.beta`.
    pub fn negascout(&mut self, s: &G::State, depth: u32, window: Window) -> Value {
        assert!(window.is_valid(), "empty window {window:?}");
        match self.game.side_to_move(s) {
            Side::Max => self.ns_node(s, depth, window.alpha, window.beta, 0),
            Side::Min => -self.ns_node(s, depth, -window.beta, -window.alpha, 0),
        }
    }

    /// NegaScout inside `center ± width`; on failure, re-search the side that
    /// failed with the returned bound as the new edge. Returns the value and
    /// the number of re-searches.
    ///
    /// # Panics
    ///
    /// If `width <= 0`.
    pub fn aspiration_negascout(&mut self, s: &G::State, depth: u32, center: Value, width: Value) -> (Value, u32) {
        assert!(width > 0, "aspiration width must be positive");
        let lo = (center.saturating_sub(width)).max(-VALUE_INF);
        let hi = (center.saturating_add(width)).min(VALUE_INF);
        let mut w = Window::new(lo, hi);
        if !w.is_valid() {
            w = Window::FULL;
        }
        let mut researches = 0;
        loop {
            let g = self.negascout(s, depth, w);
            if g > w.alpha && g < w.beta || w == Window::FULL {
                return (g, researches);
            }
            researches += 1;
            w = if researches > 1 {
                // Only reachable when stored bounds from other depths disagree.
                Window::FULL
            } else if g <= w.alpha {
                Window::new(-VALUE_INF, g + 1)
            } else {
                Window::new(g - 1, VALUE_INF)
            };
        }
    }

    fn ns_node(&mut self, s: &G::State, depth: u32, alpha: Value, beta: Value, ply: usize) -> Value {
        let (key, moves) = match self.enter(s, depth, alpha, beta) {
            Entered::Resolved(v) => return v,
            Entered::Expand { key, moves } => (key, moves),
        };
        let mut g = -VALUE_INF;
        let mut a = alpha;
        let mut b = beta;
        let mut best = None;
        for (i, &m) in moves.iter().enumerate() {
            let child = self.child(s, m);
            let mut v = -self.ns_node(&child, depth - 1, -b, -a, ply + 1);
            // Leaves return exact scores, so a depth-1 null-window result is final.
            if i > 0 && v > a && v < beta && depth > 1 {
                v = -self.ns_node(&child, depth - 1, -beta, -v, ply + 1);
            }
            if v > g {
                g = v;
                best = Some(m);
            }
            a = a.max(g);
            if g >= beta {
                self.record_cutoff(s, m, depth, ply, i);
                break;
            }
            b = a + 1;
        }
        self.store_result(key, depth, alpha, beta, g, best);
        g
    }
}
