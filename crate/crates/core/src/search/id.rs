use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::{PlyStats, SearchContext};
use crate::game::{Game, Move};
use crate::mtd;
use crate::tt::TtStats;
use crate::value::{clamp_gamma, Value, Window};

/// Root search procedures selectable by tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    AlphaBeta,
    NegaScout,
    AspNegaScout,
    /// A single null-window test at the guess; the result is only a bound.
    Mt,
    Sss,
    Dual,
    MtdF,
    MtdBi,
    MtdStep,
    /// Returns a proven best move; the reported value is only a bound.
    MtdBest,
}

impl Algorithm {
    /// The seven algorithms that must agree on every value.
    pub const COMPARED: [Algorithm; 7] = [
        Algorithm::AlphaBeta,
        Algorithm::AspNegaScout,
        Algorithm::Sss,
        Algorithm::Dual,
        Algorithm::MtdF,
        Algorithm::MtdBi,
        Algorithm::MtdStep,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::AlphaBeta => "ab",
            Algorithm::NegaScout => "nega",
            Algorithm::AspNegaScout => "asp-nega",
            Algorithm::Mt => "mt",
            Algorithm::Sss => "sss",
            Algorithm::Dual => "dual",
            Algorithm::MtdF => "mtdf",
            Algorithm::MtdBi => "mtdbi",
            Algorithm::MtdStep => "mtdstep",
            Algorithm::MtdBest => "mtdbest",
        }
    }

    /// Whether the algorithm always returns the exact minimax value.
    pub fn is_exact(self) -> bool {
        !matches!(self, Algorithm::Mt | Algorithm::MtdBest)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        const ALL: [Algorithm; 10] = [
            Algorithm::AlphaBeta,
            Algorithm::NegaScout,
            Algorithm::AspNegaScout,
            Algorithm::Mt,
            Algorithm::Sss,
            Algorithm::Dual,
            Algorithm::MtdF,
            Algorithm::MtdBi,
            Algorithm::MtdStep,
            Algorithm::MtdBest,
        ];
        ALL.into_iter()
            .find(|a| a.tag() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

/// Where an iteration's first guess comes from. The very first iteration
/// guesses the static evaluation of the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum GuessPolicy {
    Fixed(Value),
    #[default]
    Previous,
    /// The value from two iterations back, for scores that oscillate with
    /// depth parity.
    TwoBack,
    /// An explicit guess per depth; depths not listed fall back to `Previous`.
    PerDepth(Vec<(u32, Value)>),
}

impl fmt::Display for GuessPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GuessPolicy::Fixed(v) => write!(f, "{v}"),
            GuessPolicy::Previous => f.write_str("prev"),
            GuessPolicy::TwoBack => f.write_str("prev2"),
            GuessPolicy::PerDepth(_) => f.write_str("per-depth"),
        }
    }
}

impl FromStr for GuessPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prev" => Ok(GuessPolicy::Previous),
            "prev2" => Ok(GuessPolicy::TwoBack),
            _ => s
                .parse::<Value>()
                .map(GuessPolicy::Fixed)
                .map_err(|_| format!("first guess must be an integer, prev or prev2, got {s:?}")),
        }
    }
}

/// Depths `start, start + step, ..., max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthSchedule {
    pub start: u32,
    pub step: u32,
    pub max: u32,
}

impl DepthSchedule {
    /// Ends at `max`, starting at the smallest depth of the same residue.
    pub fn new(max: u32, step: u32) -> DepthSchedule {
        assert!(max >= 1 && step >= 1, "depth and step must be positive");
        DepthSchedule {
            start: (max - 1) % step + 1,
            step,
            max,
        }
    }

    pub fn fixed(depth: u32) -> DepthSchedule {
        DepthSchedule {
            start: depth,
            step: 1,
            max: depth,
        }
    }

    pub fn depths(&self) -> Vec<u32> {
        (self.start..=self.max).step_by(self.step as usize).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdConfig {
    pub schedule: DepthSchedule,
    pub guess: GuessPolicy,
    pub asp_width: Value,
    pub mtd_step: Value,
}

impl IdConfig {
    pub fn new(schedule: DepthSchedule) -> IdConfig {
        IdConfig {
            schedule,
            guess: GuessPolicy::Previous,
            asp_width: 8,
            mtd_step: 4,
        }
    }

    pub fn with_guess(mut self, g: GuessPolicy) -> Self {
        self.guess = g;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterationResult {
    pub depth: u32,
    pub value: Value,
    pub guess: Value,
    pub best_move: Option<Move>,
    /// Leaf evaluations over this and all earlier iterations.
    pub leaf_evals: u64,
    /// Nodes over this and all earlier iterations.
    pub total_nodes: u64,
    /// Distinct states visited so far, when the context counts them.
    pub distinct_states: Option<u64>,
    pub mt_calls: u64,
    pub researches: u32,
    /// Cutoff statistics of this iteration alone.
    pub plies: Vec<PlyStats>,
    /// Table counters at the end of the iteration.
    pub tt: TtStats,
    /// Wall time since the first iteration started.
    pub wall: Duration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdResult {
    pub algorithm: Algorithm,
    pub iterations: Vec<IterationResult>,
}

impl IdResult {
    pub fn last(&self) -> &IterationResult {
        self.iterations.last().expect("at least one iteration")
    }

    pub fn value(&self) -> Value {
        self.last().value
    }
}

impl<G: Game> SearchContext<'_, G> {
    /// One fixed-depth root search. Returns the value, the number of
    /// aspiration re-searches, and the best move for algorithms that
    /// determine one directly.
    pub fn search_once(
        &mut self,
        s: &G::State,
        depth: u32,
        algorithm: Algorithm,
        guess: Value,
        cfg: &IdConfig,
    ) -> (Value, u32, Option<Move>) {
        match algorithm {
            Algorithm::AlphaBeta => (self.alpha_beta(s, depth, Window::FULL), 0, None),
            Algorithm::NegaScout => (self.negascout(s, depth, Window::FULL), 0, None),
            Algorithm::AspNegaScout => {
                let (v, r) = self.aspiration_negascout(s, depth, guess, cfg.asp_width);
                (v, r, None)
            }
            Algorithm::Mt => (self.mt(s, depth, clamp_gamma(guess)), 0, None),
            Algorithm::Sss => (mtd::mtd_plus_inf(self, s, depth).value, 0, None),
            Algorithm::Dual => (mtd::mtd_minus_inf(self, s, depth).value, 0, None),
            Algorithm::MtdF => (mtd::mtd_f(self, s, depth, guess).value, 0, None),
            Algorithm::MtdBi => (mtd::mtd_bi(self, s, depth).value, 0, None),
            Algorithm::MtdStep => (mtd::mtd_step(self, s, depth, cfg.mtd_step).value, 0, None),
            Algorithm::MtdBest => match mtd::mtd_best(self, s, depth, guess) {
                Ok(r) => (r.guaranteed(self.game.side_to_move(s)), 0, Some(r.best)),
                Err(_) => (self.game.evaluate(s), 0, None),
            },
        }
    }

    /// Iterative deepening over `cfg.schedule`. The table persists across
    /// iterations; history scores are halved between them.
    pub fn iterative_deepen(&mut self, s: &G::State, algorithm: Algorithm, cfg: &IdConfig) -> IdResult {
        let started = Instant::now();
        let mut iterations: Vec<IterationResult> = Vec::new();
        for (k, depth) in cfg.schedule.depths().into_iter().enumerate() {
            if k > 0 {
                self.halve_history();
            }
            self.stats.plies.clear();
            let calls_before = self.stats.mt_calls;
            let guess = self.pick_guess(s, depth, &iterations, &cfg.guess);
            let (value, researches, best) = self.search_once(s, depth, algorithm, guess, cfg);
            iterations.push(IterationResult {
                depth,
                value,
                guess,
                best_move: best.or_else(|| self.tt_move(s)),
                leaf_evals: self.stats.leaf_evals,
                total_nodes: self.stats.total_nodes(),
                distinct_states: self.stats.distinct_states(),
                mt_calls: self.stats.mt_calls - calls_before,
                researches,
                plies: self.stats.plies.clone(),
                tt: self.tt.stats(),
                wall: started.elapsed(),
            });
        }
        IdResult { algorithm, iterations }
    }

    fn pick_guess(&self, s: &G::State, depth: u32, done: &[IterationResult], p: &GuessPolicy) -> Value {
        let back = |n: usize| done.len().checked_sub(n).map(|i| done[i].value);
        let prev = || back(1).unwrap_or_else(|| self.game.evaluate(s));
        match p {
            GuessPolicy::Fixed(v) => *v,
            GuessPolicy::Previous => prev(),
            GuessPolicy::TwoBack => back(2).unwrap_or_else(prev),
            GuessPolicy::PerDepth(table) => table
                .iter()
                .find(|(d, _)| *d == depth)
                .map(|&(_, v)| v)
                .unwrap_or_else(prev),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Branching, Othello6, PearlTree, SynthTreeConfig, SyntheticTree};
    use crate::test_support::minimax;
    use crate::tt::TtConfig;

    #[test]
    fn schedules() {
        assert_eq!(DepthSchedule::new(6, 1).depths(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(DepthSchedule::new(8, 2).depths(), vec![2, 4, 6, 8]);
        assert_eq!(DepthSchedule::new(7, 2).depths(), vec![1, 3, 5, 7]);
        assert_eq!(DepthSchedule::fixed(3).depths(), vec![3]);
    }

    #[test]
    fn tags_roundtrip() {
        for t in [
            "ab", "nega", "asp-nega", "mt", "sss", "dual", "mtdf", "mtdbi", "mtdstep", "mtdbest",
        ] {
            assert_eq!(t.parse::<Algorithm>().unwrap().tag(), t);
        }
        assert!("sss*".parse::<Algorithm>().is_err());
        assert_eq!("prev".parse::<GuessPolicy>().unwrap(), GuessPolicy::Previous);
        assert_eq!("prev2".parse::<GuessPolicy>().unwrap(), GuessPolicy::TwoBack);
        assert_eq!("-7".parse::<GuessPolicy>().unwrap(), GuessPolicy::Fixed(-7));
        assert!("x".parse::<GuessPolicy>().is_err());
    }

    #[test]
    fn depth_one_is_one_ply_minimax() {
        let t = PearlTree::default();
        let mut ctx = SearchContext::new(&t, TtConfig::lossless());
        let r = ctx.iterative_deepen(
            &t.root(),
            Algorithm::AlphaBeta,
            &IdConfig::new(DepthSchedule::new(1, 1)),
        );
        assert_eq!(r.iterations.len(), 1);
        assert_eq!(r.value(), minimax(&t, &t.root(), 1));
    }

    #[test]
    fn id_values_match_fixed_depth_and_counts_grow() {
        for seed in 0..100 {
            let cfg = SynthTreeConfig::new(seed, Branching::range(2, 4), 6).with_correlation(0.5);
            let t = SyntheticTree::generate(&cfg).unwrap();
            let id = IdConfig::new(DepthSchedule::new(6, 1));
            for alg in Algorithm::COMPARED {
                let mut ctx = SearchContext::new(&t, TtConfig::bits(12));
                let r = ctx.iterative_deepen(&t.root(), alg, &id);
                for it in &r.iterations {
                    assert_eq!(
                        it.value,
                        minimax(&t, &t.root(), it.depth),
                        "seed {seed} {alg} d{}",
                        it.depth
                    );
                }
                for w in r.iterations.windows(2) {
                    assert!(w[0].leaf_evals <= w[1].leaf_evals);
                }
            }
        }
    }

    #[test]
    fn guess_policies() {
        let t = Othello6;
        let root = t.root();
        let mut ctx = SearchContext::new(&t, TtConfig::bits(16));
        let id = IdConfig::new(DepthSchedule::new(4, 1)).with_guess(GuessPolicy::TwoBack);
        let r = ctx.iterative_deepen(&root, Algorithm::MtdF, &id);
        let e = t.evaluate(&root);
        assert_eq!(r.iterations[0].guess, e);
        assert_eq!(r.iterations[1].guess, r.iterations[0].value);
        assert_eq!(r.iterations[2].guess, r.iterations[0].value);
        assert_eq!(r.iterations[3].guess, r.iterations[1].value);

        let mut ctx = SearchContext::new(&t, TtConfig::bits(16));
        let id = IdConfig::new(DepthSchedule::new(3, 1)).with_guess(GuessPolicy::PerDepth(vec![(2, 99)]));
        let r = ctx.iterative_deepen(&root, Algorithm::MtdF, &id);
        assert_eq!(r.iterations[1].guess, 99);
        assert_eq!(r.iterations[2].guess, r.iterations[1].value);
    }

    #[test]
    fn mtd_best_in_id_reports_a_best_move() {
        let t = PearlTree::default();
        let mut ctx = SearchContext::new(&t, TtConfig::lossless());
        let r = ctx.iterative_deepen(&t.root(), Algorithm::MtdBest, &IdConfig::new(DepthSchedule::new(4, 2)));
        let m = r.last().best_move.unwrap();
        assert_eq!(t.apply_move(&t.root(), m).unwrap(), t.node('h'));
    }
}
