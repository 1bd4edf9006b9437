use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{load_suite, on_position, ExperimentSpec, HarnessError};
use crate::search::{Algorithm, GuessPolicy, SearchContext};
use crate::value::Value;

/// Suite means for one first-guess offset, against the Aspiration NegaScout
/// baseline run with its usual previous-iteration guesses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GuessRow {
    pub delta: Value,
    pub positions: usize,
    pub mean_leaf_evals: f64,
    pub mean_total_nodes: f64,
    pub baseline_leaf_evals: f64,
    pub baseline_total_nodes: f64,
    pub leaf_pct_of_baseline: f64,
    pub total_pct_of_baseline: f64,
    /// MT calls per iteration.
    pub mean_mt_calls: f64,
}

struct PositionCounts {
    baseline: (u64, u64),
    /// (leaves, nodes, mt calls per iteration) per delta.
    per_delta: Vec<(u64, u64, f64)>,
}

/// For each position: the exact value at every depth first, then
/// iterative-deepening MTD(f) whose guess at each depth is that value plus
/// `delta`. Counts are cumulative over the schedule.
pub fn run_guess_sweep(spec: &ExperimentSpec, deltas: &[Value]) -> Result<Vec<GuessRow>, HarnessError> {
    if deltas.is_empty() {
        return Err(HarnessError::Usage("no guess offsets given".into()));
    }
    let suite = load_suite(spec)?;
    if suite.is_empty() {
        return Err(HarnessError::Usage("no positions".into()));
    }
    let cfg = spec.id_config();
    let per_position: Vec<PositionCounts> = suite
        .par_iter()
        .map(|pos| {
            on_position!(pos, |game, root| {
                let fresh = || SearchContext::new(game, spec.primary_tt()).with_ordering(spec.ordering);
                let exact: Vec<(u32, Value)> = fresh()
                    .iterative_deepen(&root, Algorithm::AlphaBeta, &cfg)
                    .iterations
                    .iter()
                    .map(|it| (it.depth, it.value))
                    .collect();
                let base = fresh().iterative_deepen(&root, Algorithm::AspNegaScout, &cfg);
                let base = base.last();
                let per_delta = deltas
                    .iter()
                    .map(|&d| {
                        let guesses = exact.iter().map(|&(k, f)| (k, f.saturating_add(d))).collect();
                        let c = cfg.clone().with_guess(GuessPolicy::PerDepth(guesses));
                        let r = fresh().iterative_deepen(&root, Algorithm::MtdF, &c);
                        assert!(
                            r.iterations.iter().zip(&exact).all(|(it, &(_, f))| it.value == f),
                            "MTD(f) disagrees with Alpha-Beta on {}",
                            pos.id()
                        );
                        let calls: u64 = r.iterations.iter().map(|it| it.mt_calls).sum();
                        let last = r.last();
                        (
                            last.leaf_evals,
                            last.total_nodes,
                            calls as f64 / r.iterations.len() as f64,
                        )
                    })
                    .collect();
                PositionCounts {
                    baseline: (base.leaf_evals, base.total_nodes),
                    per_delta,
                }
            })
        })
        .collect();

    let n = per_position.len() as f64;
    let mean = |f: &dyn Fn(&PositionCounts) -> f64| per_position.iter().map(f).sum::<f64>() / n;
    let base_leaves = mean(&|p| p.baseline.0 as f64);
    let base_nodes = mean(&|p| p.baseline.1 as f64);
    Ok(deltas
        .iter()
        .enumerate()
        .map(|(i, &delta)| {
            let leaves = mean(&|p| p.per_delta[i].0 as f64);
            let nodes = mean(&|p| p.per_delta[i].1 as f64);
            GuessRow {
                delta,
                positions: per_position.len(),
                mean_leaf_evals: leaves,
                mean_total_nodes: nodes,
                baseline_leaf_evals: base_leaves,
                baseline_total_nodes: base_nodes,
                leaf_pct_of_baseline: 100.0 * leaves / base_leaves.max(1.0),
                total_pct_of_baseline: 100.0 * nodes / base_nodes.max(1.0),
                mean_mt_calls: mean(&|p| p.per_delta[i].2),
            }
        })
        .collect())
}
