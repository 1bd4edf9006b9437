use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{load_suite, on_position, ExperimentSpec, HarnessError};
use crate::search::{Algorithm, PlyStats, SearchContext};

/// Cutoff statistics for one ply of the last iteration, pooled over the
/// suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderingRow {
    pub ply: usize,
    pub cut_nodes: u64,
    pub first_move_cutoffs: u64,
    pub first_move_cutoff_rate: f64,
    pub mean_moves_at_cut: f64,
}

/// Runs the spec's first algorithm (Alpha-Beta when none is given) once per
/// position and reports how often the first move tried caused the cutoff.
pub fn ordering_report(spec: &ExperimentSpec) -> Result<Vec<OrderingRow>, HarnessError> {
    let alg = spec.algorithms.first().copied().unwrap_or(Algorithm::AlphaBeta);
    let suite = load_suite(spec)?;
    let cfg = spec.id_config();
    let per_position: Vec<Vec<PlyStats>> = suite
        .par_iter()
        .map(|pos| {
            on_position!(pos, |game, root| {
                let mut ctx = SearchContext::new(game, spec.primary_tt()).with_ordering(spec.ordering);
                ctx.iterative_deepen(&root, alg, &cfg).last().plies.clone()
            })
        })
        .collect();
    let mut pooled: Vec<PlyStats> = Vec::new();
    for plies in &per_position {
        if pooled.len() < plies.len() {
            pooled.resize(plies.len(), PlyStats::default());
        }
        for (acc, p) in pooled.iter_mut().zip(plies) {
            acc.add(p);
        }
    }
    Ok(pooled
        .iter()
        .enumerate()
        .filter(|(_, p)| p.cut_nodes > 0)
        .map(|(ply, p)| OrderingRow {
            ply,
            cut_nodes: p.cut_nodes,
            first_move_cutoffs: p.first_move_cutoffs,
            first_move_cutoff_rate: p.first_move_rate(),
            mean_moves_at_cut: p.mean_moves_at_cut(),
        })
        .collect())
}
