use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{load_suite, on_position, ExperimentSpec, HarnessError, Position};
use crate::search::{Algorithm, IdResult, SearchContext};
use crate::value::Value;

/// One (position, algorithm, depth) measurement. Counts are cumulative over
/// the iterations up to and including `depth`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub position: String,
    pub algorithm: String,
    pub depth: u32,
    pub value: Value,
    pub leaf_evals: u64,
    pub total_nodes: u64,
    pub distinct_states: u64,
    pub mt_calls: u64,
    pub tt_probes: u64,
    pub tt_hits: u64,
    pub tt_evictions: u64,
    pub tt_occupancy: u64,
    pub wall_ms: f64,
}

/// Algorithms that returned different values for the same search.
#[derive(Clone, Debug, PartialEq)]
pub struct Disagreement {
    pub position: String,
    pub depth: u32,
    pub values: Vec<(Algorithm, Value)>,
}

#[derive(Clone, Debug, Default)]
pub struct CompareReport {
    pub rows: Vec<ComparisonRow>,
    pub disagreements: Vec<Disagreement>,
}

impl CompareReport {
    pub fn agreed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs every algorithm over every position under the same table size and
/// ordering code, and cross-checks the values.
pub fn run_compare(spec: &ExperimentSpec) -> Result<CompareReport, HarnessError> {
    if spec.algorithms.is_empty() {
        return Err(HarnessError::Usage("no algorithms selected".into()));
    }
    let suite = load_suite(spec)?;
    if suite.is_empty() {
        return Err(HarnessError::Usage("no positions".into()));
    }
    let per_position: Vec<(Vec<ComparisonRow>, Vec<Disagreement>)> =
        suite.par_iter().map(|p| compare_position(spec, p)).collect();
    let mut report = CompareReport::default();
    for (rows, dis) in per_position {
        report.rows.extend(rows);
        report.disagreements.extend(dis);
    }
    Ok(report)
}

fn compare_position(spec: &ExperimentSpec, pos: &Position) -> (Vec<ComparisonRow>, Vec<Disagreement>) {
    let cfg = spec.id_config();
    let runs: Vec<IdResult> = on_position!(pos, |game, root| {
        spec.algorithms
            .iter()
            .map(|&alg| {
                let mut ctx = SearchContext::new(game, spec.primary_tt())
                    .with_ordering(spec.ordering)
                    .with_distinct_count();
                ctx.iterative_deepen(&root, alg, &cfg)
            })
            .collect()
    });
    let mut rows = Vec::new();
    for run in &runs {
        for it in &run.iterations {
            rows.push(ComparisonRow {
                position: pos.id().to_string(),
                algorithm: run.algorithm.tag().to_string(),
                depth: it.depth,
                value: it.value,
                leaf_evals: it.leaf_evals,
                total_nodes: it.total_nodes,
                distinct_states: it.distinct_states.unwrap_or(0),
                mt_calls: it.mt_calls,
                tt_probes: it.tt.probes,
                tt_hits: it.tt.hits,
                tt_evictions: it.tt.evictions,
                tt_occupancy: it.tt.occupancy,
                wall_ms: it.wall.as_secs_f64() * 1e3,
            });
        }
    }
    let mut dis = Vec::new();
    for (k, depth) in cfg.schedule.depths().into_iter().enumerate() {
        let values: Vec<(Algorithm, Value)> = runs
            .iter()
            .filter(|r| r.algorithm.is_exact())
            .map(|r| (r.algorithm, r.iterations[k].value))
            .collect();
        if values.windows(2).any(|w| w[0].1 != w[1].1) {
            dis.push(Disagreement {
                position: pos.id().to_string(),
                depth,
                values,
            });
        }
    }
    (rows, dis)
}
