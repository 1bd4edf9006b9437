use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{load_suite, on_position, ExperimentSpec, HarnessError};
use crate::search::{Algorithm, SearchContext};
use crate::tt::{TableSize, TtConfig};

/// The algorithms a sweep measures; ratios are taken against the first.
pub const SWEPT: [Algorithm; 3] = [Algorithm::AlphaBeta, Algorithm::Sss, Algorithm::Dual];

/// Suite totals for one table size and algorithm, after the last iteration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemsweepRow {
    /// Table size as `log2(entries)`, or `lossless`.
    pub tt_bits: String,
    pub algorithm: String,
    pub leaf_evals: u64,
    pub total_nodes: u64,
    pub ratio_vs_ab: f64,
}

#[derive(Clone, Debug, Default)]
pub struct MemsweepReport {
    pub rows: Vec<MemsweepRow>,
}

impl MemsweepReport {
    /// Leaf ratio against Alpha-Beta per finite table size, ascending.
    pub fn ratio_curve(&self, alg: Algorithm) -> Vec<(u8, f64)> {
        self.rows
            .iter()
            .filter(|r| r.algorithm == alg.tag())
            .filter_map(|r| r.tt_bits.parse::<u8>().ok().map(|b| (b, r.ratio_vs_ab)))
            .collect()
    }

    /// Leaf count per finite table size, ascending.
    pub fn leaf_curve(&self, alg: Algorithm) -> Vec<(u8, f64)> {
        self.rows
            .iter()
            .filter(|r| r.algorithm == alg.tag())
            .filter_map(|r| r.tt_bits.parse::<u8>().ok().map(|b| (b, r.leaf_evals as f64)))
            .collect()
    }
}

/// Smallest size from which every further step changes the value by less
/// than `tol` (relative). At least one further step must exist, so a curve
/// that only settles at its last point has not levelled off.
pub fn level_off(points: &[(u8, f64)], tol: f64) -> Option<u8> {
    if points.len() < 2 {
        return None;
    }
    let flat = |i: usize| {
        let (a, b) = (points[i].1, points[i + 1].1);
        let base = a.abs().max(f64::MIN_POSITIVE);
        (b - a).abs() / base < tol
    };
    let mut start = None;
    for i in (0..points.len() - 1).rev() {
        if flat(i) {
            start = Some(i);
        } else {
            break;
        }
    }
    start.map(|i| points[i].0)
}

/// Iterative-deepening runs of Alpha-Beta, AB-SSS* and AB-DUAL* for each
/// table configuration in the spec, summed over the suite.
pub fn run_memsweep(spec: &ExperimentSpec) -> Result<MemsweepReport, HarnessError> {
    if spec.tt.is_empty() {
        return Err(HarnessError::Usage("no table sizes to sweep".into()));
    }
    let bits: Vec<u8> = spec
        .tt
        .iter()
        .filter_map(|c| match c.size {
            TableSize::Bits(b) => Some(b),
            TableSize::Lossless => None,
        })
        .collect();
    if bits.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HarnessError::Usage("table sizes must be ascending".into()));
    }
    let suite = load_suite(spec)?;
    let cfg = spec.id_config();
    let jobs: Vec<(usize, TtConfig, Algorithm)> = (0..suite.len())
        .flat_map(|p| {
            spec.tt
                .iter()
                .flat_map(move |&tt| SWEPT.iter().map(move |&a| (p, tt, a)))
        })
        .collect();
    let counts: Vec<(u64, u64)> = jobs
        .par_iter()
        .map(|&(p, tt, alg)| {
            on_position!(&suite[p], |game, root| {
                let mut ctx = SearchContext::new(game, tt).with_ordering(spec.ordering);
                let last = ctx
                    .iterative_deepen(&root, alg, &cfg)
                    .iterations
                    .pop()
                    .expect("nonempty schedule");
                (last.leaf_evals, last.total_nodes)
            })
        })
        .collect();

    // Jobs are laid out position-major, then table size, then algorithm.
    let per_position = spec.tt.len() * SWEPT.len();
    let mut report = MemsweepReport::default();
    for (ti, tt) in spec.tt.iter().enumerate() {
        let mut sums = [(0u64, 0u64); SWEPT.len()];
        for chunk in counts.chunks(per_position) {
            for (k, sum) in sums.iter_mut().enumerate() {
                let (l, n) = chunk[ti * SWEPT.len() + k];
                sum.0 += l;
                sum.1 += n;
            }
        }
        let ab = sums[0].0.max(1) as f64;
        for (k, alg) in SWEPT.iter().enumerate() {
            report.rows.push(MemsweepRow {
                tt_bits: tt.size.to_string(),
                algorithm: alg.tag().to_string(),
                leaf_evals: sums[k].0,
                total_nodes: sums[k].1,
                ratio_vs_ab: sums[k].0 as f64 / ab,
            });
        }
    }
    Ok(report)
}
