use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::game::{Branching, Game, SynthTreeConfig, SyntheticTree};
use crate::search::{Algorithm, DepthSchedule, IdConfig, LeafEval, MoveOrdering, SearchContext};
use crate::tt::TtConfig;
use crate::value::Value;

/// Parameters of the search for a tree on which iterative-deepening AB-SSS*
/// evaluates more leaves than iterative-deepening Alpha-Beta.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HuntConfig {
    pub seed: u64,
    /// Number of trees to try.
    pub budget: u64,
    /// Tree `i` uses `branchings[i % len]`.
    pub branchings: Vec<Branching>,
    pub schedule: DepthSchedule,
    pub ordering: MoveOrdering,
    pub correlation: f64,
    pub values: (Value, Value),
    pub tt: TtConfig,
}

impl HuntConfig {
    /// Narrow trees searched to depth 2 then 3, with the table move tried
    /// first and no other reordering.
    pub fn new(seed: u64, budget: u64) -> HuntConfig {
        HuntConfig {
            seed,
            budget,
            branchings: vec![Branching::fixed(2), Branching::fixed(3), Branching::range(2, 3)],
            schedule: DepthSchedule {
                start: 2,
                step: 1,
                max: 3,
            },
            ordering: MoveOrdering::TtOnly,
            correlation: 0.0,
            values: (0, 20),
            tt: TtConfig::lossless(),
        }
    }

    pub fn with_ordering(mut self, o: MoveOrdering) -> Self {
        self.ordering = o;
        self
    }

    /// Generator settings of the `i`-th tree.
    pub fn tree(&self, i: u64) -> SynthTreeConfig {
        let b = self.branchings[(i % self.branchings.len() as u64) as usize];
        SynthTreeConfig::new(self.seed.wrapping_add(i), b, self.schedule.max)
            .with_correlation(self.correlation)
            .with_values(self.values.0, self.values.1)
    }
}

/// Both iterative-deepening runs on one tree.
#[derive(Clone, Debug, PartialEq)]
pub struct HuntRun {
    pub tree: SynthTreeConfig,
    pub value: Value,
    pub ab_leaves: u64,
    pub sss_leaves: u64,
    /// Leaf evaluations of all iterations, in order.
    pub ab_trace: Vec<LeafEval>,
    pub sss_trace: Vec<LeafEval>,
}

impl HuntRun {
    pub fn is_counterexample(&self) -> bool {
        self.sss_leaves > self.ab_leaves
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    /// Index of the tree within the hunt.
    pub index: u64,
    pub run: HuntRun,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HuntReport {
    pub config: HuntConfig,
    /// Trees examined up to and including the counterexample, or the whole
    /// budget when none was found.
    pub trees_searched: u64,
    pub found: Option<Counterexample>,
}

impl fmt::Display for HuntReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.found {
            None => write!(f, "no counterexample in {} trees", self.trees_searched),
            Some(c) => {
                let t = &c.run.tree;
                writeln!(
                    f,
                    "counterexample at tree {}: seed={} w={}..{} d={} v={}..{}",
                    c.index, t.seed, t.branching.min, t.branching.max, t.depth, t.value_min, t.value_max
                )?;
                writeln!(
                    f,
                    "value {}, leaves: AB-SSS* {} > Alpha-Beta {}",
                    c.run.value, c.run.sss_leaves, c.run.ab_leaves
                )?;
                let show = |v: &[LeafEval]| v.iter().map(|l| l.value.to_string()).collect::<Vec<_>>().join(" ");
                writeln!(f, "Alpha-Beta leaves: {}", show(&c.run.ab_trace))?;
                write!(f, "AB-SSS* leaves:    {}", show(&c.run.sss_trace))
            }
        }
    }
}

/// Runs iterative-deepening Alpha-Beta and AB-SSS* on one generated tree.
pub fn replay_hunt_tree(tree: &SynthTreeConfig, hunt: &HuntConfig) -> Result<HuntRun, HarnessError> {
    let t = SyntheticTree::generate(tree)?;
    let cfg = IdConfig::new(hunt.schedule);
    let run = |alg: Algorithm| {
        let mut ctx = SearchContext::new(&t, hunt.tt)
            .with_ordering(hunt.ordering)
            .with_leaf_trace();
        let r = ctx.iterative_deepen(&t.root(), alg, &cfg);
        (
            r.value(),
            r.last().leaf_evals,
            ctx.stats.leaf_trace.take().unwrap_or_default(),
        )
    };
    let (ab_value, ab_leaves, ab_trace) = run(Algorithm::AlphaBeta);
    let (sss_value, sss_leaves, sss_trace) = run(Algorithm::Sss);
    assert_eq!(ab_value, sss_value, "value mismatch on tree seed {}", tree.seed);
    Ok(HuntRun {
        tree: tree.clone(),
        value: ab_value,
        ab_leaves,
        sss_leaves,
        ab_trace,
        sss_trace,
    })
}

/// Tries trees in seed order and returns the first counterexample. The
/// search is parallel but the result is the lowest-index hit, so it does not
/// depend on scheduling.
pub fn nondominance_hunt(hunt: &HuntConfig) -> Result<HuntReport, HarnessError> {
    if hunt.budget == 0 || hunt.branchings.is_empty() {
        return Err(HarnessError::Usage(
            "hunt needs a budget and at least one branching".into(),
        ));
    }
    for i in 0..hunt.branchings.len() as u64 {
        hunt.tree(i).validate()?;
    }
    let hit = (0..hunt.budget).into_par_iter().find_first(|&i| {
        replay_hunt_tree(&hunt.tree(i), hunt)
            .map(|r| r.is_counterexample())
            .unwrap_or(false)
    });
    let found = match hit {
        Some(index) => Some(Counterexample {
            index,
            run: replay_hunt_tree(&hunt.tree(index), hunt)?,
        }),
        None => None,
    };
    Ok(HuntReport {
        config: hunt.clone(),
        trees_searched: found.as_ref().map_or(hunt.budget, |c| c.index + 1),
        found,
    })
}
