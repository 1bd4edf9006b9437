//! Fixed positions shared by the criterion benchmarks.

use mtsearch::game::positions::othello_suite;
use mtsearch::{Branching, OthelloState, SynthTreeConfig, SyntheticTree};

/// A uniform tree with some transpositions, deep enough to be measurable.
pub fn synthetic(seed: u64) -> SyntheticTree {
    let cfg = SynthTreeConfig::new(seed, Branching::range(3, 5), 7)
        .with_correlation(0.5)
        .with_transpositions(0.1);
    SyntheticTree::generate(&cfg).expect("valid config")
}

/// The first `n` positions of the bundled Othello suite.
pub fn othello(n: usize) -> Vec<OthelloState> {
    othello_suite().into_iter().take(n).map(|(_, s)| s).collect()
}
