//! Brute-force oracles and tree builders shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use mtsearch::{Branching, Game, SynthTreeConfig, SyntheticTree, Value};

/// Plain minimax from MAX's point of view, no pruning, no storage.
pub fn minimax<G: Game>(game: &G, s: &G::State, depth: u32) -> Value {
    let moves = game.legal_moves(s);
    if depth == 0 || moves.is_empty() {
        return game.evaluate(s);
    }
    let vals = moves
        .into_iter()
        .map(|m| minimax(game, &game.apply_move(s, m).unwrap(), depth - 1));
    match game.side_to_move(s) {
        mtsearch::Side::Max => vals.max().unwrap(),
        mtsearch::Side::Min => vals.min().unwrap(),
    }
}

/// Values of each root move's child, in static order.
pub fn root_move_values<G: Game>(game: &G, s: &G::State, depth: u32) -> Vec<Value> {
    game.legal_moves(s)
        .into_iter()
        .map(|m| minimax(game, &game.apply_move(s, m).unwrap(), depth - 1))
        .collect()
}

/// Every state reachable from the root, keyed by state key.
pub fn states_by_key<G: Game>(game: &G) -> HashMap<u64, G::State> {
    let mut out = HashMap::new();
    let mut stack = vec![game.root()];
    while let Some(s) = stack.pop() {
        if out.insert(game.state_key(&s), s.clone()).is_some() {
            continue;
        }
        for m in game.legal_moves(&s) {
            stack.push(game.apply_move(&s, m).unwrap());
        }
    }
    out
}

pub fn tree(seed: u64, wmin: u32, wmax: u32, depth: u32) -> SyntheticTree {
    SyntheticTree::generate(&SynthTreeConfig::new(seed, Branching::range(wmin, wmax), depth)).unwrap()
}

pub fn graph(seed: u64, wmin: u32, wmax: u32, depth: u32, corr: f64, tp: f64) -> SyntheticTree {
    let cfg = SynthTreeConfig::new(seed, Branching::range(wmin, wmax), depth)
        .with_correlation(corr)
        .with_transpositions(tp);
    SyntheticTree::generate(&cfg).unwrap()
}
