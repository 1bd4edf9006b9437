//! Seeded synthetic game trees (or DAGs, when transpositions are enabled).
//!
//! The whole graph is materialised level by level from a ChaCha stream, so the
//! same configuration always yields a bit-identical game. Each node carries a
//! "draw": its static evaluation. A child's draw mixes its parent's draw with
//! a fresh uniform sample, `c * parent + (1 - c) * u`, so `c = 0` gives i.i.d.
//! values and larger `c` ties shallow and deep scores together.
//!
//! With transposition density `p`, every generated child is, with probability
//! `p`, replaced by a node that already exists one level down: preferably a
//! child of one of the generating node's earlier siblings, otherwise the most
//! recently generated node at that level.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Game, GameError, Move};
use crate::value::{Side, Value, VALUE_INF};

/// Branching factor: fixed (`min == max`) or drawn uniformly per node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branching {
    pub min: u32,
    pub max: u32,
}

impl Branching {
    pub fn fixed(w: u32) -> Branching {
        Branching { min: w, max: w }
    }

    pub fn range(min: u32, max: u32) -> Branching {
        Branching { min, max }
    }
}

impl fmt::Display for Branching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.min == self.max {
            write!(f, "{}", self.min)
        } else {
            write!(f, "{}..{}", self.min, self.max)
        }
    }
}

impl FromStr for Branching {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
        match s.split_once("..") {
            Some((a, b)) => Ok(Branching::range(parse(a)?, parse(b)?)),
            None => Ok(Branching::fixed(parse(s)?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthTreeConfig {
    pub seed: u64,
    pub branching: Branching,
    pub depth: u32,
    pub value_min: Value,
    pub value_max: Value,
    pub correlation: f64,
    pub transposition_density: f64,
}

impl SynthTreeConfig {
    pub fn new(seed: u64, branching: Branching, depth: u32) -> SynthTreeConfig {
        SynthTreeConfig {
            seed,
            branching,
            depth,
            value_min: -100,
            value_max: 100,
            correlation: 0.0,
            transposition_density: 0.0,
        }
    }

    pub fn with_correlation(mut self, c: f64) -> Self {
        self.correlation = c;
        self
    }

    pub fn with_transpositions(mut self, p: f64) -> Self {
        self.transposition_density = p;
        self
    }

    pub fn with_values(mut self, min: Value, max: Value) -> Self {
        self.value_min = min;
        self.value_max = max;
        self
    }

    pub fn validate(&self) -> Result<(), GameError> {
        let err = |m: &str| Err(GameError::Config(m.to_string()));
        if self.branching.min == 0 || self.branching.min > self.branching.max {
            return err("branching must satisfy 1 <= min <= max");
        }
        if self.branching.max > u16::MAX as u32 {
            return err("branching too large");
        }
        if self.depth == 0 {
            return err("depth must be positive");
        }
        if self.value_min > self.value_max || self.value_min <= -VALUE_INF || self.value_max >= VALUE_INF {
            return err("value range must be a finite nonempty interval");
        }
        if !(0.0..=1.0).contains(&self.correlation) {
            return err("correlation must lie in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.transposition_density) {
            return err("transposition density must lie in [0, 1]");
        }
        Ok(())
    }

    /// Parses `seed=<u64> w=<int|min..max> d=<int> corr=<float> tp=<float>`;
    /// an optional `v=<min>..<max>` overrides the value range.
    pub fn parse_line(line: &str) -> Result<SynthTreeConfig, String> {
        let mut seed = None;
        let mut w = None;
        let mut d = None;
        let mut corr = 0.0;
        let mut tp = 0.0;
        let mut values = (-100, 100);
        for tok in line.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got {tok:?}"))?;
            let bad = |e: &dyn fmt::Display| format!("{k}: {e}");
            match k {
                "seed" => seed = Some(v.parse::<u64>().map_err(|e| bad(&e))?),
                "w" => w = Some(v.parse::<Branching>()?),
                "d" => d = Some(v.parse::<u32>().map_err(|e| bad(&e))?),
                "corr" => corr = v.parse::<f64>().map_err(|e| bad(&e))?,
                "tp" => tp = v.parse::<f64>().map_err(|e| bad(&e))?,
                "v" => {
                    let (a, b) = v.split_once("..").ok_or("v expects <min>..<max>")?;
                    values = (a.parse().map_err(|e| bad(&e))?, b.parse().map_err(|e| bad(&e))?);
                }
                _ => return Err(format!("unknown key {k:?}")),
            }
        }
        let cfg = SynthTreeConfig {
            seed: seed.ok_or("missing seed=")?,
            branching: w.ok_or("missing w=")?,
            depth: d.ok_or("missing d=")?,
            value_min: values.0,
            value_max: values.1,
            correlation: corr,
            transposition_density: tp,
        };
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}

impl fmt::Display for SynthTreeConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "seed={} w={} d={} corr={} tp={}",
            self.seed, self.branching, self.depth, self.correlation, self.transposition_density
        )?;
        if (self.value_min, self.value_max) != (-100, 100) {
            write!(f, " v={}..{}", self.value_min, self.value_max)?;
        }
        Ok(())
    }
}

/// Node handle into a [`SyntheticTree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SynthNodeId(pub u32);

#[derive(Clone, Debug)]
struct Node {
    key: u64,
    draw: Value,
    ply: u32,
    first_edge: u32,
    edge_count: u32,
}

#[derive(Clone, Debug)]
pub struct SyntheticTree {
    config: SynthTreeConfig,
    root_side: Side,
    nodes: Vec<Node>,
    edges: Vec<u32>,
    aliased_edges: usize,
}

impl SyntheticTree {
    pub fn generate(config: &SynthTreeConfig) -> Result<SyntheticTree, GameError> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let lo = config.value_min;
        let hi = config.value_max;
        let c = config.correlation;
        let mut nodes = vec![Node {
            key: rng.gen(),
            draw: rng.gen_range(lo..=hi),
            ply: 0,
            first_edge: 0,
            edge_count: 0,
        }];
        let mut edges: Vec<u32> = Vec::new();
        let mut aliased_edges = 0;
        let mut level: Vec<u32> = vec![0];
        // Generating parent of each node on the current level.
        let mut level_parent: Vec<u32> = vec![u32::MAX];

        for ply in 0..config.depth {
            let mut next: Vec<u32> = Vec::new();
            let mut next_parent: Vec<u32> = Vec::new();
            // For each node on `next`, the node of `level` that generated it.
            let mut next_origin: Vec<u32> = Vec::new();
            for (pos, &id) in level.iter().enumerate() {
                let w = rng.gen_range(config.branching.min..=config.branching.max);
                let first_edge = edges.len() as u32;
                let parent_draw = nodes[id as usize].draw;
                for _ in 0..w {
                    let alias = config.transposition_density > 0.0 && rng.gen_bool(config.transposition_density);
                    let own = &edges[first_edge as usize..];
                    let target = if alias {
                        pick_alias(&mut rng, &next, &next_origin, &level, &level_parent, pos, own)
                    } else {
                        None
                    };
                    match target {
                        Some(t) => {
                            edges.push(t);
                            aliased_edges += 1;
                        }
                        None => {
                            let u = rng.gen_range(lo..=hi) as f64;
                            let draw = (c * parent_draw as f64 + (1.0 - c) * u).round() as Value;
                            let child = nodes.len() as u32;
                            nodes.push(Node {
                                key: rng.gen(),
                                draw: draw.clamp(lo, hi),
                                ply: ply + 1,
                                first_edge: 0,
                                edge_count: 0,
                            });
                            edges.push(child);
                            next.push(child);
                            next_parent.push(id);
                            next_origin.push(pos as u32);
                        }
                    }
                }
                let node = &mut nodes[id as usize];
                node.first_edge = first_edge;
                node.edge_count = w;
            }
            level = next;
            level_parent = next_parent;
        }
        Ok(SyntheticTree {
            config: config.clone(),
            root_side: Side::Max,
            nodes,
            edges,
            aliased_edges,
        })
    }

    pub fn config(&self) -> &SynthTreeConfig {
        &self.config
    }

    /// Distinct nodes in the graph.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Parent-child edges, counting aliased edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges whose child is an alias of an earlier node.
    pub fn aliased_edge_count(&self) -> usize {
        self.aliased_edges
    }

    pub fn root_side(&self) -> Side {
        self.root_side
    }

    /// Same shape with every score negated and the root handed to MIN.
    pub fn negated_mirror(&self) -> SyntheticTree {
        let mut t = self.clone();
        for n in &mut t.nodes {
            n.draw = -n.draw;
            n.key = !n.key;
        }
        t.root_side = self.root_side.opponent();
        t.config.value_min = -self.config.value_max;
        t.config.value_max = -self.config.value_min;
        t
    }

    pub fn children(&self, s: SynthNodeId) -> &[u32] {
        let n = &self.nodes[s.0 as usize];
        &self.edges[n.first_edge as usize..(n.first_edge + n.edge_count) as usize]
    }
}

/// Chooses an existing node one level down for a transposed child, avoiding
/// nodes the parent already points to.
fn pick_alias(
    rng: &mut ChaCha8Rng,
    next: &[u32],
    next_origin: &[u32],
    level: &[u32],
    level_parent: &[u32],
    pos: usize,
    own: &[u32],
) -> Option<u32> {
    let my_parent = level_parent[pos];
    let cousins: Vec<u32> = next
        .iter()
        .zip(next_origin)
        .filter(|&(c, &o)| {
            o as usize != pos
                && my_parent != u32::MAX
                && level_parent[o as usize] == my_parent
                && level[o as usize] != level[pos]
                && !own.contains(c)
        })
        .map(|(&c, _)| c)
        .collect();
    if !cousins.is_empty() {
        return Some(cousins[rng.gen_range(0..cousins.len())]);
    }
    next.iter().rev().find(|c| !own.contains(c)).copied()
}

impl Game for SyntheticTree {
    type State = SynthNodeId;

    fn root(&self) -> SynthNodeId {
        SynthNodeId(0)
    }

    fn legal_moves(&self, s: &SynthNodeId) -> Vec<Move> {
        self.children(*s)
            .iter()
            .enumerate()
            .map(|(i, &c)| Move::new(i as u16, c))
            .collect()
    }

    fn apply_move(&self, s: &SynthNodeId, m: Move) -> Result<SynthNodeId, GameError> {
        match self.children(*s).get(m.ordinal as usize) {
            Some(&c) if c == m.code => Ok(SynthNodeId(c)),
            _ => Err(GameError::IllegalMove {
                mv: m,
                state: self.label(s),
            }),
        }
    }

    fn evaluate(&self, s: &SynthNodeId) -> Value {
        self.nodes[s.0 as usize].draw
    }

    fn state_key(&self, s: &SynthNodeId) -> u64 {
        self.nodes[s.0 as usize].key
    }

    fn side_to_move(&self, s: &SynthNodeId) -> Side {
        if self.nodes[s.0 as usize].ply.is_multiple_of(2) {
            self.root_side
        } else {
            self.root_side.opponent()
        }
    }

    fn ply(&self, s: &SynthNodeId) -> u32 {
        self.nodes[s.0 as usize].ply
    }

    fn is_terminal(&self, s: &SynthNodeId) -> bool {
        self.nodes[s.0 as usize].edge_count == 0
    }

    fn value_bounds(&self) -> Option<(Value, Value)> {
        Some((self.config.value_min, self.config.value_max))
    }

    fn history_slots(&self) -> usize {
        self.config.branching.max as usize
    }

    fn history_slot(&self, _s: &SynthNodeId, m: Move) -> usize {
        m.ordinal as usize
    }

    fn label(&self, s: &SynthNodeId) -> String {
        format!("n{}", s.0)
    }
}
