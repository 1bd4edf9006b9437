//! Stockman's SSS*, with Campbell's correction, as an executable oracle.
//!
//! The OPEN list is a plain sorted sequence of `(node, status, merit)`
//! triples, front first. Nodes are identified by their path of move
//! ordinals from the root, so "left of" is lexicographic path order. This
//! code exists to be checked against, not to be fast.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::game::Game;
use crate::mtd;
use crate::search::{LeafEval, MoveOrdering, SearchContext};
use crate::tt::TtConfig;
use crate::value::{Side, Value, VALUE_INF};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SssStatus {
    Live,
    Solved,
}

#[derive(Clone, Debug)]
pub struct OpenEntry<S> {
    pub path: Vec<u16>,
    pub state: S,
    pub status: SssStatus,
    /// Upper bound `h` carried by the entry.
    pub merit: Value,
}

/// Printable copy of an OPEN entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenSnapshot {
    pub label: String,
    pub status: SssStatus,
    pub merit: Value,
}

impl OpenSnapshot {
    pub fn new(label: &str, status: SssStatus, merit: Value) -> OpenSnapshot {
        OpenSnapshot {
            label: label.to_string(),
            status,
            merit,
        }
    }
}

impl fmt::Display for OpenSnapshot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.status {
            SssStatus::Live => 'L',
            SssStatus::Solved => 'S',
        };
        if self.merit >= VALUE_INF {
            write!(f, "<{},{},inf>", self.label, s)
        } else {
            write!(f, "<{},{},{}>", self.label, s, self.merit)
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SssError {
    #[error("the root must be a MAX node")]
    RootNotMax,
    #[error("no case of the operator applies to the front entry {0}")]
    NoCase(String),
    #[error("OPEN list became empty before the root was solved")]
    EmptyOpen,
}

/// Which transition a step performed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Case(u8),
    Done(Value),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Eval { path: Vec<u16>, value: Value },
    Open(Vec<OpenSnapshot>),
}

/// A running SSS* search over a fixed horizon.
pub struct SssSearch<'g, G: Game> {
    game: &'g G,
    root: G::State,
    depth: u32,
    open: VecDeque<OpenEntry<G::State>>,
    leaves: Vec<LeafEval>,
    events: Vec<TraceEvent>,
    max_open: usize,
    steps: u64,
}

impl<'g, G: Game> SssSearch<'g, G> {
    pub fn new(game: &'g G, root: G::State, depth: u32) -> Result<Self, SssError> {
        if game.side_to_move(&root) != Side::Max {
            return Err(SssError::RootNotMax);
        }
        let mut open = VecDeque::new();
        open.push_back(OpenEntry {
            path: Vec::new(),
            state: root.clone(),
            status: SssStatus::Live,
            merit: VALUE_INF,
        });
        Ok(SssSearch {
            game,
            root,
            depth,
            open,
            leaves: Vec::new(),
            events: Vec::new(),
            max_open: 1,
            steps: 0,
        })
    }

    pub fn open(&self) -> &VecDeque<OpenEntry<G::State>> {
        &self.open
    }

    pub fn snapshot(&self) -> Vec<OpenSnapshot> {
        self.open
            .iter()
            .map(|e| OpenSnapshot {
                label: self.game.label(&e.state),
                status: e.status,
                merit: e.merit,
            })
            .collect()
    }

    fn state_at(&self, path: &[u16]) -> G::State {
        let mut s = self.root.clone();
        for &o in path {
            s = self.nth_child(&s, o).expect("path names an existing node");
        }
        s
    }

    fn nth_child(&self, s: &G::State, ordinal: u16) -> Option<G::State> {
        let m = *self.game.legal_moves(s).get(ordinal as usize)?;
        Some(self.game.apply_move(s, m).expect("generated move is legal"))
    }

    fn is_horizon(&self, e: &OpenEntry<G::State>) -> bool {
        e.path.len() as u32 >= self.depth || self.game.is_terminal(&e.state)
    }

    fn push_front(&mut self, e: OpenEntry<G::State>) {
        self.open.push_front(e);
        self.max_open = self.max_open.max(self.open.len());
    }

    /// Applies the operator to the front entry.
    pub fn apply_gamma(&mut self) -> Result<Step, SssError> {
        let p = self.open.pop_front().ok_or(SssError::EmptyOpen)?;
        self.steps += 1;
        let side = self.game.side_to_move(&p.state);
        match p.status {
            SssStatus::Solved if p.path.is_empty() => {
                self.open.push_front(p.clone());
                self.events.push(TraceEvent::Open(self.snapshot()));
                Ok(Step::Done(p.merit))
            }
            SssStatus::Solved if side == Side::Min => {
                let m = p.path[..p.path.len() - 1].to_vec();
                let state = self.state_at(&m);
                self.open
                    .retain(|e| !(e.path.len() > m.len() && e.path.starts_with(&m)));
                self.push_front(OpenEntry {
                    path: m,
                    state,
                    status: SssStatus::Solved,
                    merit: p.merit,
                });
                Ok(Step::Case(1))
            }
            SssStatus::Solved => {
                let parent = &p.path[..p.path.len() - 1];
                let parent_state = self.state_at(parent);
                let next_ord = p.path[p.path.len() - 1] + 1;
                match self.nth_child(&parent_state, next_ord) {
                    Some(brother) => {
                        let mut path = parent.to_vec();
                        path.push(next_ord);
                        self.push_front(OpenEntry {
                            path,
                            state: brother,
                            status: SssStatus::Live,
                            merit: p.merit,
                        });
                        Ok(Step::Case(2))
                    }
                    None => {
                        self.push_front(OpenEntry {
                            path: parent.to_vec(),
                            state: parent_state,
                            status: SssStatus::Solved,
                            merit: p.merit,
                        });
                        Ok(Step::Case(3))
                    }
                }
            }
            SssStatus::Live if self.is_horizon(&p) => {
                let v = self.game.evaluate(&p.state);
                self.leaves.push(LeafEval {
                    key: self.game.state_key(&p.state),
                    value: v,
                });
                self.events.push(TraceEvent::Eval {
                    path: p.path.clone(),
                    value: v,
                });
                let merit = p.merit.min(v);
                let at = self
                    .open
                    .iter()
                    .position(|e| e.merit < merit || e.merit == merit && e.path > p.path)
                    .unwrap_or(self.open.len());
                self.open.insert(
                    at,
                    OpenEntry {
                        status: SssStatus::Solved,
                        merit,
                        ..p
                    },
                );
                self.max_open = self.max_open.max(self.open.len());
                if self.open.iter().all(|e| e.status == SssStatus::Solved) {
                    self.events.push(TraceEvent::Open(self.snapshot()));
                }
                Ok(Step::Case(4))
            }
            SssStatus::Live => {
                let moves = self.game.legal_moves(&p.state);
                let first = self
                    .game
                    .apply_move(&p.state, moves[0])
                    .expect("generated move is legal");
                match self.game.side_to_move(&first) {
                    Side::Max => {
                        let mut path = p.path.clone();
                        path.push(0);
                        self.push_front(OpenEntry {
                            path,
                            state: first,
                            status: SssStatus::Live,
                            merit: p.merit,
                        });
                        Ok(Step::Case(5))
                    }
                    Side::Min => {
                        for (i, &m) in moves.iter().enumerate().rev() {
                            let state = self.game.apply_move(&p.state, m).expect("generated move is legal");
                            if self.game.side_to_move(&state) != Side::Min {
                                return Err(SssError::NoCase(self.game.label(&p.state)));
                            }
                            let mut path = p.path.clone();
                            path.push(i as u16);
                            self.push_front(OpenEntry {
                                path,
                                state,
                                status: SssStatus::Live,
                                merit: p.merit,
                            });
                        }
                        Ok(Step::Case(6))
                    }
                }
            }
        }
    }

    pub fn run(mut self) -> Result<SssResult, SssError> {
        loop {
            if let Step::Done(value) = self.apply_gamma()? {
                return Ok(SssResult {
                    value,
                    leaves: self.leaves,
                    events: self.events,
                    max_open: self.max_open,
                    steps: self.steps,
                });
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SssResult {
    pub value: Value,
    /// Leaf evaluations in order, absolute values.
    pub leaves: Vec<LeafEval>,
    /// Evaluations and OPEN snapshots, interleaved in order. A snapshot is
    /// taken whenever every entry is solved.
    pub events: Vec<TraceEvent>,
    pub max_open: usize,
    pub steps: u64,
}

impl SssResult {
    pub fn snapshots(&self) -> Vec<&[OpenSnapshot]> {
        self.events
            .iter()
            .filter_map(|e| match e {
                TraceEvent::Open(s) => Some(s.as_slice()),
                TraceEvent::Eval { .. } => None,
            })
            .collect()
    }

    /// `EVAL <path> <value>` and `OPEN [...]` lines.
    pub fn trace_text(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            match e {
                TraceEvent::Eval { path, value } => {
                    let p: Vec<String> = path.iter().map(|o| o.to_string()).collect();
                    let p = if p.is_empty() { "root".to_string() } else { p.join(".") };
                    out.push_str(&format!("EVAL {p} {value}\n"));
                }
                TraceEvent::Open(s) => {
                    let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                    out.push_str(&format!("OPEN [{}]\n", items.join(", ")));
                }
            }
        }
        out
    }
}

/// Runs SSS* to horizon `depth` from `root`, which must be a MAX node.
pub fn sss_star<G: Game>(game: &G, root: G::State, depth: u32) -> Result<SssResult, SssError> {
    SssSearch::new(game, root, depth)?.run()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub ab_value: Value,
    pub sss_value: Value,
    pub ab_leaves: Vec<LeafEval>,
    pub sss_leaves: Vec<LeafEval>,
    pub first_divergence: Option<usize>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.first_divergence.is_none() && self.ab_value == self.sss_value
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict}: value ab={} sss={}, leaves ab={} sss={}",
            self.ab_value,
            self.sss_value,
            self.ab_leaves.len(),
            self.sss_leaves.len()
        )?;
        if let Some(i) = self.first_divergence {
            let show = |v: &[LeafEval]| {
                v.get(i)
                    .map(|l| format!("{:016x}={}", l.key, l.value))
                    .unwrap_or_else(|| "end".to_string())
            };
            write!(
                f,
                "; first divergence at leaf {i}: ab {} vs sss {}",
                show(&self.ab_leaves),
                show(&self.sss_leaves)
            )?;
        }
        Ok(())
    }
}

/// AB-SSS* with a lossless table and static ordering against SSS*.
pub fn equivalence_check<G: Game>(game: &G, root: G::State, depth: u32) -> Result<EquivalenceReport, SssError> {
    equivalence_check_with(game, root, depth, TtConfig::lossless())
}

/// As [`equivalence_check`] with a chosen table; lossy tables may diverge.
pub fn equivalence_check_with<G: Game>(
    game: &G,
    root: G::State,
    depth: u32,
    tt: TtConfig,
) -> Result<EquivalenceReport, SssError> {
    let sss = sss_star(game, root.clone(), depth)?;
    let mut ctx = SearchContext::new(game, tt)
        .with_ordering(MoveOrdering::Static)
        .with_leaf_trace();
    let ab = mtd::mtd_plus_inf(&mut ctx, &root, depth);
    let ab_leaves = ctx.stats.leaf_trace.take().unwrap_or_default();
    let first_divergence = ab_leaves
        .iter()
        .zip(&sss.leaves)
        .position(|(a, b)| a != b)
        .or_else(|| (ab_leaves.len() != sss.leaves.len()).then(|| ab_leaves.len().min(sss.leaves.len())));
    Ok(EquivalenceReport {
        ab_value: ab.value,
        sss_value: sss.value,
        ab_leaves,
        sss_leaves: sss.leaves,
        first_divergence,
    })
}
