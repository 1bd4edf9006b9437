//! Transposition table holding a lower and an upper bound per position.
//!
//! One entry per slot, slot = `key mod 2^bits`, with the full key kept for
//! verification. `Lossless` mode never evicts and backs the oracle tests.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::value::{Value, VALUE_INF};

/// Depth recorded for exact scores of finished games: usable at any horizon.
pub const TERMINAL_DEPTH: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundsEntry {
    pub key: u64,
    /// Lower bound f⁻ (`-VALUE_INF` when unknown).
    pub lower: Value,
    /// Upper bound f⁺ (`VALUE_INF` when unknown).
    pub upper: Value,
    /// Ordinal of the best move found so far.
    pub best_move: Option<u16>,
    pub depth: u32,
}

impl BoundsEntry {
    fn empty(key: u64, depth: u32) -> BoundsEntry {
        BoundsEntry {
            key,
            lower: -VALUE_INF,
            upper: VALUE_INF,
            best_move: None,
            depth,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    fn apply(&mut self, kind: BoundKind, value: Value) {
        match kind {
            BoundKind::Lower => {
                self.lower = value;
                if self.upper < value {
                    self.upper = VALUE_INF;
                }
            }
            BoundKind::Upper => {
                self.upper = value;
                if self.lower > value {
                    self.lower = -VALUE_INF;
                }
            }
            BoundKind::Exact => {
                self.lower = value;
                self.upper = value;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Replacement {
    /// Keep the entry searched to the greater depth; ties go to the newcomer.
    #[default]
    DeepPreferred,
    Always,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableSize {
    Bits(u8),
    Lossless,
}

impl fmt::Display for TableSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableSize::Bits(b) => write!(f, "{b}"),
            TableSize::Lossless => f.write_str("lossless"),
        }
    }
}

impl FromStr for TableSize {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("lossless") {
            return Ok(TableSize::Lossless);
        }
        let bits: u8 = s.parse().map_err(|e| format!("table size {s:?}: {e}"))?;
        if !(4..=30).contains(&bits) {
            return Err(format!("table bits must lie in 4..=30, got {bits}"));
        }
        Ok(TableSize::Bits(bits))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TtConfig {
    pub size: TableSize,
    pub replacement: Replacement,
}

impl TtConfig {
    pub fn bits(bits: u8) -> TtConfig {
        assert!(bits >= 4, "tables hold at least 2^4 entries");
        TtConfig {
            size: TableSize::Bits(bits),
            replacement: Replacement::DeepPreferred,
        }
    }

    pub fn lossless() -> TtConfig {
        TtConfig {
            size: TableSize::Lossless,
            replacement: Replacement::DeepPreferred,
        }
    }

    pub fn with_replacement(mut self, r: Replacement) -> Self {
        self.replacement = r;
        self
    }
}

impl Default for TtConfig {
    fn default() -> Self {
        TtConfig::bits(21)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TtStats {
    pub probes: u64,
    pub hits: u64,
    pub stores: u64,
    pub evictions: u64,
    /// Stores dropped by the replacement policy.
    pub rejected: u64,
    pub occupancy: u64,
}

#[derive(Clone, Debug)]
enum Slots {
    Fixed { mask: u64, slots: Vec<Option<BoundsEntry>> },
    Lossless(HashMap<u64, BoundsEntry>),
}

#[derive(Clone, Debug)]
pub struct TranspositionTable {
    config: TtConfig,
    slots: Slots,
    stats: TtStats,
}

impl TranspositionTable {
    pub fn new(config: TtConfig) -> TranspositionTable {
        let slots = match config.size {
            TableSize::Bits(bits) => Slots::Fixed {
                mask: (1u64 << bits) - 1,
                slots: vec![None; 1usize << bits],
            },
            TableSize::Lossless => Slots::Lossless(HashMap::new()),
        };
        TranspositionTable {
            config,
            slots,
            stats: TtStats::default(),
        }
    }

    pub fn config(&self) -> TtConfig {
        self.config
    }

    /// Slot count, or `None` in lossless mode.
    pub fn capacity(&self) -> Option<usize> {
        match &self.slots {
            Slots::Fixed { slots, .. } => Some(slots.len()),
            Slots::Lossless(_) => None,
        }
    }

    pub fn probe(&mut self, key: u64) -> Option<BoundsEntry> {
        self.stats.probes += 1;
        let found = self.peek(key);
        if found.is_some() {
            self.stats.hits += 1;
        }
        found
    }

    /// Lookup without touching the statistics.
    pub fn peek(&self, key: u64) -> Option<BoundsEntry> {
        match &self.slots {
            Slots::Fixed { mask, slots } => slots[(key & mask) as usize].filter(|e| e.key == key),
            Slots::Lossless(map) => map.get(&key).copied(),
        }
    }

    pub fn store(&mut self, key: u64, depth: u32, kind: BoundKind, value: Value, best_move: Option<u16>) {
        debug_assert!(value > -VALUE_INF && value < VALUE_INF, "sentinel stored");
        self.stats.stores += 1;
        let policy = self.config.replacement;
        let slot: &mut Option<BoundsEntry> = match &mut self.slots {
            Slots::Fixed { mask, slots } => &mut slots[(key & *mask) as usize],
            Slots::Lossless(map) => {
                let existing = map.get(&key).copied();
                let mut tmp = existing;
                let outcome = merge(&mut tmp, key, depth, kind, value, best_move, policy);
                if let Some(e) = tmp {
                    map.insert(key, e);
                }
                self.record(outcome);
                return;
            }
        };
        let outcome = merge(slot, key, depth, kind, value, best_move, policy);
        self.record(outcome);
    }

    fn record(&mut self, outcome: StoreOutcome) {
        match outcome {
            StoreOutcome::Inserted => self.stats.occupancy += 1,
            StoreOutcome::Evicted => self.stats.evictions += 1,
            StoreOutcome::Rejected => self.stats.rejected += 1,
            StoreOutcome::Merged | StoreOutcome::Replaced => {}
        }
    }

    pub fn clear(&mut self) {
        match &mut self.slots {
            Slots::Fixed { slots, .. } => slots.iter_mut().for_each(|s| *s = None),
            Slots::Lossless(map) => map.clear(),
        }
        self.stats = TtStats::default();
    }

    pub fn stats(&self) -> TtStats {
        self.stats
    }

    /// Every stored entry, in unspecified order.
    pub fn entries(&self) -> Vec<BoundsEntry> {
        match &self.slots {
            Slots::Fixed { slots, .. } => slots.iter().flatten().copied().collect(),
            Slots::Lossless(map) => map.values().copied().collect(),
        }
    }
}

enum StoreOutcome {
    Inserted,
    Merged,
    Replaced,
    Evicted,
    Rejected,
}

fn merge(
    slot: &mut Option<BoundsEntry>,
    key: u64,
    depth: u32,
    kind: BoundKind,
    value: Value,
    best_move: Option<u16>,
    policy: Replacement,
) -> StoreOutcome {
    let fresh = |carried: Option<u16>| {
        let mut e = BoundsEntry::empty(key, depth);
        e.apply(kind, value);
        e.best_move = best_move.or(carried);
        e
    };
    match slot {
        None => {
            *slot = Some(fresh(None));
            StoreOutcome::Inserted
        }
        Some(old) if old.key == key => {
            if old.depth == depth {
                old.apply(kind, value);
                if best_move.is_some() {
                    old.best_move = best_move;
                }
                StoreOutcome::Merged
            } else if depth > old.depth || policy == Replacement::Always {
                let carried = old.best_move;
                *slot = Some(fresh(carried));
                StoreOutcome::Replaced
            } else {
                StoreOutcome::Rejected
            }
        }
        Some(old) => {
            if depth >= old.depth || policy == Replacement::Always {
                *slot = Some(fresh(None));
                StoreOutcome::Evicted
            } else {
                StoreOutcome::Rejected
            }
        }
    }
}
