//! Memory-enhanced null-window game-tree search.
//!
//! The crate provides full-window Alpha-Beta with a transposition table, the
//! null-window test `MT`, the MTD family of drivers built from repeated `MT`
//! calls (AB-SSS*, AB-DUAL*, MTD(f), MTD(bi), MTD(step), MTD(best)),
//! Aspiration NegaScout, iterative deepening, and an executable Stockman SSS*
//! used as a differential oracle. The [`harness`] module runs the comparison
//! experiments and writes CSV.
//!
//! Searches are generic over the [`Game`] trait. Values handed to and
//! returned from the public search API are absolute: positive favours MAX.
//!
//! ```
//! use mtsearch::{mtd, Game, MoveOrdering, PearlTree, SearchContext, TtConfig};
//!
//! let tree = PearlTree::default();
//! let mut ctx = SearchContext::new(&tree, TtConfig::lossless()).with_ordering(MoveOrdering::Static);
//! let r = mtd::mtd_plus_inf(&mut ctx, &tree.root(), 4);
//! assert_eq!(r.value, 35);
//! assert_eq!(r.returns(), vec![41, 36, 35, 35]);
//! ```

pub mod game;
pub mod harness;
pub mod mtd;
pub mod search;
pub mod sss;
pub mod tt;
pub mod value;

pub use game::{
    load_positions, parse_positions, Branching, Game, GameError, Move, Othello6, OthelloState, PearlNode, PearlTree,
    PositionEntry, SynthNodeId, SynthTreeConfig, SyntheticTree,
};
pub use mtd::{MtdError, MtdPass, MtdResult};
pub use search::{
    Algorithm, DepthSchedule, GuessPolicy, IdConfig, IdResult, IterationResult, LeafEval, MoveOrdering, PlyStats,
    SearchContext, SearchStats, Visit,
};
pub use sss::{EquivalenceReport, OpenEntry, SssResult, SssStatus};
pub use tt::{BoundKind, BoundsEntry, Replacement, TableSize, TranspositionTable, TtConfig, TtStats};
pub use value::{Side, Value, Window, VALUE_INF};
