//! MTD drivers: sequences of `MT` calls that close in on the minimax value.
//!
//! Every driver keeps a proven lower bound `f_minus` and upper bound
//! `f_plus` on the root value. Each pass tests a bound strictly above
//! `f_minus` and at most `f_plus`; a fail low tightens `f_plus`, a fail high
//! tightens `f_minus`, and the search ends when the two meet.

use thiserror::Error;

use crate::game::{Game, Move};
use crate::search::SearchContext;
use crate::tt::BoundKind;
use crate::value::{clamp_gamma, Side, Value, VALUE_INF};

/// Driver state after a pass, as seen by a bound-update policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MtdState {
    pub f_minus: Value,
    pub f_plus: Value,
    /// The bound just tested.
    pub bound: Value,
    /// The value `MT` returned for it.
    pub g: Value,
    pub mt_calls: u32,
}

/// One `MT` call and the bounds it left behind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MtdPass {
    pub gamma: Value,
    pub g: Value,
    pub f_minus: Value,
    pub f_plus: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MtdResult {
    pub value: Value,
    pub passes: Vec<MtdPass>,
}

impl MtdResult {
    pub fn mt_calls(&self) -> u32 {
        self.passes.len() as u32
    }

    /// The `MT` return values in call order.
    pub fn returns(&self) -> Vec<Value> {
        self.passes.iter().map(|p| p.g).collect()
    }

    pub fn bounds_tested(&self) -> Vec<Value> {
        self.passes.iter().map(|p| p.gamma).collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MtdError {
    #[error("bound {bound} outside ({f_minus}, {f_plus}]")]
    BoundOutOfRange {
        bound: Value,
        f_minus: Value,
        f_plus: Value,
    },
    #[error("root has no moves")]
    NoMoves,
}

/// The generic driver, starting from the open interval `(-inf, +inf)`.
pub fn mtd<G: Game>(
    ctx: &mut SearchContext<'_, G>,
    s: &G::State,
    depth: u32,
    first: Value,
    next: impl FnMut(&MtdState) -> Value,
) -> Result<MtdResult, MtdError> {
    mtd_within(ctx, s, depth, (-VALUE_INF, VALUE_INF), first, next)
}

/// The generic driver with known starting bounds `lo <= f <= hi`.
pub fn mtd_within<G: Game>(
    ctx: &mut SearchContext<'_, G>,
    s: &G::State,
    depth: u32,
    (lo, hi): (Value, Value),
    first: Value,
    mut next: impl FnMut(&MtdState) -> Value,
) -> Result<MtdResult, MtdError> {
    let mut st = MtdState {
        f_minus: lo,
        f_plus: hi,
        bound: first,
        g: first,
        mt_calls: 0,
    };
    let mut passes = Vec::new();
    if lo >= hi {
        return Ok(MtdResult { value: lo, passes });
    }
    loop {
        if !(st.f_minus < st.bound && st.bound <= st.f_plus) {
            return Err(MtdError::BoundOutOfRange {
                bound: st.bound,
                f_minus: st.f_minus,
                f_plus: st.f_plus,
            });
        }
        let g = ctx.mt(s, depth, st.bound);
        st.g = g;
        st.mt_calls += 1;
        if g < st.bound {
            st.f_plus = g;
        } else {
            st.f_minus = g;
        }
        passes.push(MtdPass {
            gamma: st.bound,
            g,
            f_minus: st.f_minus,
            f_plus: st.f_plus,
        });
        if st.f_minus >= st.f_plus {
            return Ok(MtdResult { value: g, passes });
        }
        st.bound = next(&st);
    }
}

fn builtin(r: Result<MtdResult, MtdError>) -> MtdResult {
    r.expect("built-in bound policies stay inside (f_minus, f_plus]")
}

/// AB-SSS*: start at `+inf` and descend through upper bounds.
pub fn mtd_plus_inf<G: Game>(ctx: &mut SearchContext<'_, G>, s: &G::State, depth: u32) -> MtdResult {
    builtin(mtd(ctx, s, depth, VALUE_INF, |st| st.g))
}

/// AB-DUAL*: start at `-inf` and ascend through lower bounds.
pub fn mtd_minus_inf<G: Game>(ctx: &mut SearchContext<'_, G>, s: &G::State, depth: u32) -> MtdResult {
    builtin(mtd(ctx, s, depth, -VALUE_INF + 1, |st| st.g + 1))
}

/// MTD(f): start at a guess, then step to whichever side the last test
/// failed on.
pub fn mtd_f<G: Game>(ctx: &mut SearchContext<'_, G>, s: &G::State, depth: u32, first_guess: Value) -> MtdResult {
    builtin(mtd(ctx, s, depth, clamp_gamma(first_guess), |st| {
        if st.g < st.bound {
            st.g
        } else {
            st.g + 1
        }
    }))
}

/// MTD(bi): test the midpoint of the remaining interval. Uses the game's
/// value range as the starting interval when it is known.
pub fn mtd_bi<G: Game>(ctx: &mut SearchContext<'_, G>, s: &G::State, depth: u32) -> MtdResult {
    let range = ctx.game().value_bounds().unwrap_or((-VALUE_INF, VALUE_INF));
    let first = bisect(range.0, range.1);
    builtin(mtd_within(ctx, s, depth, range, first, |st| {
        bisect(st.f_minus, st.f_plus)
    }))
}

/// Floor of the midpoint, raised to `f_minus + 1` so every pass makes
/// progress.
pub fn bisect(f_minus: Value, f_plus: Value) -> Value {
    let mid = (f_minus as i64 + f_plus as i64).div_euclid(2) as Value;
    mid.clamp(f_minus + 1, f_plus)
}

/// MTD(step): descend from `+inf` in jumps of `stepsize`. A step of 1 tests
/// the last upper bound itself, exactly like AB-SSS*.
///
/// # Panics
///
/// If `stepsize < 1`.
pub fn mtd_step<G: Game>(ctx: &mut SearchContext<'_, G>, s: &G::State, depth: u32, stepsize: Value) -> MtdResult {
    assert!(stepsize >= 1, "stepsize must be positive");
    builtin(mtd(ctx, s, depth, VALUE_INF, |st| {
        (st.f_minus + 1).max(st.g.saturating_sub(stepsize - 1))
    }))
}

/// Bounds on one root move's value, from the root mover's point of view
/// translated back to absolute values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootMoveBounds {
    pub mv: Move,
    pub lower: Value,
    pub upper: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MtdBestResult {
    pub best: Move,
    pub mt_calls: u32,
    pub moves: Vec<RootMoveBounds>,
}

impl MtdBestResult {
    fn best_bounds(&self) -> RootMoveBounds {
        *self.moves.iter().find(|b| b.mv == self.best).unwrap()
    }

    /// The proven bound on the root value that the best move guarantees:
    /// a lower bound at a MAX root, an upper bound at a MIN root.
    pub fn guaranteed(&self, root_side: Side) -> Value {
        let b = self.best_bounds();
        match root_side {
            Side::Max => b.lower,
            Side::Min => b.upper,
        }
    }
}

/// MTD(best), prove-best variant: find a move whose lower bound is at least
/// every other move's upper bound, without resolving the exact value.
///
/// The presumed best move is the stored best move (or the first in order).
/// Its lower bound comes from tests descending from `first_guess`; every
/// other move is then tested just above that bound. A move that passes has
/// proven a higher lower bound and becomes the presumed best.
pub fn mtd_best<G: Game>(
    ctx: &mut SearchContext<'_, G>,
    s: &G::State,
    depth: u32,
    first_guess: Value,
) -> Result<MtdBestResult, MtdError> {
    let game = ctx.game();
    let mut moves = game.legal_moves(s);
    if moves.is_empty() {
        return Err(MtdError::NoMoves);
    }
    let key = game.state_key(s);
    let tt_move = ctx.tt().peek(key).and_then(|e| e.best_move);
    ctx.order_moves(s, &mut moves, tt_move);
    let side = game.side_to_move(s);
    let n = moves.len();
    let mut lo = vec![-VALUE_INF; n];
    let mut hi = vec![VALUE_INF; n];
    let mut calls = 0;
    let mut b = 0;

    if n > 1 {
        let children: Vec<G::State> = moves.iter().map(|&m| ctx.child(s, m)).collect();
        let d = depth.saturating_sub(1);
        // Does child i reach `t` from the root mover's point of view?
        let mut test = |ctx: &mut SearchContext<'_, G>, i: usize, t: Value| -> (bool, Value) {
            calls += 1;
            match side {
                Side::Max => {
                    let g = ctx.mt(&children[i], d, t);
                    (g >= t, g)
                }
                Side::Min => {
                    let g = ctx.mt(&children[i], d, -t + 1);
                    (g < -t + 1, -g)
                }
            }
        };

        let mut t = clamp_gamma(first_guess);
        loop {
            let (high, v) = test(ctx, b, t);
            if high {
                lo[b] = lo[b].max(v);
                break;
            }
            hi[b] = hi[b].min(v);
            t = clamp_gamma(v);
        }

        'retarget: loop {
            for j in 0..n {
                if j == b || hi[j] <= lo[b] {
                    continue;
                }
                let (high, v) = test(ctx, j, lo[b] + 1);
                if high {
                    lo[j] = lo[j].max(v);
                    b = j;
                    continue 'retarget;
                }
                hi[j] = hi[j].min(v);
            }
            break;
        }
        ctx.tt_mut()
            .store(key, depth, BoundKind::Lower, lo[b], Some(moves[b].ordinal));
    }

    let bounds = moves
        .iter()
        .zip(lo.iter().zip(&hi))
        .map(|(&mv, (&l, &h))| match side {
            Side::Max => RootMoveBounds { mv, lower: l, upper: h },
            Side::Min => RootMoveBounds {
                mv,
                lower: -h,
                upper: -l,
            },
        })
        .collect();
    Ok(MtdBestResult {
        best: moves[b],
        mt_calls: calls,
        moves: bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Branching, PearlTree, SynthTreeConfig, SyntheticTree};
    use crate::search::MoveOrdering;
    use crate::test_support::minimax;
    use crate::tt::TtConfig;

    fn pearl_ctx(t: &PearlTree) -> SearchContext<'_, PearlTree> {
        SearchContext::new(t, TtConfig::lossless()).with_ordering(MoveOrdering::Static)
    }

    fn constant_tree(v: Value) -> SyntheticTree {
        let cfg = SynthTreeConfig::new(4, Branching::fixed(3), 3).with_values(v, v);
        SyntheticTree::generate(&cfg).unwrap()
    }

    #[test]
    fn sss_on_pearl() {
        let t = PearlTree::default();
        let mut ctx = pearl_ctx(&t);
        let r = mtd_plus_inf(&mut ctx, &t.root(), 4);
        assert_eq!(r.value, 35);
        assert_eq!(r.returns(), vec![41, 36, 35, 35]);
        assert_eq!(r.bounds_tested(), vec![VALUE_INF, 41, 36, 35]);
    }

    #[test]
    fn every_driver_on_pearl() {
        let t = PearlTree::default();
        let a = t.root();
        assert_eq!(mtd_minus_inf(&mut pearl_ctx(&t), &a, 4).value, 35);
        assert_eq!(mtd_bi(&mut pearl_ctx(&t), &a, 4).value, 35);
        assert_eq!(mtd_step(&mut pearl_ctx(&t), &a, 4, 3).value, 35);
        for guess in [-500, 0, 34, 35, 36, 500, VALUE_INF, -VALUE_INF] {
            assert_eq!(mtd_f(&mut pearl_ctx(&t), &a, 4, guess).value, 35);
        }
    }

    #[test]
    fn mtdf_exact_guess_takes_two_calls() {
        let t = PearlTree::default();
        let r = mtd_f(&mut pearl_ctx(&t), &t.root(), 4, 35);
        assert_eq!(r.value, 35);
        assert_eq!(r.returns(), vec![35, 35]);
        assert_eq!(r.bounds_tested(), vec![35, 36]);
    }

    #[test]
    fn mtdf_from_infinity_is_sss() {
        let t = PearlTree::default();
        let a = mtd_f(&mut pearl_ctx(&t), &t.root(), 4, VALUE_INF);
        let b = mtd_plus_inf(&mut pearl_ctx(&t), &t.root(), 4);
        assert_eq!(a, b);
    }

    #[test]
    fn unit_step_is_sss() {
        let t = PearlTree::default();
        let a = mtd_step(&mut pearl_ctx(&t), &t.root(), 4, 1);
        let b = mtd_plus_inf(&mut pearl_ctx(&t), &t.root(), 4);
        assert_eq!(a, b);
    }

    #[test]
    fn huge_step_drops_to_a_dual_confirmation() {
        for seed in 0..30 {
            let cfg = SynthTreeConfig::new(seed, Branching::range(2, 4), 4);
            let t = SyntheticTree::generate(&cfg).unwrap();
            let mut ctx = SearchContext::new(&t, TtConfig::lossless());
            let r = mtd_step(&mut ctx, &t.root(), 4, 1000);
            assert_eq!(r.value, minimax(&t, &t.root(), 4));
            let b = r.bounds_tested();
            assert_eq!(b[0], VALUE_INF);
            // The second test lies below every leaf, so it must fail high.
            if b.len() > 1 {
                assert!(b[1] <= cfg.value_min, "seed {seed}");
                assert!(r.passes[1].g >= b[1]);
            }
            // From then on every test sits just above the best lower bound.
            for w in r.passes.windows(2).skip(1) {
                assert_eq!(w[1].gamma, w[0].f_minus + 1, "seed {seed}");
            }
        }
    }

    #[test]
    fn constant_tree_all_drivers() {
        let t = constant_tree(7);
        let root = t.root();
        let fresh = || SearchContext::new(&t, TtConfig::lossless());
        assert_eq!(mtd_plus_inf(&mut fresh(), &root, 3).value, 7);
        assert_eq!(mtd_minus_inf(&mut fresh(), &root, 3).value, 7);
        for g in [-50, 7, 90] {
            assert_eq!(mtd_f(&mut fresh(), &root, 3, g).value, 7);
        }
        assert_eq!(mtd_step(&mut fresh(), &root, 3, 5).value, 7);
    }

    #[test]
    fn bisection_on_constant_tree_in_range() {
        let t = constant_tree(7);
        let mut ctx = SearchContext::new(&t, TtConfig::lossless());
        let r = mtd_within(&mut ctx, &t.root(), 3, (-100, 100), bisect(-100, 100), |st| {
            bisect(st.f_minus, st.f_plus)
        })
        .unwrap();
        assert_eq!(r.value, 7);
        assert!(r.mt_calls() <= 9, "{r:?}");
    }

    #[test]
    fn bisect_clamps_low() {
        assert_eq!(bisect(4, 5), 5);
        assert_eq!(bisect(-5, -4), -4);
        assert_eq!(bisect(-100, 100), 0);
        assert_eq!(bisect(-VALUE_INF, VALUE_INF), 0);
        assert_eq!(bisect(-3, 0), -2);
    }

    #[test]
    fn single_leaf_root() {
        let t = constant_tree(-12);
        let mut ctx = SearchContext::new(&t, TtConfig::lossless());
        let r = mtd_minus_inf(&mut ctx, &t.root(), 0);
        assert_eq!(r.value, -12);
        let mut ctx = SearchContext::new(&t, TtConfig::lossless());
        let r = mtd_plus_inf(&mut ctx, &t.root(), 0);
        assert_eq!(r.value, -12);
        assert!(r.mt_calls() <= 2);
    }

    #[test]
    fn max_node_over_three_leaves() {
        let t = SyntheticTree::generate(&SynthTreeConfig::new(2, Branching::fixed(3), 1)).unwrap();
        let vals: Vec<Value> = t
            .legal_moves(&t.root())
            .into_iter()
            .map(|m| t.evaluate(&t.apply_move(&t.root(), m).unwrap()))
            .collect();
        let top = *vals.iter().max().unwrap();
        let mut ctx = SearchContext::new(&t, TtConfig::lossless());
        let r = mtd_plus_inf(&mut ctx, &t.root(), 1);
        assert_eq!(r.value, top);
        assert_eq!(r.returns(), vec![top, top]);
    }

    #[test]
    fn bad_policy_is_rejected() {
        let t = PearlTree::default();
        let mut ctx = pearl_ctx(&t);
        let err = mtd(&mut ctx, &t.root(), 4, VALUE_INF, |st| st.g + 1).unwrap_err();
        assert_eq!(
            err,
            MtdError::BoundOutOfRange {
                bound: 42,
                f_minus: -VALUE_INF,
                f_plus: 41
            }
        );
    }

    #[test]
    fn mtd_best_on_pearl_picks_h() {
        let t = PearlTree::default();
        let mut ctx = pearl_ctx(&t);
        let r = mtd_best(&mut ctx, &t.root(), 4, 35).unwrap();
        assert_eq!(t.apply_move(&t.root(), r.best).unwrap(), t.node('h'));
        let b = r.moves[0];
        assert!(b.upper <= 12 || b.upper <= r.guaranteed(Side::Max));
        assert!(r.guaranteed(Side::Max) <= 35);
    }

    #[test]
    fn mtd_best_single_move() {
        let t = SyntheticTree::generate(&SynthTreeConfig::new(2, Branching::fixed(1), 3)).unwrap();
        let mut ctx = SearchContext::new(&t, TtConfig::lossless());
        let r = mtd_best(&mut ctx, &t.root(), 3, 0).unwrap();
        assert_eq!(r.best.ordinal, 0);
        assert_eq!(r.mt_calls, 0);
    }

    #[test]
    fn mtd_best_no_moves() {
        let t = constant_tree(1);
        let mut leaf = t.root();
        while let Some(&m) = t.legal_moves(&leaf).first() {
            leaf = t.apply_move(&leaf, m).unwrap();
        }
        let mut ctx = SearchContext::new(&t, TtConfig::lossless());
        assert_eq!(mtd_best(&mut ctx, &leaf, 2, 0).unwrap_err(), MtdError::NoMoves);
    }
}
