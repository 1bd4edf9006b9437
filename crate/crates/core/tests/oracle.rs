mod common;

use common::{minimax, tree};
use mtsearch::sss::{equivalence_check, equivalence_check_with, sss_star, SssSearch, Step};
use mtsearch::{Branching, Game, MoveOrdering, SearchContext, SynthTreeConfig, SyntheticTree, TtConfig, Window};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn sss_matches_ab_sss_leaf_for_leaf(seed in any::<u64>(), w in 2u32..=4, d in 1u32..=5) {
        let t = tree(seed, 2, w, d);
        let r = equivalence_check(&t, t.root(), d).unwrap();
        prop_assert!(r.passed(), "{}", r);
        prop_assert_eq!(r.sss_value, minimax(&t, &t.root(), d));
    }

    #[test]
    fn front_merit_bounds_the_root_and_never_rises(seed in any::<u64>(), w in 2u32..=4, d in 1u32..=5) {
        let t = tree(seed, 2, w, d);
        let f = minimax(&t, &t.root(), d);
        let mut s = SssSearch::new(&t, t.root(), d).unwrap();
        let mut last = None;
        loop {
            let step = s.apply_gamma().unwrap();
            if let Step::Done(v) = step {
                prop_assert_eq!(v, f);
                break;
            }
            // Checkpoint: every entry solved, so pass one is over.
            if s.open().iter().all(|e| e.status == mtsearch::SssStatus::Solved) {
                let front = s.open().front().unwrap().merit;
                prop_assert!(front >= f);
                if let Some(prev) = last {
                    prop_assert!(front <= prev);
                }
                last = Some(front);
            }
        }
    }

    #[test]
    fn open_list_fits_a_max_solution_tree(seed in any::<u64>(), w in 2u32..=4, d in 1u32..=6) {
        let t = SyntheticTree::generate(&SynthTreeConfig::new(seed, Branching::fixed(w), d)).unwrap();
        let r = sss_star(&t, t.root(), d).unwrap();
        prop_assert!(r.max_open <= (w as usize).pow(d.div_ceil(2)), "{} entries", r.max_open);
    }

    #[test]
    fn static_dominance_over_alpha_beta(seed in any::<u64>(), w in 2u32..=4, d in 1u32..=6) {
        let t = tree(seed, 2, w, d);
        let sss = sss_star(&t, t.root(), d).unwrap();
        let mut ctx = SearchContext::new(&t, TtConfig::lossless()).with_ordering(MoveOrdering::Static);
        let ab = ctx.alpha_beta(&t.root(), d, Window::FULL);
        prop_assert_eq!(ab, sss.value);
        prop_assert!(sss.leaves.len() as u64 <= ctx.stats.leaf_evals);
    }
}

#[test]
fn lossy_table_may_diverge_but_stays_correct() {
    let mut diverged = 0;
    for seed in 0..100 {
        let t = tree(seed, 3, 4, 5);
        let r = equivalence_check_with(&t, t.root(), 5, TtConfig::bits(4)).unwrap();
        assert_eq!(r.ab_value, r.sss_value);
        diverged += usize::from(r.first_divergence.is_some());
    }
    assert!(diverged > 0, "a 16-entry table should lose information somewhere");
}

#[test]
fn oracle_rejects_min_roots() {
    let t = tree(3, 2, 2, 3).negated_mirror();
    assert!(sss_star(&t, t.root(), 3).is_err());
}
