//! The classic textbook example tree used to illustrate SSS*.
//!
//! ```text
//! a(MAX) ── b(MIN) ── c(MAX) ─┬─ d(MIN) ─┬─ e = 41
//!    │                        │          └─ n = 5
//!    │                        └─ f(MIN) ─── g = 12
//!    └───── h(MIN) ─┬─ i(MAX) ─┬─ j(MIN) ─── k = 34
//!                   │          └─ l(MIN) ─┬─ m = 36
//!                   │                     └─ o = 35
//!                   └─ p(MAX) ─┬─ q(MIN) ─┬─ s = 50
//!                              │          └─ t = 36
//!                              └─ r(MIN) ─── u (never visited)
//! ```
//!
//! The minimax value of `a` is 35 for every value of `u`.

use super::{mix64, Game, GameError, Move};
use crate::value::{Side, Value};

const NAMES: [char; 21] = [
    'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j', 'k', 'l', 'm', 'n', 'o', 'p', 'q', 'r', 's', 't', 'u',
];

/// Node handle; the index into the letter table `a..=u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PearlNode(u8);

impl PearlNode {
    pub fn from_name(c: char) -> Option<PearlNode> {
        NAMES.iter().position(|&n| n == c).map(|i| PearlNode(i as u8))
    }

    pub fn name(self) -> char {
        NAMES[self.0 as usize]
    }

    fn idx(self) -> usize {
        self.0 as usize
    }
}

fn n(c: char) -> u8 {
    NAMES.iter().position(|&x| x == c).unwrap() as u8
}

#[derive(Clone, Debug)]
pub struct PearlTree {
    children: Vec<Vec<u8>>,
    leaf_values: Vec<Option<Value>>,
    depth: Vec<u32>,
}

impl Default for PearlTree {
    fn default() -> Self {
        PearlTree::new(0)
    }
}

impl PearlTree {
    /// Builds the tree with the given value for the unvisited leaf `u`.
    pub fn new(u_value: Value) -> PearlTree {
        let mut children = vec![Vec::new(); NAMES.len()];
        let edges: [(char, &str); 12] = [
            ('a', "bh"),
            ('b', "c"),
            ('c', "df"),
            ('d', "en"),
            ('f', "g"),
            ('h', "ip"),
            ('i', "jl"),
            ('j', "k"),
            ('l', "mo"),
            ('p', "qr"),
            ('q', "st"),
            ('r', "u"),
        ];
        for (parent, kids) in edges {
            children[n(parent) as usize] = kids.chars().map(n).collect();
        }
        let mut leaf_values = vec![None; NAMES.len()];
        for (leaf, v) in [
            ('e', 41),
            ('g', 12),
            ('k', 34),
            ('m', 36),
            ('n', 5),
            ('o', 35),
            ('s', 50),
            ('t', 36),
            ('u', u_value),
        ] {
            leaf_values[n(leaf) as usize] = Some(v);
        }
        let mut depth = vec![0; NAMES.len()];
        let mut stack = vec![0u8];
        while let Some(p) = stack.pop() {
            for &c in &children[p as usize] {
                depth[c as usize] = depth[p as usize] + 1;
                stack.push(c);
            }
        }
        PearlTree {
            children,
            leaf_values,
            depth,
        }
    }

    pub fn node(&self, name: char) -> PearlNode {
        PearlNode::from_name(name).expect("unknown node name")
    }

    /// Uniform depth of the tree (all leaves sit at ply 4).
    pub fn height(&self) -> u32 {
        4
    }
}

impl Game for PearlTree {
    type State = PearlNode;

    fn root(&self) -> PearlNode {
        PearlNode(0)
    }

    fn legal_moves(&self, s: &PearlNode) -> Vec<Move> {
        self.children[s.idx()]
            .iter()
            .enumerate()
            .map(|(i, &c)| Move::new(i as u16, c as u32))
            .collect()
    }

    fn apply_move(&self, s: &PearlNode, m: Move) -> Result<PearlNode, GameError> {
        match self.children[s.idx()].get(m.ordinal as usize) {
            Some(&c) if c as u32 == m.code => Ok(PearlNode(c)),
            _ => Err(GameError::IllegalMove {
                mv: m,
                state: s.name().to_string(),
            }),
        }
    }

    /// Leaf values are fixed; an interior node cut off by the horizon scores
    /// as its leftmost leaf.
    fn evaluate(&self, s: &PearlNode) -> Value {
        let mut cur = s.idx();
        loop {
            if let Some(v) = self.leaf_values[cur] {
                return v;
            }
            cur = self.children[cur][0] as usize;
        }
    }

    fn state_key(&self, s: &PearlNode) -> u64 {
        mix64(0x5045_4152_4c00 + s.0 as u64)
    }

    fn side_to_move(&self, s: &PearlNode) -> Side {
        if self.depth[s.idx()].is_multiple_of(2) {
            Side::Max
        } else {
            Side::Min
        }
    }

    fn ply(&self, s: &PearlNode) -> u32 {
        self.depth[s.idx()]
    }

    fn history_slots(&self) -> usize {
        2
    }

    fn history_slot(&self, _s: &PearlNode, m: Move) -> usize {
        m.ordinal as usize
    }

    fn label(&self, s: &PearlNode) -> String {
        s.name().to_string()
    }

    fn move_name(&self, _s: &PearlNode, m: Move) -> String {
        format!("to-{}", NAMES[m.code as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::minimax;

    #[test]
    fn root_children_are_b_then_h() {
        let t = PearlTree::default();
        let names: Vec<char> = t
            .legal_moves(&t.root())
            .into_iter()
            .map(|m| t.apply_move(&t.root(), m).unwrap().name())
            .collect();
        assert_eq!(names, vec!['b', 'h']);
    }

    #[test]
    fn leaves_have_no_moves_and_fixed_values() {
        let t = PearlTree::default();
        assert!(t.legal_moves(&t.node('e')).is_empty());
        assert_eq!(t.evaluate(&t.node('m')), 36);
        assert_eq!(t.evaluate(&t.node('n')), 5);
    }

    #[test]
    fn moving_to_h() {
        let t = PearlTree::default();
        let a = t.root();
        let m = t.legal_moves(&a)[1];
        assert_eq!(t.apply_move(&a, m).unwrap(), t.node('h'));
        assert!(t.apply_move(&a, Move::new(5, 0)).is_err());
    }

    #[test]
    fn root_value_is_35_for_any_u() {
        for u in [-1000, -50, 0, 35, 36, 99, 1000] {
            let t = PearlTree::new(u);
            assert_eq!(minimax(&t, &t.root(), 4), 35, "u = {u}");
        }
    }

    #[test]
    fn keys_are_distinct() {
        let t = PearlTree::default();
        let mut keys: Vec<u64> = (0..21).map(|i| t.state_key(&PearlNode(i))).collect();
        keys.sort_unstable();
        keys.dedup();
        assert_eq!(keys.len(), 21);
    }
}
