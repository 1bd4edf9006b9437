//! Othello on a 6x6 board.
//!
//! Bit `row * 6 + col` holds square `(col, row)`; squares are named `a1`..`f6`
//! with the column letter first. Black moves first and plays MAX. A side with
//! no legal placement must pass; two passes in a row end the game.

use std::fmt;

use super::{mix64, Game, GameError, Move};
use crate::value::{Side, Value};

pub const SIZE: u32 = 6;
pub const SQUARES: u32 = SIZE * SIZE;
const BOARD: u64 = (1u64 << SQUARES) - 1;
/// Move code used for a pass.
pub const PASS: u32 = SQUARES;

const COL_A: u64 = {
    let mut m = 0u64;
    let mut r = 0;
    while r < SIZE {
        m |= 1 << (r * SIZE);
        r += 1;
    }
    m
};
const COL_F: u64 = COL_A << (SIZE - 1);
const NOT_A: u64 = BOARD & !COL_A;
const NOT_F: u64 = BOARD & !COL_F;

/// Static move preference per square, lower first: corners, edges away from
/// corners, the centre, the inner ring, squares beside a corner and finally
/// the diagonal neighbours of corners.
#[rustfmt::skip]
const SQUARE_CLASS: [u8; SQUARES as usize] = [
    0, 4, 1, 1, 4, 0,
    4, 5, 3, 3, 5, 4,
    1, 3, 2, 2, 3, 1,
    1, 3, 2, 2, 3, 1,
    4, 5, 3, 3, 5, 4,
    0, 4, 1, 1, 4, 0,
];

/// Squares in move-generation order.
const SQUARE_ORDER: [u32; SQUARES as usize] = {
    let mut out = [0u32; SQUARES as usize];
    let mut n = 0;
    let mut class = 0;
    while class <= 5 {
        let mut sq = 0;
        while sq < SQUARES as usize {
            if SQUARE_CLASS[sq] == class {
                out[n] = sq as u32;
                n += 1;
            }
            sq += 1;
        }
        class += 1;
    }
    out
};

/// Position of each square within `SQUARE_ORDER`.
const SQUARE_RANK: [u8; SQUARES as usize] = {
    let mut out = [0u8; SQUARES as usize];
    let mut i = 0;
    while i < SQUARES as usize {
        out[SQUARE_ORDER[i] as usize] = i as u8;
        i += 1;
    }
    out
};

/// Squares that come before `sq` in generation order.
fn earlier_squares(sq: u32) -> u64 {
    SQUARE_ORDER[..SQUARE_RANK[sq as usize] as usize]
        .iter()
        .fold(0, |m, &s| m | 1u64 << s)
}

/// Scores of finished games sit outside the heuristic range.
const WIN_BONUS: Value = 500;

/// Shift by one step in direction `dir` (0..8), dropping squares that fall
/// off the board.
#[inline]
fn shift(bb: u64, dir: usize) -> u64 {
    match dir {
        0 => (bb << 1) & NOT_A,                  // east
        1 => (bb >> 1) & NOT_F,                  // west
        2 => (bb << SIZE) & BOARD,               // north (towards row 6)
        3 => bb >> SIZE,                         // south
        4 => (bb << (SIZE + 1)) & NOT_A & BOARD, // north-east
        5 => (bb << (SIZE - 1)) & NOT_F & BOARD, // north-west
        6 => (bb >> (SIZE - 1)) & NOT_A,         // south-east
        _ => (bb >> (SIZE + 1)) & NOT_F,         // south-west
    }
}

fn moves_bb(own: u64, opp: u64) -> u64 {
    let empty = BOARD & !(own | opp);
    let mut out = 0;
    for dir in 0..8 {
        let mut run = shift(own, dir) & opp;
        for _ in 0..(SIZE - 3) {
            run |= shift(run, dir) & opp;
        }
        out |= shift(run, dir) & empty;
    }
    out
}

fn flips(own: u64, opp: u64, sq: u32) -> u64 {
    let placed = 1u64 << sq;
    let mut out = 0;
    for dir in 0..8 {
        let mut line = 0;
        let mut cur = shift(placed, dir);
        while cur & opp != 0 {
            line |= cur;
            cur = shift(cur, dir);
        }
        if cur & own != 0 {
            out |= line;
        }
    }
    out
}

struct Zobrist {
    discs: [[u64; SQUARES as usize]; 2],
    white_to_move: u64,
}

const ZOBRIST: Zobrist = {
    let mut discs = [[0u64; SQUARES as usize]; 2];
    let mut state = 0x0123_4567_89ab_cdefu64;
    let mut c = 0;
    while c < 2 {
        let mut s = 0;
        while s < SQUARES as usize {
            state = const_mix(state);
            discs[c][s] = state;
            s += 1;
        }
        c += 1;
    }
    Zobrist {
        discs,
        white_to_move: const_mix(state),
    }
};

const fn const_mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut x = z;
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn full_key(black: u64, white: u64, side: Side) -> u64 {
    let mut k = 0;
    for sq in 0..SQUARES {
        if black >> sq & 1 == 1 {
            k ^= ZOBRIST.discs[0][sq as usize];
        }
        if white >> sq & 1 == 1 {
            k ^= ZOBRIST.discs[1][sq as usize];
        }
    }
    if side == Side::Min {
        k ^= ZOBRIST.white_to_move;
    }
    k
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct OthelloState {
    black: u64,
    white: u64,
    side: Side,
    ply: u32,
    key: u64,
}

impl OthelloState {
    pub fn initial() -> OthelloState {
        let sq = |name: &str| 1u64 << parse_square(name).unwrap();
        let black = sq("d3") | sq("c4");
        let white = sq("c3") | sq("d4");
        OthelloState {
            black,
            white,
            side: Side::Max,
            ply: 0,
            key: full_key(black, white, Side::Max),
        }
    }

    pub fn discs(&self) -> (u32, u32) {
        (self.black.count_ones(), self.white.count_ones())
    }

    fn own_opp(&self) -> (u64, u64) {
        match self.side {
            Side::Max => (self.black, self.white),
            Side::Min => (self.white, self.black),
        }
    }

    /// Recomputes the hash from scratch; equals the incrementally kept key.
    pub fn recomputed_key(&self) -> u64 {
        full_key(self.black, self.white, self.side)
    }

    pub fn board_string(&self) -> String {
        let mut s = String::new();
        for row in (0..SIZE).rev() {
            for col in 0..SIZE {
                let bit = 1u64 << (row * SIZE + col);
                s.push(if self.black & bit != 0 {
                    'X'
                } else if self.white & bit != 0 {
                    'O'
                } else {
                    '.'
                });
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for OthelloState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Othello(ply {}, {} to move, {:09x}/{:09x})",
            self.ply, self.side, self.black, self.white
        )
    }
}

pub fn square_name(sq: u32) -> String {
    if sq == PASS {
        return "--".to_string();
    }
    let col = (b'a' + (sq % SIZE) as u8) as char;
    format!("{}{}", col, sq / SIZE + 1)
}

pub fn parse_square(s: &str) -> Option<u32> {
    if s == "--" {
        return Some(PASS);
    }
    let b = s.as_bytes();
    if b.len() != 2 {
        return None;
    }
    let col = b[0].to_ascii_lowercase().checked_sub(b'a')? as u32;
    let row = b[1].checked_sub(b'1')? as u32;
    (col < SIZE && row < SIZE).then_some(row * SIZE + col)
}

/// 6x6 Othello. Evaluation is the disc differential plus a mobility term,
/// from Black's (MAX's) point of view.
#[derive(Clone, Copy, Debug, Default)]
pub struct Othello6;

impl Othello6 {
    /// Replays a sequence of square names (`--` passes) from the start.
    pub fn replay<'a>(&self, moves: impl IntoIterator<Item = &'a str>) -> Result<OthelloState, String> {
        let mut s = OthelloState::initial();
        for name in moves {
            let sq = parse_square(name).ok_or_else(|| format!("bad square {name:?}"))?;
            let m = self
                .legal_moves(&s)
                .into_iter()
                .find(|m| m.code == sq)
                .ok_or_else(|| format!("illegal move {name} at ply {}", s.ply))?;
            s = self.apply_move(&s, m).map_err(|e| e.to_string())?;
        }
        Ok(s)
    }

    fn final_score(&self, s: &OthelloState) -> Value {
        let diff = s.black.count_ones() as Value - s.white.count_ones() as Value;
        match diff.signum() {
            1 => WIN_BONUS + diff,
            -1 => -WIN_BONUS + diff,
            _ => 0,
        }
    }
}

impl Game for Othello6 {
    type State = OthelloState;

    fn root(&self) -> OthelloState {
        OthelloState::initial()
    }

    fn legal_moves(&self, s: &OthelloState) -> Vec<Move> {
        let (own, opp) = s.own_opp();
        let mut bb = moves_bb(own, opp);
        if bb == 0 {
            return if moves_bb(opp, own) == 0 {
                Vec::new()
            } else {
                vec![Move::new(0, PASS)]
            };
        }
        let mut out = Vec::with_capacity(bb.count_ones() as usize);
        for &sq in &SQUARE_ORDER {
            if bb & 1u64 << sq != 0 {
                out.push(Move::new(out.len() as u16, sq));
                bb &= !(1u64 << sq);
                if bb == 0 {
                    break;
                }
            }
        }
        out
    }

    fn apply_move(&self, s: &OthelloState, m: Move) -> Result<OthelloState, GameError> {
        let (own, opp) = s.own_opp();
        let bb = moves_bb(own, opp);
        let legal = if m.code == PASS {
            bb == 0 && m.ordinal == 0 && moves_bb(opp, own) != 0
        } else {
            m.code < SQUARES
                && bb & (1u64 << m.code) != 0
                && m.ordinal as u32 == (bb & earlier_squares(m.code)).count_ones()
        };
        if !legal {
            return Err(GameError::IllegalMove {
                mv: m,
                state: format!("{s:?}"),
            });
        }
        let mut next = *s;
        next.side = s.side.opponent();
        next.ply = s.ply + 1;
        next.key ^= ZOBRIST.white_to_move;
        if m.code == PASS {
            return Ok(next);
        }
        let flipped = flips(own, opp, m.code);
        let placed = 1u64 << m.code;
        let (own_idx, opp_idx) = match s.side {
            Side::Max => (0, 1),
            Side::Min => (1, 0),
        };
        next.key ^= ZOBRIST.discs[own_idx][m.code as usize];
        let mut f = flipped;
        while f != 0 {
            let sq = f.trailing_zeros() as usize;
            next.key ^= ZOBRIST.discs[own_idx][sq] ^ ZOBRIST.discs[opp_idx][sq];
            f &= f - 1;
        }
        let own = own | placed | flipped;
        let opp = opp & !flipped;
        match s.side {
            Side::Max => {
                next.black = own;
                next.white = opp;
            }
            Side::Min => {
                next.white = own;
                next.black = opp;
            }
        }
        Ok(next)
    }

    fn evaluate(&self, s: &OthelloState) -> Value {
        let mob_b = moves_bb(s.black, s.white).count_ones() as Value;
        let mob_w = moves_bb(s.white, s.black).count_ones() as Value;
        if mob_b == 0 && mob_w == 0 {
            return self.final_score(s);
        }
        let discs = s.black.count_ones() as Value - s.white.count_ones() as Value;
        discs + (mob_b - mob_w)
    }

    fn state_key(&self, s: &OthelloState) -> u64 {
        s.key
    }

    fn side_to_move(&self, s: &OthelloState) -> Side {
        s.side
    }

    fn ply(&self, s: &OthelloState) -> u32 {
        s.ply
    }

    fn is_terminal(&self, s: &OthelloState) -> bool {
        moves_bb(s.black, s.white) == 0 && moves_bb(s.white, s.black) == 0
    }

    fn value_bounds(&self) -> Option<(Value, Value)> {
        let m = WIN_BONUS + SQUARES as Value;
        Some((-m, m))
    }

    fn history_slots(&self) -> usize {
        SQUARES as usize + 1
    }

    fn history_slot(&self, _s: &OthelloState, m: Move) -> usize {
        m.code as usize
    }

    fn label(&self, s: &OthelloState) -> String {
        format!("{:016x}", mix64(s.key))
    }

    fn move_name(&self, _s: &OthelloState, m: Move) -> String {
        square_name(m.code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn names(g: &Othello6, s: &OthelloState) -> Vec<String> {
        g.legal_moves(s).iter().map(|&m| g.move_name(s, m)).collect()
    }

    #[test]
    fn opening_moves() {
        let g = Othello6;
        let s = g.root();
        assert_eq!(names(&g, &s), vec!["c2", "b3", "e4", "d5"]);
        assert_eq!(g.evaluate(&s), 0);
    }

    #[test]
    fn placing_flips_the_flanked_disc() {
        let g = Othello6;
        let s = g.replay(["b3"]).unwrap();
        assert_eq!(s.discs(), (4, 1));
        assert_eq!(g.side_to_move(&s), Side::Min);
        assert_eq!(s.key, s.recomputed_key());
    }

    #[test]
    fn illegal_move_is_rejected() {
        let g = Othello6;
        let s = g.root();
        assert!(g.apply_move(&s, Move::new(0, 0)).is_err());
        assert!(g.replay(["a1"]).is_err());
    }

    #[test]
    fn squares_roundtrip() {
        for sq in 0..SQUARES {
            assert_eq!(parse_square(&square_name(sq)), Some(sq));
        }
        assert_eq!(parse_square("--"), Some(PASS));
        assert_eq!(parse_square("g1"), None);
        assert_eq!(parse_square("a7"), None);
    }

    /// Every pair of two-ply paths from a few early positions: equal boards
    /// must hash equal, and the incremental key must match a full recompute.
    #[test]
    fn transpositions_hash_equal() {
        let g = Othello6;
        let mut by_board: HashMap<(u64, u64, Side), u64> = HashMap::new();
        let mut transpositions = 0;
        let starts = [
            g.root(),
            g.replay(["b3", "b2"]).unwrap(),
            g.replay(["e4", "e5", "d5"]).unwrap(),
        ];
        for start in starts {
            let mut frontier = vec![start];
            for _ in 0..4 {
                let mut next = Vec::new();
                for s in &frontier {
                    for m in g.legal_moves(s) {
                        let c = g.apply_move(s, m).unwrap();
                        assert_eq!(c.key, c.recomputed_key());
                        let board = (c.black, c.white, c.side);
                        match by_board.get(&board) {
                            Some(&k) => {
                                assert_eq!(k, c.key);
                                transpositions += 1;
                            }
                            None => {
                                by_board.insert(board, c.key);
                            }
                        }
                        next.push(c);
                    }
                }
                frontier = next;
            }
        }
        assert!(transpositions > 0);
        // Distinct boards never share a key in this sample.
        let mut keys: Vec<u64> = by_board.values().copied().collect();
        keys.sort_unstable();
        let n = keys.len();
        keys.dedup();
        assert_eq!(keys.len(), n);
    }

    #[test]
    fn random_games_end_with_double_pass() {
        use rand::{Rng, SeedableRng};
        let g = Othello6;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let mut s = g.root();
            let mut passes = 0;
            loop {
                let moves = g.legal_moves(&s);
                if moves.is_empty() {
                    break;
                }
                let m = moves[rng.gen_range(0..moves.len())];
                passes = if m.code == PASS { passes + 1 } else { 0 };
                assert!(passes < 2);
                s = g.apply_move(&s, m).unwrap();
                assert_eq!(s.key, s.recomputed_key());
            }
            assert!(g.is_terminal(&s));
            let (b, w) = s.discs();
            assert!(b + w <= SQUARES);
            assert!(g.evaluate(&s).abs() >= WIN_BONUS || b == w);
        }
    }
}
