//! Legal-move board replay and per-move annotation.
//!
//! Rules: simple ko, suicide forbidden. Chains are recomputed by flood fill
//! on demand; boards are at most 25x25 so a fixed bitset covers any chain.

mod annotate;
mod pattern;

pub use annotate::{
    annotate, annotate_game, border_distance, format_annotation, AnnotatedGame, MoveAnnotation,
};
pub use pattern::{
    canonicalize, extract_raw_pattern, neighborhood, PatternCell, PatternKey, RawPattern,
    MAX_PATTERN_SIZE, MIN_PATTERN_SIZE, PATTERN_SIZES,
};

use crate::error::{IllegalMove, IllegalReason};
use crate::ingest::sgf::MAX_BOARD_SIZE;
use crate::types::{Color, Point};

const WORDS: usize = (MAX_BOARD_SIZE as usize * MAX_BOARD_SIZE as usize).div_ceil(64);

#[derive(Clone, Copy, Default)]
struct BitSet([u64; WORDS]);

impl BitSet {
    fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.0[w] & b == 0;
        self.0[w] |= b;
        fresh
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1u64 << (i % 64)) != 0
    }
}

/// Stones and liberty count of one chain.
#[derive(Debug, Clone)]
pub struct Chain {
    pub color: Color,
    pub stones: Vec<usize>,
    pub liberties: usize,
}

/// What a legal move did to the position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MoveEffect {
    pub captures: u32,
    /// An adjacent enemy chain was left with exactly one liberty.
    pub atari: bool,
    /// A friendly chain in atari before the move now has two or more liberties.
    pub atari_escape: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Board {
    size: u8,
    cells: Vec<Option<Color>>,
    ko: Option<Point>,
    captured_by_black: u32,
    captured_by_white: u32,
}

impl Board {
    pub fn new(size: u8) -> Board {
        assert!((1..=MAX_BOARD_SIZE).contains(&size), "unsupported board size {size}");
        Board {
            size,
            cells: vec![None; size as usize * size as usize],
            ko: None,
            captured_by_black: 0,
            captured_by_white: 0,
        }
    }

    pub fn size(&self) -> u8 {
        self.size
    }

    fn index(&self, p: Point) -> usize {
        (p.row as usize - 1) * self.size as usize + (p.col as usize - 1)
    }

    fn point(&self, i: usize) -> Point {
        let n = self.size as usize;
        Point::new((i % n) as u8 + 1, (i / n) as u8 + 1)
    }

    fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> {
        let n = self.size as usize;
        let (c, r) = (i % n, i / n);
        let mut out = [usize::MAX; 4];
        if c > 0 {
            out[0] = i - 1;
        }
        if c + 1 < n {
            out[1] = i + 1;
        }
        if r > 0 {
            out[2] = i - n;
        }
        if r + 1 < n {
            out[3] = i + n;
        }
        out.into_iter().filter(|&j| j != usize::MAX)
    }

    pub fn get(&self, p: Point) -> Option<Color> {
        if p.on_board(self.size) {
            self.cells[self.index(p)]
        } else {
            None
        }
    }

    /// Content at signed coordinates; `None` means off board.
    pub fn content_at(&self, col: i32, row: i32) -> Option<Option<Color>> {
        let n = self.size as i32;
        if col < 1 || row < 1 || col > n || row > n {
            return None;
        }
        Some(self.cells[((row - 1) * n + (col - 1)) as usize])
    }

    pub fn ko_point(&self) -> Option<Point> {
        self.ko
    }

    /// Stones captured so far by `color`.
    pub fn prisoners(&self, color: Color) -> u32 {
        match color {
            Color::Black => self.captured_by_black,
            Color::White => self.captured_by_white,
        }
    }

    pub fn stone_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn stones(&self) -> impl Iterator<Item = (Point, Color)> + '_ {
        self.cells.iter().enumerate().filter_map(|(i, c)| c.map(|c| (self.point(i), c)))
    }

    fn chain_at(&self, start: usize) -> Option<Chain> {
        let color = self.cells[start]?;
        let mut seen = BitSet::default();
        let mut libs = BitSet::default();
        let mut liberties = 0;
        let mut stones = vec![start];
        seen.insert(start);
        let mut k = 0;
        while k < stones.len() {
            let i = stones[k];
            k += 1;
            for j in self.neighbors(i) {
                match self.cells[j] {
                    None => {
                        if libs.insert(j) {
                            liberties += 1;
                        }
                    }
                    Some(c) if c == color => {
                        if seen.insert(j) {
                            stones.push(j);
                        }
                    }
                    Some(_) => {}
                }
            }
        }
        Some(Chain { color, stones, liberties })
    }

    pub fn chain(&self, p: Point) -> Option<Chain> {
        if !p.on_board(self.size) {
            return None;
        }
        self.chain_at(self.index(p))
    }

    /// The single liberty of every `color` chain in atari, in board order.
    pub fn atari_points(&self, color: Color) -> Vec<Point> {
        let mut done = BitSet::default();
        let mut out = Vec::new();
        for i in 0..self.cells.len() {
            if self.cells[i] != Some(color) || done.contains(i) {
                continue;
            }
            let chain = self.chain_at(i).expect("occupied");
            chain.stones.iter().for_each(|&s| {
                done.insert(s);
            });
            if chain.liberties == 1 {
                let lib = chain
                    .stones
                    .iter()
                    .flat_map(|&s| self.neighbors(s))
                    .find(|&j| self.cells[j].is_none())
                    .expect("one liberty");
                out.push(lib);
            }
        }
        out.sort_unstable();
        out.dedup();
        out.into_iter().map(|i| self.point(i)).collect()
    }

    pub fn liberties(&self, p: Point) -> Option<usize> {
        self.chain(p).map(|c| c.liberties)
    }

    /// Distinct chains adjacent to `i` (by representative stone set).
    fn adjacent_chains(&self, i: usize) -> Vec<Chain> {
        let mut seen = BitSet::default();
        let mut out = Vec::new();
        for j in self.neighbors(i) {
            if self.cells[j].is_none() || seen.contains(j) {
                continue;
            }
            let chain = self.chain_at(j).expect("occupied");
            for &s in &chain.stones {
                seen.insert(s);
            }
            out.push(chain);
        }
        out
    }

    /// Places a stone without capture or legality processing (setup stones).
    pub fn place_setup(&mut self, color: Color, p: Point) -> Result<(), IllegalMove> {
        if !p.on_board(self.size) {
            return Err(IllegalMove { color, point: p, reason: IllegalReason::OffBoard });
        }
        let i = self.index(p);
        self.cells[i] = Some(color);
        Ok(())
    }

    pub fn pass(&mut self) {
        self.ko = None;
    }

    /// Plays a stone. On error the board is left unchanged.
    pub fn play(&mut self, color: Color, p: Point) -> Result<MoveEffect, IllegalMove> {
        let illegal = |reason| IllegalMove { color, point: p, reason };
        if !p.on_board(self.size) {
            return Err(illegal(IllegalReason::OffBoard));
        }
        let i = self.index(p);
        if self.cells[i].is_some() {
            return Err(illegal(IllegalReason::Occupied));
        }
        if self.ko == Some(p) {
            return Err(illegal(IllegalReason::Ko));
        }

        let before = self.adjacent_chains(i);
        let friendly_in_atari = before.iter().any(|c| c.color == color && c.liberties == 1);

        self.cells[i] = Some(color);
        let mut captured = Vec::new();
        for chain in before.iter().filter(|c| c.color != color && c.liberties == 1) {
            captured.extend_from_slice(&chain.stones);
        }
        for &s in &captured {
            self.cells[s] = None;
        }
        let own = self.chain_at(i).expect("just placed");
        if own.liberties == 0 {
            self.cells[i] = None;
            return Err(illegal(IllegalReason::Suicide));
        }

        let captures = captured.len() as u32;
        match color {
            Color::Black => self.captured_by_black += captures,
            Color::White => self.captured_by_white += captures,
        }
        self.ko = if captures == 1 && own.stones.len() == 1 && own.liberties == 1 {
            Some(self.point(captured[0]))
        } else {
            None
        };

        let atari = self
            .adjacent_chains(i)
            .iter()
            .any(|c| c.color != color && c.liberties == 1);
        let atari_escape = friendly_in_atari && own.liberties >= 2;
        Ok(MoveEffect { captures, atari, atari_escape })
    }

    /// Plays or passes.
    pub fn play_move(&mut self, color: Color, point: Option<Point>) -> Result<MoveEffect, IllegalMove> {
        match point {
            Some(p) => self.play(color, p),
            None => {
                self.pass();
                Ok(MoveEffect::default())
            }
        }
    }

    pub fn is_legal(&self, color: Color, p: Point) -> bool {
        self.clone().play(color, p).is_ok()
    }
}
