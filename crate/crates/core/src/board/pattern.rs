//! Spatial patterns around a move and their symmetry-normalized keys.
//!
//! A pattern of size `d` records the points at gridcular distance `1..=d`
//! from the center, in (row, column) offset order, two bits per cell. Keys
//! are the minimum encoding over the eight dihedral transforms after
//! swapping colors so that black is to move.

use std::fmt;
use std::sync::OnceLock;

use crate::board::Board;
use crate::types::{gridcular_offset, Color, Point};

pub const MIN_PATTERN_SIZE: u8 = 2;
pub const MAX_PATTERN_SIZE: u8 = 6;
pub const PATTERN_SIZES: [u8; 5] = [2, 3, 4, 5, 6];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum PatternCell {
    Empty = 0,
    Black = 1,
    White = 2,
    OffBoard = 3,
}

impl PatternCell {
    fn from_bits(b: u64) -> PatternCell {
        match b & 3 {
            0 => PatternCell::Empty,
            1 => PatternCell::Black,
            2 => PatternCell::White,
            _ => PatternCell::OffBoard,
        }
    }

    fn swap_colors(self) -> PatternCell {
        match self {
            PatternCell::Black => PatternCell::White,
            PatternCell::White => PatternCell::Black,
            c => c,
        }
    }
}

/// The eight dihedral maps of an offset.
pub(crate) fn dihedral(t: usize, dx: i32, dy: i32) -> (i32, i32) {
    match t {
        0 => (dx, dy),
        1 => (-dy, dx),
        2 => (-dx, -dy),
        3 => (dy, -dx),
        4 => (-dx, dy),
        5 => (dx, -dy),
        6 => (dy, dx),
        7 => (-dy, -dx),
        _ => unreachable!("dihedral index {t}"),
    }
}

struct Neighborhood {
    offsets: Vec<(i32, i32)>,
    /// `perms[t][i]`: position in `offsets` of the image of offset `i` under `t`.
    perms: [Vec<usize>; 8],
}

fn build_neighborhood(d: u8) -> Neighborhood {
    let r = d as i32;
    let mut offsets = Vec::new();
    for dy in -r..=r {
        for dx in -r..=r {
            let g = gridcular_offset(dx, dy);
            if g >= 1 && g <= d as u32 {
                offsets.push((dx, dy));
            }
        }
    }
    // (row, column) order; the double loop already yields it, sort for clarity.
    offsets.sort_by_key(|&(dx, dy)| (dy, dx));
    let perms = std::array::from_fn(|t| {
        offsets
            .iter()
            .map(|&(dx, dy)| {
                let img = dihedral(t, dx, dy);
                offsets.iter().position(|&o| o == img).expect("neighborhood closed under symmetry")
            })
            .collect()
    });
    Neighborhood { offsets, perms }
}

fn neighborhood_table(d: u8) -> &'static Neighborhood {
    static TABLES: OnceLock<Vec<Neighborhood>> = OnceLock::new();
    assert!((MIN_PATTERN_SIZE..=MAX_PATTERN_SIZE).contains(&d), "pattern size {d} out of range");
    let tables = TABLES.get_or_init(|| (MIN_PATTERN_SIZE..=MAX_PATTERN_SIZE).map(build_neighborhood).collect());
    &tables[(d - MIN_PATTERN_SIZE) as usize]
}

/// Offsets `(dx, dy)` of a size-`d` pattern, in encoding order.
pub fn neighborhood(d: u8) -> &'static [(i32, i32)] {
    &neighborhood_table(d).offsets
}

/// Cells around a move, in [`neighborhood`] order, packed two bits per cell
/// with the first cell in the most significant position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RawPattern {
    pub size: u8,
    pub to_move: Color,
    packed: u64,
}

impl RawPattern {
    pub fn from_cells(size: u8, to_move: Color, cells: &[PatternCell]) -> RawPattern {
        assert_eq!(cells.len(), neighborhood(size).len());
        RawPattern { size, to_move, packed: pack(cells.iter().copied()) }
    }

    pub fn len(&self) -> usize {
        neighborhood(self.size).len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cell(&self, i: usize) -> PatternCell {
        let n = self.len();
        PatternCell::from_bits(self.packed >> (2 * (n - 1 - i)))
    }

    pub fn cells(&self) -> impl Iterator<Item = PatternCell> + '_ {
        (0..self.len()).map(|i| self.cell(i))
    }

    /// (offset, content) pairs.
    pub fn entries(&self) -> impl Iterator<Item = ((i32, i32), PatternCell)> + '_ {
        neighborhood(self.size).iter().copied().zip(self.cells())
    }
}

fn pack(cells: impl Iterator<Item = PatternCell>) -> u64 {
    cells.fold(0u64, |acc, c| (acc << 2) | c as u64)
}

/// Samples the pattern around `center` on the position before the move.
pub fn extract_raw_pattern(board: &Board, center: Point, d: u8, to_move: Color) -> RawPattern {
    let cells = neighborhood(d).iter().map(|&(dx, dy)| {
        match board.content_at(center.col as i32 + dx, center.row as i32 + dy) {
            None => PatternCell::OffBoard,
            Some(None) => PatternCell::Empty,
            Some(Some(Color::Black)) => PatternCell::Black,
            Some(Some(Color::White)) => PatternCell::White,
        }
    });
    RawPattern { size: d, to_move, packed: pack(cells) }
}

/// Canonical pattern identity: size, minimal symmetric encoding and the
/// move's two atari flags. Ordering follows the byte encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PatternKey {
    pub size: u8,
    pub code: u64,
    pub atari: bool,
    pub atari_escape: bool,
}

impl PatternKey {
    /// Byte encoding: size, then the packed cells (big endian, just enough
    /// bytes), then a flag byte.
    pub fn to_bytes(&self) -> Vec<u8> {
        let n = neighborhood(self.size).len();
        let nbytes = (2 * n).div_ceil(8);
        let mut out = Vec::with_capacity(nbytes + 2);
        out.push(self.size);
        // left-align the 2n bits inside nbytes
        let shifted = self.code << (nbytes * 8 - 2 * n);
        out.extend_from_slice(&shifted.to_be_bytes()[8 - nbytes..]);
        out.push(self.atari as u8 | (self.atari_escape as u8) << 1);
        out
    }

    pub fn flags(&self) -> u8 {
        self.atari as u8 | (self.atari_escape as u8) << 1
    }

    pub fn from_parts(size: u8, code: u64, flags: u8) -> PatternKey {
        PatternKey { size, code, atari: flags & 1 != 0, atari_escape: flags & 2 != 0 }
    }
}

impl Ord for PatternKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.size, self.code, self.flags()).cmp(&(other.size, other.code, other.flags()))
    }
}

impl PartialOrd for PatternKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PatternKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:x}:{}", self.size, self.code, self.flags())
    }
}

pub fn canonicalize(raw: &RawPattern, atari: bool, atari_escape: bool) -> PatternKey {
    let table = neighborhood_table(raw.size);
    let n = table.offsets.len();
    let swap = raw.to_move == Color::White;
    let cells: Vec<PatternCell> = raw
        .cells()
        .map(|c| if swap { c.swap_colors() } else { c })
        .collect();
    let mut best = u64::MAX;
    let mut image = vec![PatternCell::Empty; n];
    for perm in &table.perms {
        for (i, &j) in perm.iter().enumerate() {
            image[j] = cells[i];
        }
        best = best.min(pack(image.iter().copied()));
    }
    PatternKey { size: raw.size, code: best, atari, atari_escape }
}
