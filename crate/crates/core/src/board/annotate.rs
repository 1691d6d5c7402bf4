use std::fmt::Write as _;
use std::sync::Arc;

use crate::board::pattern::{canonicalize, extract_raw_pattern, PatternKey, RawPattern, PATTERN_SIZES};
use crate::board::Board;
use crate::error::{AnnotateError, Error, Result};
use crate::ingest::sgf::GameRecord;
use crate::types::{gridcular_distance, Color, Point};

/// Facts about one played (non-pass) move.
#[derive(Debug, Clone, PartialEq)]
pub struct MoveAnnotation {
    /// 1-based position in the game's move list, passes included.
    pub move_number: usize,
    pub color: Color,
    pub point: Point,
    pub atari: bool,
    pub atari_escape: bool,
    pub captures: u32,
    /// Gridcular distance to the previous move; `None` for the first move
    /// and right after a pass.
    pub contiguity: Option<u32>,
    pub border_distance: u32,
    /// Patterns of sizes 2..=6, sampled before the stone is placed.
    pub raw_patterns: [RawPattern; 5],
}

impl MoveAnnotation {
    pub fn pattern_key(&self, size: u8) -> Option<PatternKey> {
        self.raw_patterns
            .iter()
            .find(|p| p.size == size)
            .map(|p| canonicalize(p, self.atari, self.atari_escape))
    }

    pub fn pattern_keys(&self) -> impl Iterator<Item = PatternKey> + '_ {
        self.raw_patterns.iter().map(|p| canonicalize(p, self.atari, self.atari_escape))
    }
}

#[derive(Debug, Clone)]
pub struct AnnotatedGame {
    pub record: Arc<GameRecord>,
    pub moves: Vec<MoveAnnotation>,
}

/// Line number of `p` counted from the nearest edge (1 = first line).
pub fn border_distance(p: Point, size: u8) -> Result<u32> {
    if !p.on_board(size) {
        return Err(Error::domain(format!("point {p} not on a {size}x{size} board")));
    }
    let (x, y, n) = (p.col as u32, p.row as u32, size as u32);
    Ok(x.min(y).min(n + 1 - x).min(n + 1 - y))
}

/// Replays a game and annotates every non-pass move.
pub fn annotate_game(game: &GameRecord) -> Result<Vec<MoveAnnotation>, AnnotateError> {
    let mut board = Board::new(game.board_size);
    for &(color, p) in &game.setup {
        board
            .place_setup(color, p)
            .map_err(|source| AnnotateError { move_number: 0, source })?;
    }
    let mut out = Vec::with_capacity(game.moves.len());
    let mut last: Option<Point> = None;
    for (k, mv) in game.moves.iter().enumerate() {
        let move_number = k + 1;
        let Some(point) = mv.point else {
            board.pass();
            last = None;
            continue;
        };
        let raw_patterns =
            PATTERN_SIZES.map(|d| extract_raw_pattern(&board, point, d, mv.color));
        let effect = board
            .play(mv.color, point)
            .map_err(|source| AnnotateError { move_number, source })?;
        out.push(MoveAnnotation {
            move_number,
            color: mv.color,
            point,
            atari: effect.atari,
            atari_escape: effect.atari_escape,
            captures: effect.captures,
            contiguity: last.map(|q| gridcular_distance(point, q)),
            border_distance: border_distance(point, game.board_size).expect("played point on board"),
            raw_patterns,
        });
        last = Some(point);
    }
    Ok(out)
}

pub fn annotate(record: Arc<GameRecord>) -> Result<AnnotatedGame, AnnotateError> {
    let moves = annotate_game(&record)?;
    Ok(AnnotatedGame { record, moves })
}

/// One debug line: move, color, point, atari, escape, captures, contiguity
/// (`-` if absent), border distance, then pattern keys for sizes 2..=6.
pub fn format_annotation(a: &MoveAnnotation) -> String {
    let mut s = format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        a.move_number,
        a.color,
        a.point,
        a.atari as u8,
        a.atari_escape as u8,
        a.captures,
        a.contiguity.map_or("-".to_string(), |c| c.to_string()),
        a.border_distance
    );
    for key in a.pattern_keys() {
        let _ = write!(s, "\t{key}");
    }
    s
}
