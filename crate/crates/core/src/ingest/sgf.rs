//! Main-line SGF reader and writer.
//!
//! Only the properties that matter for replay and labelling are interpreted
//! (`SZ B W AB AW HA KM RE BR WR PB PW`); everything else is skipped. When a
//! node has several child variations, the first one is followed and the rest
//! are discarded.

use std::fmt::Write as _;

use crate::error::{SgfError, SgfErrorKind};
use crate::ingest::rank::Rank;
use crate::ingest::result::Outcome;
use crate::types::{Color, Move, Point};

pub const DEFAULT_BOARD_SIZE: u8 = 19;
pub const MIN_BOARD_SIZE: u8 = 5;
pub const MAX_BOARD_SIZE: u8 = 25;

#[derive(Debug, Clone, PartialEq)]
pub struct GameRecord {
    pub board_size: u8,
    pub moves: Vec<Move>,
    /// Stones placed before the first move (`AB`/`AW`), usually handicap.
    pub setup: Vec<(Color, Point)>,
    pub result: Outcome,
    pub black_rank: Option<Rank>,
    pub white_rank: Option<Rank>,
    pub black_name: Option<String>,
    pub white_name: Option<String>,
    pub handicap: u32,
    pub komi: f64,
}

impl GameRecord {
    pub fn new(board_size: u8) -> GameRecord {
        GameRecord {
            board_size,
            moves: Vec::new(),
            setup: Vec::new(),
            result: Outcome::Other,
            black_rank: None,
            white_rank: None,
            black_name: None,
            white_name: None,
            handicap: 0,
            komi: 0.0,
        }
    }

    pub fn has_handicap(&self) -> bool {
        self.handicap > 0 || self.setup.iter().any(|&(c, _)| c == Color::Black)
    }

    pub fn rank_of(&self, color: Color) -> Option<Rank> {
        match color {
            Color::Black => self.black_rank,
            Color::White => self.white_rank,
        }
    }

    pub fn name_of(&self, color: Color) -> Option<&str> {
        match color {
            Color::Black => self.black_name.as_deref(),
            Color::White => self.white_name.as_deref(),
        }
    }

    /// Color held by the named player, if they took part in the game.
    pub fn color_of(&self, player: &str) -> Option<Color> {
        if self.black_name.as_deref() == Some(player) {
            Some(Color::Black)
        } else if self.white_name.as_deref() == Some(player) {
            Some(Color::White)
        } else {
            None
        }
    }

    pub fn non_pass_moves(&self) -> usize {
        self.moves.iter().filter(|m| !m.is_pass()).count()
    }
}

struct RawProperty {
    ident: String,
    values: Vec<(usize, String)>,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, offset: usize, kind: SgfErrorKind) -> SgfError {
        SgfError { offset, kind }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    /// Parses one `( ... )` tree; properties of main-line nodes go to `out`
    /// when `collect` is set.
    fn tree(&mut self, collect: bool, out: &mut Vec<RawProperty>) -> Result<(), SgfError> {
        debug_assert_eq!(self.peek(), Some(b'('));
        self.pos += 1;
        let mut took_child = false;
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Err(self.err(self.pos, SgfErrorKind::Unbalanced)),
                Some(b')') => {
                    self.pos += 1;
                    return Ok(());
                }
                Some(b'(') => {
                    self.tree(collect && !took_child, out)?;
                    took_child = true;
                }
                Some(b';') if !took_child => {
                    self.pos += 1;
                    self.node(collect, out)?;
                }
                Some(c) => return Err(self.err(self.pos, SgfErrorKind::Unexpected(c as char))),
            }
        }
    }

    fn node(&mut self, collect: bool, out: &mut Vec<RawProperty>) -> Result<(), SgfError> {
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    let mut ident = String::new();
                    while let Some(c) = self.peek() {
                        if !c.is_ascii_alphabetic() {
                            break;
                        }
                        // FF[3] allows lowercase letters inside identifiers; they carry no meaning.
                        if c.is_ascii_uppercase() {
                            ident.push(c as char);
                        }
                        self.pos += 1;
                    }
                    let mut values = Vec::new();
                    loop {
                        self.skip_ws();
                        if self.peek() != Some(b'[') {
                            break;
                        }
                        values.push(self.value()?);
                    }
                    if values.is_empty() {
                        return Err(self.err(start, SgfErrorKind::MissingValue));
                    }
                    if collect {
                        out.push(RawProperty { ident, values });
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn value(&mut self) -> Result<(usize, String), SgfError> {
        let open = self.pos;
        self.pos += 1;
        let start = self.pos;
        let mut buf = Vec::new();
        loop {
            match self.peek() {
                None => return Err(self.err(open, SgfErrorKind::UnterminatedValue)),
                Some(b']') => {
                    self.pos += 1;
                    return Ok((start, String::from_utf8_lossy(&buf).into_owned()));
                }
                Some(b'\\') => {
                    self.pos += 1;
                    match self.peek() {
                        None => return Err(self.err(open, SgfErrorKind::UnterminatedValue)),
                        // soft line break
                        Some(b'\n') => {
                            self.pos += 1;
                            if self.peek() == Some(b'\r') {
                                self.pos += 1;
                            }
                        }
                        Some(b'\r') => {
                            self.pos += 1;
                            if self.peek() == Some(b'\n') {
                                self.pos += 1;
                            }
                        }
                        Some(c) => {
                            buf.push(c);
                            self.pos += 1;
                        }
                    }
                }
                Some(c) => {
                    buf.push(c);
                    self.pos += 1;
                }
            }
        }
    }
}

fn decode_letter(c: u8) -> Option<u8> {
    match c {
        b'a'..=b'z' => Some(c - b'a' + 1),
        b'A'..=b'Z' => Some(c - b'A' + 27),
        _ => None,
    }
}

fn encode_letter(v: u8) -> char {
    if v <= 26 {
        (b'a' + v - 1) as char
    } else {
        (b'A' + v - 27) as char
    }
}

/// Decodes a move value; `Ok(None)` is a pass.
fn decode_move(offset: usize, value: &str, size: u8) -> Result<Option<Point>, SgfError> {
    let v = value.trim();
    if v.is_empty() || (size <= 19 && v == "tt") {
        return Ok(None);
    }
    decode_point(offset, v, size).map(Some)
}

fn decode_point(offset: usize, v: &str, size: u8) -> Result<Point, SgfError> {
    let illegal = || SgfError { offset, kind: SgfErrorKind::IllegalCoordinate(v.to_string()) };
    let b = v.as_bytes();
    if b.len() != 2 {
        return Err(illegal());
    }
    let col = decode_letter(b[0]).ok_or_else(illegal)?;
    let row = decode_letter(b[1]).ok_or_else(illegal)?;
    let p = Point::new(col, row);
    if !p.on_board(size) {
        return Err(illegal());
    }
    Ok(p)
}

fn decode_point_list(offset: usize, v: &str, size: u8) -> Result<Vec<Point>, SgfError> {
    let v = v.trim();
    match v.split_once(':') {
        None => Ok(vec![decode_point(offset, v, size)?]),
        Some((a, b)) => {
            let a = decode_point(offset, a, size)?;
            let b = decode_point(offset, b, size)?;
            let mut pts = Vec::new();
            for row in a.row.min(b.row)..=a.row.max(b.row) {
                for col in a.col.min(b.col)..=a.col.max(b.col) {
                    pts.push(Point::new(col, row));
                }
            }
            Ok(pts)
        }
    }
}

pub fn encode_point(p: Point) -> String {
    let mut s = String::with_capacity(2);
    s.push(encode_letter(p.col));
    s.push(encode_letter(p.row));
    s
}

fn parse_size(offset: usize, v: &str) -> Result<u8, SgfError> {
    let bad = || SgfError { offset, kind: SgfErrorKind::InvalidSize(v.to_string()) };
    let v = v.trim();
    let n = match v.split_once(':') {
        Some((a, b)) if a.trim() == b.trim() => a.trim(),
        Some(_) => return Err(bad()),
        None => v,
    };
    let n: u8 = n.parse().map_err(|_| bad())?;
    if !(MIN_BOARD_SIZE..=MAX_BOARD_SIZE).contains(&n) {
        return Err(bad());
    }
    Ok(n)
}

/// Parses the main line of the first game tree in `text`.
pub fn parse_sgf(text: &str) -> Result<GameRecord, SgfError> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.peek() != Some(b'(') {
        return Err(p.err(p.pos, SgfErrorKind::MissingTreeStart));
    }
    let mut props = Vec::new();
    p.tree(true, &mut props)?;

    let mut game = GameRecord::new(DEFAULT_BOARD_SIZE);
    if let Some(sz) = props.iter().find(|pr| pr.ident == "SZ") {
        let (off, v) = &sz.values[0];
        game.board_size = parse_size(*off, v)?;
    }
    let size = game.board_size;

    for prop in &props {
        let (off, first) = (&prop.values[0].0, prop.values[0].1.as_str());
        match prop.ident.as_str() {
            "B" | "W" => {
                let color = if prop.ident == "B" { Color::Black } else { Color::White };
                let point = decode_move(*off, first, size)?;
                game.moves.push(Move { color, point });
            }
            "AB" | "AW" => {
                let color = if prop.ident == "AB" { Color::Black } else { Color::White };
                for (off, v) in &prop.values {
                    for pt in decode_point_list(*off, v, size)? {
                        game.setup.push((color, pt));
                    }
                }
            }
            "HA" => {
                let v = first.trim();
                game.handicap = v.parse().map_err(|_| SgfError {
                    offset: *off,
                    kind: SgfErrorKind::InvalidNumber(v.to_string()),
                })?;
            }
            "KM" => {
                let v = first.trim();
                game.komi = if v.is_empty() {
                    0.0
                } else {
                    v.parse().map_err(|_| SgfError {
                        offset: *off,
                        kind: SgfErrorKind::InvalidNumber(v.to_string()),
                    })?
                };
            }
            "RE" => game.result = Outcome::parse(first),
            "BR" => game.black_rank = Rank::parse(first).ok(),
            "WR" => game.white_rank = Rank::parse(first).ok(),
            "PB" => game.black_name = Some(first.trim().to_string()),
            "PW" => game.white_name = Some(first.trim().to_string()),
            _ => {}
        }
    }
    Ok(game)
}

fn escape(v: &str) -> String {
    v.replace('\\', "\\\\").replace(']', "\\]")
}

/// Writes the record back as a single-line main-line SGF.
pub fn write_sgf(game: &GameRecord) -> String {
    let mut s = String::new();
    let _ = write!(s, "(;GM[1]FF[4]SZ[{}]", game.board_size);
    if game.komi != 0.0 {
        let _ = write!(s, "KM[{}]", game.komi);
    }
    if game.handicap > 0 {
        let _ = write!(s, "HA[{}]", game.handicap);
    }
    if let Some(name) = &game.black_name {
        let _ = write!(s, "PB[{}]", escape(name));
    }
    if let Some(r) = game.black_rank {
        let _ = write!(s, "BR[{r}]");
    }
    if let Some(name) = &game.white_name {
        let _ = write!(s, "PW[{}]", escape(name));
    }
    if let Some(r) = game.white_rank {
        let _ = write!(s, "WR[{r}]");
    }
    if let Some(re) = game.result.to_sgf() {
        let _ = write!(s, "RE[{re}]");
    }
    for color in [Color::Black, Color::White] {
        let pts: Vec<_> = game.setup.iter().filter(|(c, _)| *c == color).collect();
        if !pts.is_empty() {
            s.push_str(if color == Color::Black { "AB" } else { "AW" });
            for (_, p) in pts {
                let _ = write!(s, "[{}]", encode_point(*p));
            }
        }
    }
    for m in &game.moves {
        let v = match m.point {
            Some(p) => encode_point(p),
            None => String::new(),
        };
        let _ = write!(s, ";{}[{}]", m.color.letter(), v);
    }
    s.push_str(")\n");
    s
}
