use thiserror::Error;

use crate::types::{Color, Point};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Sgf(#[from] SgfError),
    #[error(transparent)]
    IllegalMove(#[from] IllegalMove),
    #[error(transparent)]
    Annotate(#[from] AnnotateError),
    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }

    pub fn format(line: usize, msg: impl Into<String>) -> Error {
        Error::Format { line, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("sgf parse error at byte {offset}: {kind}")]
pub struct SgfError {
    pub offset: usize,
    pub kind: SgfErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SgfErrorKind {
    #[error("expected '(' to open a game tree")]
    MissingTreeStart,
    #[error("unbalanced game tree")]
    Unbalanced,
    #[error("unterminated property value")]
    UnterminatedValue,
    #[error("property without value")]
    MissingValue,
    #[error("unexpected character {0:?}")]
    Unexpected(char),
    #[error("illegal coordinate {0:?}")]
    IllegalCoordinate(String),
    #[error("invalid board size {0:?}")]
    InvalidSize(String),
    #[error("invalid number {0:?}")]
    InvalidNumber(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IllegalReason {
    OffBoard,
    Occupied,
    Suicide,
    Ko,
}

impl std::fmt::Display for IllegalReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IllegalReason::OffBoard => "point off board",
            IllegalReason::Occupied => "point occupied",
            IllegalReason::Suicide => "suicide",
            IllegalReason::Ko => "ko recapture",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("illegal move {color} at {point}: {reason}")]
pub struct IllegalMove {
    pub color: Color,
    pub point: Point,
    pub reason: IllegalReason,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("cannot replay move {move_number}: {source}")]
pub struct AnnotateError {
    pub move_number: usize,
    pub source: IllegalMove,
}
