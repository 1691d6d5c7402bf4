use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn opponent(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Black => 'B',
            Color::White => 'W',
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A board intersection in 1-based (column, row) coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub col: u8,
    pub row: u8,
}

impl Point {
    pub const fn new(col: u8, row: u8) -> Point {
        Point { col, row }
    }

    pub fn on_board(self, size: u8) -> bool {
        self.col >= 1 && self.row >= 1 && self.col <= size && self.row <= size
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

/// One entry of a game's move list; `point == None` is a pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub color: Color,
    pub point: Option<Point>,
}

impl Move {
    pub fn play(color: Color, col: u8, row: u8) -> Move {
        Move { color, point: Some(Point::new(col, row)) }
    }

    pub fn pass(color: Color) -> Move {
        Move { color, point: None }
    }

    pub fn is_pass(&self) -> bool {
        self.point.is_none()
    }
}

/// Gridcular distance `|dx| + |dy| + max(|dx|, |dy|)`.
pub fn gridcular_distance(p: Point, q: Point) -> u32 {
    let dx = (p.col as i32 - q.col as i32).unsigned_abs();
    let dy = (p.row as i32 - q.row as i32).unsigned_abs();
    dx + dy + dx.max(dy)
}

/// Same metric on raw offsets.
pub fn gridcular_offset(dx: i32, dy: i32) -> u32 {
    let (dx, dy) = (dx.unsigned_abs(), dy.unsigned_abs());
    dx + dy + dx.max(dy)
}
