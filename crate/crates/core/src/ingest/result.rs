use crate::types::Color;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeKind {
    WinByPoints,
    WinByResignation,
    Other,
}

/// Game result as read from an SGF `RE` value.
///
/// Forfeits, time losses, draws, voids and unknown results all collapse into
/// [`Outcome::Other`]; they are ignored by the win/loss statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    WinByPoints { winner: Color, margin: f64 },
    WinByResignation { winner: Color },
    Other,
}

impl Outcome {
    pub fn parse(token: &str) -> Outcome {
        let t = token.trim();
        let (winner, rest) = match t.split_once('+') {
            Some((w, rest)) => (w.trim(), rest.trim()),
            None => return Outcome::Other,
        };
        let winner = match winner {
            "B" | "b" => Color::Black,
            "W" | "w" => Color::White,
            _ => return Outcome::Other,
        };
        match rest {
            "R" | "r" | "Resign" | "resign" | "Res" => Outcome::WinByResignation { winner },
            _ => match rest.parse::<f64>() {
                Ok(margin) if margin.is_finite() && margin >= 0.0 => {
                    Outcome::WinByPoints { winner, margin }
                }
                _ => Outcome::Other,
            },
        }
    }

    pub fn kind(&self) -> OutcomeKind {
        match self {
            Outcome::WinByPoints { .. } => OutcomeKind::WinByPoints,
            Outcome::WinByResignation { .. } => OutcomeKind::WinByResignation,
            Outcome::Other => OutcomeKind::Other,
        }
    }

    pub fn winner(&self) -> Option<Color> {
        match *self {
            Outcome::WinByPoints { winner, .. } | Outcome::WinByResignation { winner } => {
                Some(winner)
            }
            Outcome::Other => None,
        }
    }

    pub fn margin(&self) -> Option<f64> {
        match *self {
            Outcome::WinByPoints { margin, .. } => Some(margin),
            _ => None,
        }
    }

    pub fn to_sgf(&self) -> Option<String> {
        match *self {
            Outcome::WinByPoints { winner, margin } => Some(format!("{winner}+{margin}")),
            Outcome::WinByResignation { winner } => Some(format!("{winner}+R")),
            Outcome::Other => None,
        }
    }
}
