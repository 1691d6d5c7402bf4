//! Synthetic game corpora with a known per-player latent target.
//!
//! Each generated player has an integer target in [-5, 20] (the strength
//! scale) and plays every game against an unranked opponent. Under the
//! planted profile the target biases the player's move choice: higher
//! targets play more often on the first three lines and take available
//! captures more eagerly. Under the null profile every player uses the
//! same policy, so nothing in the games carries the target.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::board::{border_distance, Board};
use crate::error::{Error, Result};
use crate::ingest::{write_sgf, GameRecord, Outcome, Rank};
use crate::rng::{derive_seed, seeded};
use crate::types::{Color, Move, Point};

pub const OPPONENT: &str = "synth-opponent";
pub const TARGET_MIN: i32 = -5;
pub const TARGET_MAX: i32 = 20;

/// Border distance at or below which a move counts as "low".
const LOW_LINE: u32 = 3;
const CANDIDATE_TRIES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthProfile {
    Planted,
    Null,
}

impl FromStr for SynthProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<SynthProfile> {
        match s.to_ascii_lowercase().as_str() {
            "planted" => Ok(SynthProfile::Planted),
            "null" => Ok(SynthProfile::Null),
            other => Err(Error::domain(format!("unknown synth profile {other:?} (planted|null)"))),
        }
    }
}

impl fmt::Display for SynthProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SynthProfile::Planted => "planted",
            SynthProfile::Null => "null",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub profile: SynthProfile,
    pub players: usize,
    pub games_per_player: usize,
    pub seed: u64,
    pub min_moves: usize,
    pub max_moves: usize,
}

impl SynthConfig {
    pub fn new(profile: SynthProfile, players: usize, games_per_player: usize, seed: u64) -> Self {
        SynthConfig { profile, players, games_per_player, seed, min_moves: 120, max_moves: 200 }
    }
}

/// Move-choice probabilities of one side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Policy {
    /// Probability of aiming for a point on the first three lines.
    pub low: f64,
    /// Probability of taking a capture when one is available.
    pub capture: f64,
}

const NEUTRAL: Policy = Policy { low: 0.4, capture: 0.35 };

impl Policy {
    pub fn for_target(profile: SynthProfile, target: i32) -> Policy {
        match profile {
            SynthProfile::Null => NEUTRAL,
            SynthProfile::Planted => {
                let w = (target - TARGET_MIN) as f64 / (TARGET_MAX - TARGET_MIN) as f64;
                Policy { low: 0.1 + 0.7 * w, capture: 0.05 + 0.9 * w }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthGame {
    pub player: String,
    pub rank: Rank,
    /// Path relative to the corpus root.
    pub path: String,
    pub sgf: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthCorpus {
    pub games: Vec<SynthGame>,
    pub labels: Vec<(String, i32)>,
}

/// Spreads targets evenly over [-5, 20].
pub fn latent_target(player: usize, players: usize) -> i32 {
    if players <= 1 {
        return (TARGET_MIN + TARGET_MAX) / 2;
    }
    let span = (TARGET_MAX - TARGET_MIN) as f64;
    TARGET_MIN + (span * player as f64 / (players - 1) as f64).round() as i32
}

pub fn target_rank(target: i32) -> Rank {
    if target >= 1 {
        Rank::kyu(target as u8)
    } else {
        Rank::dan((1 - target) as u8)
    }
}

pub fn player_name(i: usize) -> String {
    format!("synth-p{i:03}")
}

pub fn generate(config: &SynthConfig) -> Result<SynthCorpus> {
    if config.players == 0 || config.games_per_player == 0 {
        return Err(Error::domain("synth needs at least one player and one game"));
    }
    if config.min_moves == 0 || config.min_moves > config.max_moves {
        return Err(Error::domain("invalid synth move range"));
    }
    let labels: Vec<(String, i32)> = (0..config.players)
        .map(|i| (player_name(i), latent_target(i, config.players)))
        .collect();
    let games = labels
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, (name, target))| {
            let policy = Policy::for_target(config.profile, *target);
            let rank = target_rank(*target);
            (0..config.games_per_player).map(move |j| {
                let mut rng = seeded(derive_seed(derive_seed(config.seed, i as u64), j as u64));
                let color = if j % 2 == 0 { Color::Black } else { Color::White };
                let record = play_game(name, rank, color, policy, config, &mut rng);
                SynthGame {
                    player: name.clone(),
                    rank,
                    path: format!("{name}/g{j:03}.sgf"),
                    sgf: write_sgf(&record),
                }
            })
        })
        .collect();
    Ok(SynthCorpus { games, labels })
}

fn play_game(
    name: &str,
    rank: Rank,
    color: Color,
    policy: Policy,
    config: &SynthConfig,
    rng: &mut impl Rng,
) -> GameRecord {
    let mut g = GameRecord::new(19);
    g.komi = 6.5;
    let (pname, oname) = (Some(name.to_string()), Some(OPPONENT.to_string()));
    match color {
        Color::Black => {
            (g.black_name, g.white_name) = (pname, oname);
            g.black_rank = Some(rank);
        }
        Color::White => {
            (g.black_name, g.white_name) = (oname, pname);
            g.white_rank = Some(rank);
        }
    }
    let mut board = Board::new(19);
    let total = rng.gen_range(config.min_moves..=config.max_moves);
    let mut to_move = Color::Black;
    for _ in 0..total {
        let pol = if to_move == color { policy } else { NEUTRAL };
        let point = choose_move(&board, to_move, pol, rng);
        board.play_move(to_move, point).expect("generator only picks legal moves");
        g.moves.push(Move { color: to_move, point });
        to_move = to_move.opponent();
    }
    let winner = if rng.gen_bool(0.5) { Color::Black } else { Color::White };
    g.result = if rng.gen_bool(0.5) {
        Outcome::WinByResignation { winner }
    } else {
        Outcome::WinByPoints { winner, margin: rng.gen_range(0..30) as f64 + 0.5 }
    };
    g
}

fn capture_points(board: &Board, color: Color) -> Vec<Point> {
    let mut pts = board.atari_points(color.opponent());
    pts.retain(|&p| board.is_legal(color, p));
    pts
}

/// True when every neighbour is a friendly stone or off the board.
fn own_eye(board: &Board, color: Color, p: Point) -> bool {
    let (c, r) = (p.col as i32, p.row as i32);
    [(c - 1, r), (c + 1, r), (c, r - 1), (c, r + 1)]
        .iter()
        .all(|&(x, y)| match board.content_at(x, y) {
            None => true,
            Some(cell) => cell == Some(color),
        })
}

fn choose_move(board: &Board, color: Color, policy: Policy, rng: &mut impl Rng) -> Option<Point> {
    if rng.gen_bool(policy.capture) {
        if let Some(&p) = capture_points(board, color).choose(rng) {
            return Some(p);
        }
    }
    let n = board.size();
    let want_low = rng.gen_bool(policy.low);
    let ok = |p: Point| board.get(p).is_none() && !own_eye(board, color, p) && board.is_legal(color, p);
    for _ in 0..CANDIDATE_TRIES {
        let p = Point::new(rng.gen_range(1..=n), rng.gen_range(1..=n));
        let low = border_distance(p, n).is_ok_and(|d| d <= LOW_LINE);
        if low == want_low && ok(p) {
            return Some(p);
        }
    }
    let mut rest: Vec<Point> =
        (1..=n).flat_map(|r| (1..=n).map(move |c| Point::new(c, r))).filter(|&p| ok(p)).collect();
    rest.shuffle(rng);
    rest.first().copied()
}

impl SynthCorpus {
    /// `player<TAB>target` per line.
    pub fn labels_text(&self) -> String {
        let mut s = String::from("# player\ttarget\n");
        for (p, t) in &self.labels {
            s.push_str(&format!("{p}\t{t}\n"));
        }
        s
    }

    /// Corpus manifest: path, player, rank.
    pub fn manifest_text(&self) -> String {
        self.games.iter().map(|g| format!("{}\t{}\t{}\n", g.path, g.player, g.rank)).collect()
    }
}
