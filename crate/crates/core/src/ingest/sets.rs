//! Grouping games into per-player labelled sets of colored games.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ingest::rank::{rank_to_target, Rank};
use crate::ingest::sgf::GameRecord;
use crate::rng::seeded;
use crate::types::Color;

pub const MIN_STRENGTH_SET: usize = 10;
pub const MAX_STRENGTH_SET: usize = 50;
pub const STRENGTH_BOARD_SIZE: u8 = 19;
pub const STYLE_GAMES_PER_PLAYER: usize = 192;
pub const STYLE_SET_SIZE: usize = 16;
pub const STYLE_DIMENSIONS: usize = 4;
pub const STYLE_NAMES: [&str; STYLE_DIMENSIONS] =
    ["territoriality", "orthodoxity", "aggressivity", "thickness"];

/// A game paired with the color of the player of interest.
#[derive(Debug)]
pub struct ColoredGame<G> {
    pub game: Arc<G>,
    pub color: Color,
}

impl<G> Clone for ColoredGame<G> {
    fn clone(&self) -> Self {
        ColoredGame { game: Arc::clone(&self.game), color: self.color }
    }
}

#[derive(Debug)]
pub struct ColoredGameSet<G = GameRecord> {
    pub player_id: String,
    pub entries: Vec<ColoredGame<G>>,
}

impl<G> Clone for ColoredGameSet<G> {
    fn clone(&self) -> Self {
        ColoredGameSet { player_id: self.player_id.clone(), entries: self.entries.clone() }
    }
}

impl<G> ColoredGameSet<G> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&G, Color)> {
        self.entries.iter().map(|e| (e.game.as_ref(), e.color))
    }

    /// Swaps every game for another representation (e.g. its annotations).
    pub fn map_games<H, F>(&self, mut f: F) -> Result<ColoredGameSet<H>>
    where
        F: FnMut(&Arc<G>) -> Result<Arc<H>>,
    {
        let entries = self
            .entries
            .iter()
            .map(|e| Ok(ColoredGame { game: f(&e.game)?, color: e.color }))
            .collect::<Result<Vec<_>>>()?;
        Ok(ColoredGameSet { player_id: self.player_id.clone(), entries })
    }
}

/// One side of one game, attributed to a named player.
#[derive(Debug, Clone)]
pub struct PlayerGame {
    pub player: String,
    pub color: Color,
    pub rank: Option<Rank>,
    pub game: Arc<GameRecord>,
}

/// Expands a game into its attributable sides.
///
/// With `player` set, only that player's side is produced (if they appear in
/// the game); `rank_override` replaces the rank read from the record.
pub fn player_games(
    game: &Arc<GameRecord>,
    player: Option<&str>,
    rank_override: Option<Rank>,
) -> Vec<PlayerGame> {
    let mut out = Vec::new();
    for color in [Color::Black, Color::White] {
        let Some(name) = game.name_of(color) else { continue };
        if player.is_some_and(|p| p != name) {
            continue;
        }
        out.push(PlayerGame {
            player: name.to_string(),
            color,
            rank: rank_override.or(game.rank_of(color)),
            game: Arc::clone(game),
        });
    }
    out
}

pub fn strength_eligible(game: &GameRecord) -> bool {
    !game.has_handicap() && game.board_size == STRENGTH_BOARD_SIZE && !game.moves.is_empty()
}

#[derive(Debug, Clone)]
pub struct StrengthSet {
    pub set: ColoredGameSet,
    pub rank: Rank,
    pub target: f64,
}

/// Builds strength sets: one per (player, rank) with at least 10 eligible
/// games; groups above 50 are cut to a random subset whose size is drawn
/// uniformly from 10..=50.
pub fn assemble_strength_sets(corpus: &[PlayerGame], seed: u64) -> Vec<StrengthSet> {
    let mut groups: BTreeMap<(String, Rank), Vec<ColoredGame<GameRecord>>> = BTreeMap::new();
    for pg in corpus {
        let Some(rank) = pg.rank.filter(Rank::is_valid) else { continue };
        if !strength_eligible(&pg.game) || pg.game.name_of(pg.color) != Some(pg.player.as_str()) {
            continue;
        }
        groups
            .entry((pg.player.clone(), rank))
            .or_default()
            .push(ColoredGame { game: Arc::clone(&pg.game), color: pg.color });
    }

    let mut rng = seeded(seed);
    let mut out = Vec::new();
    for ((player, rank), mut entries) in groups {
        if entries.len() < MIN_STRENGTH_SET {
            continue;
        }
        if entries.len() > MAX_STRENGTH_SET {
            let k = rng.gen_range(MIN_STRENGTH_SET..=MAX_STRENGTH_SET);
            let mut keep = rand::seq::index::sample(&mut rng, entries.len(), k).into_vec();
            keep.sort_unstable();
            entries = keep.into_iter().map(|i| entries[i].clone()).collect();
        }
        let target = rank_to_target(rank).expect("rank validated above");
        out.push(StrengthSet { set: ColoredGameSet { player_id: player, entries }, rank, target });
    }
    out
}

#[derive(Debug, Clone)]
pub struct StyleSet {
    pub set: ColoredGameSet,
    pub targets: [f64; STYLE_DIMENSIONS],
}

/// Splits one player's 192 games at random into 12 disjoint sets of 16, each
/// labelled with the player's style scores.
pub fn assemble_style_sets(
    player_id: &str,
    games: &[ColoredGame<GameRecord>],
    labels: [f64; STYLE_DIMENSIONS],
    seed: u64,
) -> Result<Vec<StyleSet>> {
    if let Some(bad) = labels.iter().find(|v| !(1.0..=10.0).contains(*v)) {
        return Err(Error::domain(format!("style label {bad} outside [1, 10] for {player_id}")));
    }
    let mut games: Vec<_> = games.iter().filter(|g| !g.game.moves.is_empty()).cloned().collect();
    if games.len() != STYLE_GAMES_PER_PLAYER {
        return Err(Error::domain(format!(
            "style player {player_id} has {} usable games, expected {STYLE_GAMES_PER_PLAYER}",
            games.len()
        )));
    }
    games.shuffle(&mut seeded(seed));
    Ok(games
        .chunks(STYLE_SET_SIZE)
        .map(|chunk| StyleSet {
            set: ColoredGameSet { player_id: player_id.to_string(), entries: chunk.to_vec() },
            targets: labels,
        })
        .collect())
}
