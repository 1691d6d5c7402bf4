//! Game record ingestion: SGF parsing, results and ranks, corpus manifests
//! and assembly of labelled player sets.

pub mod manifest;
pub mod rank;
pub mod result;
pub mod sets;
pub mod sgf;

pub use manifest::{parse_manifest, ManifestEntry};
pub use rank::{rank_to_target, Rank, RankClass};
pub use result::{Outcome, OutcomeKind};
pub use sets::{
    assemble_strength_sets, assemble_style_sets, player_games, ColoredGame, ColoredGameSet,
    PlayerGame, StrengthSet, StyleSet,
};
pub use sgf::{parse_sgf, write_sgf, GameRecord};
