//! The five feature families computed from a set of annotated colored games.
//! Every family is normalized by the number of games in the set.

use crate::board::{AnnotatedGame, MoveAnnotation};
use crate::features::config::FeatureConfig;
use crate::features::vocab::PatternVocabulary;
use crate::ingest::result::Outcome;
use crate::ingest::sets::ColoredGameSet;
use crate::types::Color;

pub type AnnotatedSet = ColoredGameSet<AnnotatedGame>;

fn normalize(mut v: Vec<f64>, games: usize) -> Vec<f64> {
    let n = games.max(1) as f64;
    v.iter_mut().for_each(|x| *x /= n);
    v
}

/// Occurrences of each vocabulary pattern per game.
pub fn pattern_feature(
    set: &AnnotatedSet,
    vocab: &PatternVocabulary,
    sizes: &[u8],
    both_players: bool,
) -> Vec<f64> {
    let mut counts = vec![0.0; vocab.len()];
    for (game, color) in set.iter() {
        for mv in game.moves.iter().filter(|m| both_players || m.color == color) {
            for &d in sizes {
                if let Some(i) = mv.pattern_key(d).and_then(|k| vocab.position(&k)) {
                    counts[i] += 1.0;
                }
            }
        }
    }
    normalize(counts, set.len())
}

/// A maximal run of moves, each within the locality threshold of its
/// predecessor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalSequence {
    pub starter: Color,
    pub ender: Color,
    pub len: usize,
}

impl LocalSequence {
    /// Sente for the starter when the opponent had to answer last.
    pub fn is_sente(&self) -> bool {
        self.starter != self.ender
    }
}

/// Splits a game's played moves into omega-local sequences: a move joins the
/// current sequence iff its contiguity is defined and below `omega`.
pub fn partition_sequences(moves: &[MoveAnnotation], omega: u32) -> Vec<LocalSequence> {
    let mut out: Vec<LocalSequence> = Vec::new();
    for mv in moves {
        match (out.last_mut(), mv.contiguity) {
            (Some(seq), Some(c)) if c < omega => {
                seq.ender = mv.color;
                seq.len += 1;
            }
            _ => out.push(LocalSequence { starter: mv.color, ender: mv.color, len: 1 }),
        }
    }
    out
}

/// Average number of sente and gote sequences per game attributed to the
/// player of interest.
pub fn sente_gote_feature(set: &AnnotatedSet, omega: u32) -> [f64; 2] {
    let (mut sente, mut gote) = (0.0, 0.0);
    for (game, color) in set.iter() {
        for seq in partition_sequences(&game.moves, omega) {
            if seq.starter != color {
                continue;
            }
            if seq.is_sente() {
                sente += 1.0;
            } else {
                gote += 1.0;
            }
        }
    }
    let n = set.len().max(1) as f64;
    [sente / n, gote / n]
}

/// Histogram over (move-number bin, border-distance bin), row-major by move bin.
pub fn border_distance_feature(set: &AnnotatedSet, config: &FeatureConfig) -> Vec<f64> {
    let nd = config.by_dist.len();
    let mut hist = vec![0.0; config.border_len()];
    for (game, color) in set.iter() {
        for mv in game.moves.iter().filter(|m| config.border_both_players || m.color == color) {
            let (Some(mb), Some(db)) = (
                config.by_moves_border.bin(mv.move_number as u32),
                config.by_dist.bin(mv.border_distance),
            ) else {
                continue;
            };
            hist[mb * nd + db] += 1.0;
        }
    }
    normalize(hist, set.len())
}

/// Per game stage: stones captured by the player of interest, by the
/// opponent, and their difference.
pub fn captured_stones_feature(set: &AnnotatedSet, config: &FeatureConfig) -> Vec<f64> {
    let mut hist = vec![0.0; config.captures_len()];
    for (game, color) in set.iter() {
        for mv in game.moves.iter().filter(|m| m.captures > 0) {
            let Some(stage) = config.by_moves_capture.bin(mv.move_number as u32) else { continue };
            let slot = if mv.color == color { 0 } else { 1 };
            hist[stage * 3 + slot] += mv.captures as f64;
        }
    }
    for stage in 0..config.by_moves_capture.len() {
        hist[stage * 3 + 2] = hist[stage * 3] - hist[stage * 3 + 1];
    }
    normalize(hist, set.len())
}

/// Wins by counting, wins by resignation, losses by counting, losses by
/// resignation (each per game), then mean winning and losing margins.
pub fn winloss_feature<G: AsOutcome>(set: &ColoredGameSet<G>) -> [f64; 6] {
    let mut tally = [0.0f64; 4];
    let (mut win_pts, mut win_n, mut loss_pts, mut loss_n) = (0.0, 0usize, 0.0, 0usize);
    for (game, color) in set.iter() {
        match game.outcome() {
            Outcome::WinByPoints { winner, margin } if winner == color => {
                tally[0] += 1.0;
                win_pts += margin;
                win_n += 1;
            }
            Outcome::WinByResignation { winner } if winner == color => tally[1] += 1.0,
            Outcome::WinByPoints { margin, .. } => {
                tally[2] += 1.0;
                loss_pts += margin;
                loss_n += 1;
            }
            Outcome::WinByResignation { .. } => tally[3] += 1.0,
            Outcome::Other => {}
        }
    }
    let n = set.len().max(1) as f64;
    let mean = |s: f64, k: usize| if k == 0 { 0.0 } else { s / k as f64 };
    [
        tally[0] / n,
        tally[1] / n,
        tally[2] / n,
        tally[3] / n,
        mean(win_pts, win_n),
        mean(loss_pts, loss_n),
    ]
}

/// Anything that carries a game result.
pub trait AsOutcome {
    fn outcome(&self) -> Outcome;
}

impl AsOutcome for AnnotatedGame {
    fn outcome(&self) -> Outcome {
        self.record.result
    }
}

impl AsOutcome for crate::ingest::sgf::GameRecord {
    fn outcome(&self) -> Outcome {
        self.result
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::annotate;
    use crate::ingest::sets::ColoredGame;
    use crate::ingest::sgf::parse_sgf;
    use std::sync::Arc;

    fn set_of(sgfs: &[(&str, Color)]) -> AnnotatedSet {
        let entries = sgfs
            .iter()
            .map(|(s, c)| ColoredGame {
                game: Arc::new(annotate(Arc::new(parse_sgf(s).unwrap())).unwrap()),
                color: *c,
            })
            .collect();
        ColoredGameSet { player_id: "p".into(), entries }
    }

    const FIVE: &str = "(;SZ[19];B[cc];W[pp];B[pn];W[cp];B[jj])";

    #[test]
    fn sente_gote_one_move() {
        let s = set_of(&[("(;SZ[19];B[dd])", Color::Black)]);
        assert_eq!(sente_gote_feature(&s, 10), [0.0, 1.0]);
    }

    #[test]
    fn sente_gote_hand_partition() {
        let s = set_of(&[(FIVE, Color::Black)]);
        let d: Vec<_> = s.entries[0].game.moves.iter().map(|m| m.contiguity).collect();
        assert_eq!(d, vec![None, Some(39), Some(4), Some(28), Some(20)]);
        let seqs = partition_sequences(&s.entries[0].game.moves, 5);
        assert_eq!(seqs.len(), 4);
        assert_eq!(sente_gote_feature(&s, 5), [0.0, 2.0]);
        let w = set_of(&[(FIVE, Color::White)]);
        assert_eq!(sente_gote_feature(&w, 5), [1.0, 1.0]);
    }

    #[test]
    fn border_single_corner_move() {
        let cfg = FeatureConfig::strength();
        let s = set_of(&[("(;SZ[19];B[aa])", Color::Black)]);
        let h = border_distance_feature(&s, &cfg);
        assert_eq!(h.len(), 16);
        assert_eq!(h[0], 1.0);
        assert_eq!(h.iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn winloss_tally() {
        let s = set_of(&[
            ("(;SZ[9]RE[B+3.5];B[cc])", Color::Black),
            ("(;SZ[9]RE[W+Resign];B[cc])", Color::Black),
        ]);
        assert_eq!(winloss_feature(&s), [0.5, 0.0, 0.0, 0.5, 3.5, 0.0]);
        let o = set_of(&[("(;SZ[9]RE[Void];B[cc])", Color::Black), ("(;SZ[9];B[cc])", Color::White)]);
        assert_eq!(winloss_feature(&o), [0.0; 6]);
        let m = set_of(&[
            ("(;SZ[9]RE[W+2.5];B[cc])", Color::White),
            ("(;SZ[9]RE[B+7.5];B[cc])", Color::Black),
        ]);
        assert_eq!(winloss_feature(&m)[4], 5.0);
    }

    #[test]
    fn capture_feature_single_event() {
        let cfg = FeatureConfig::strength();
        // black captures white (5,5) on move 7
        let s = set_of(&[("(;SZ[9];B[de];W[ee];B[fe];W[aa];B[ed];W[ab];B[ef])", Color::Black)]);
        let c = captured_stones_feature(&s, &cfg);
        assert_eq!(c[..3], [1.0, 0.0, 1.0]);
        assert!(c[3..].iter().all(|&x| x == 0.0));
        let w = set_of(&[("(;SZ[9];B[de];W[ee];B[fe];W[aa];B[ed];W[ab];B[ef])", Color::White)]);
        assert_eq!(captured_stones_feature(&w, &cfg)[..3], [0.0, 1.0, -1.0]);
    }

    #[test]
    fn empty_intersection_gives_zeros() {
        let s = set_of(&[("(;SZ[9];B[ee])", Color::Black)]);
        let v = PatternVocabulary::from_entries(
            vec![(crate::board::PatternKey::from_parts(2, 0xff, 0), 1)],
            0,
        );
        assert_eq!(pattern_feature(&s, &v, &[2, 3], true), vec![0.0]);
    }
}
