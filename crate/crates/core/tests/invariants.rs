mod common;

use std::sync::Arc;

use goeval::ingest::{
    assemble_strength_sets, parse_sgf, player_games, write_sgf, GameRecord, Outcome, Rank,
};
use goeval::synth::{generate, SynthConfig, SynthProfile};
use goeval::{Color, Move, Point};
use proptest::prelude::*;

fn color() -> impl Strategy<Value = Color> {
    prop_oneof![Just(Color::Black), Just(Color::White)]
}

fn rank() -> impl Strategy<Value = Option<Rank>> {
    prop_oneof![Just(None), (1u8..=30).prop_map(|g| Some(Rank::kyu(g))), (1u8..=9).prop_map(|g| Some(Rank::dan(g)))]
}

fn outcome() -> impl Strategy<Value = Outcome> {
    prop_oneof![
        Just(Outcome::Other),
        color().prop_map(|winner| Outcome::WinByResignation { winner }),
        (color(), 0u32..200).prop_map(|(winner, k)| Outcome::WinByPoints { winner, margin: k as f64 + 0.5 }),
    ]
}

fn game() -> impl Strategy<Value = GameRecord> {
    (5u8..=25).prop_flat_map(|n| {
        let point = (1..=n, 1..=n).prop_map(|(c, r)| Point::new(c, r));
        let mv = (color(), prop::option::weighted(0.9, point.clone())).prop_map(|(color, point)| Move { color, point });
        (
            prop::collection::vec(mv, 0..60),
            prop::collection::btree_set(point, 0..6),
            outcome(),
            rank(),
            rank(),
            prop::option::of("[a-zA-Z0-9 \\]\\\\]{1,12}"),
            prop::option::of("[a-zA-Z0-9_]{1,12}"),
            0u32..10,
            -20i32..20,
        )
            .prop_map(move |(moves, setup, result, br, wr, bn, wn, ha, komi)| {
                let mut g = GameRecord::new(n);
                g.moves = moves;
                g.setup = setup.into_iter().map(|p| (Color::Black, p)).collect();
                g.result = result;
                g.black_rank = br;
                g.white_rank = wr;
                g.black_name = bn.map(|s| s.trim().to_string()).filter(|s| !s.is_empty());
                g.white_name = wn;
                g.handicap = ha;
                g.komi = komi as f64 / 2.0;
                g
            })
    })
}

proptest! {
    #[test]
    fn sgf_round_trip(g in game()) {
        let text = write_sgf(&g);
        let back = parse_sgf(&text).unwrap();
        prop_assert_eq!(back, g);
    }
}

#[test]
fn conservation_over_random_sets() {
    common::check_conservation(200, 3).unwrap();
}

#[test]
fn mean_regression_matches_rank_spread() {
    let r = common::mean_anchor(11);
    assert_eq!(r.repeat_rmse.len(), 5);
    assert!((7.4..=7.6).contains(&r.mean), "{}", r.mean);
}

#[test]
fn subsample_sizes_are_uniform() {
    // one player, one rank, 60 games: every seed draws k from 10..=50
    let games: Vec<Arc<GameRecord>> = (0..60)
        .map(|i| {
            let mut g = GameRecord::new(19);
            g.black_name = Some("p".into());
            g.black_rank = Some(Rank::kyu(4));
            g.moves.push(Move::play(Color::Black, 1 + i % 19, 1 + i / 19));
            Arc::new(g)
        })
        .collect();
    let pg: Vec<_> = games.iter().flat_map(|g| player_games(g, Some("p"), None)).collect();
    let mut hist = [0u32; 41];
    let seeds = 10_000;
    for seed in 0..seeds {
        let sets = assemble_strength_sets(&pg, seed);
        hist[sets[0].set.len() - 10] += 1;
    }
    let expect = seeds as f64 / 41.0;
    let chi2: f64 = hist.iter().map(|&o| (o as f64 - expect).powi(2) / expect).sum();
    // upper 0.1% point of chi-square with 40 degrees of freedom is about 73.4
    assert!(chi2 < 73.4, "chi2 {chi2} {hist:?}");
}

#[test]
fn planted_border_bias_is_visible() {
    // share of the interest player's moves on the first three lines tracks the target
    let corpus = generate(&SynthConfig::new(SynthProfile::Planted, 100, 2, 4)).unwrap();
    let mut per_player: std::collections::BTreeMap<String, (f64, f64)> = Default::default();
    for g in &corpus.games {
        let rec = parse_sgf(&g.sgf).unwrap();
        let me = rec.color_of(&g.player).unwrap();
        let n = rec.board_size;
        for m in rec.moves.iter().filter(|m| m.color == me) {
            if let Some(p) = m.point {
                let line = p.col.min(p.row).min(n + 1 - p.col).min(n + 1 - p.row);
                let e = per_player.entry(g.player.clone()).or_default();
                e.1 += 1.0;
                if line <= 3 {
                    e.0 += 1.0;
                }
            }
        }
    }
    let labels: std::collections::HashMap<_, _> = corpus.labels.iter().cloned().collect();
    let xs: Vec<f64> = per_player.values().map(|(low, all)| low / all).collect();
    let ys: Vec<f64> = per_player.keys().map(|p| labels[p] as f64).collect();
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (mx, my) = (mean(&xs), mean(&ys));
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let r = cov / (vx * vy).sqrt();
    assert!(r.abs() > 0.5, "r = {r}");
}
