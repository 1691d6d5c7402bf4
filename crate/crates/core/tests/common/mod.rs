//! Test-only reference implementations, written without reusing library
//! internals: a naive board with set-based flood fill, brute-force pattern
//! keys, and feature recounts from first principles. Shared by the core
//! integration tests and the CLI acceptance suite.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use goeval::board::{
    annotate, annotate_game, canonicalize, neighborhood, AnnotatedGame, PatternCell, RawPattern,
};
use goeval::features::families::AnnotatedSet;
use goeval::features::{build_vocabulary, evaluate_set, FeatureConfig};
use goeval::evaluation::{cross_validate, CvOptions, CvReport, LabeledDataset, ModelSpec};
use goeval::ingest::{parse_sgf, ColoredGame, GameRecord, Outcome};
use goeval::predictor::Network;
use goeval::synth::{generate, SynthConfig, SynthProfile};
use goeval::{gridcular_distance, Color, Point};
use rand::{Rng, SeedableRng};

type Xy = (i32, i32);

pub struct NaiveBoard {
    pub size: i32,
    pub stones: HashMap<Xy, Color>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NaiveEffect {
    pub captures: u32,
    pub atari: bool,
    pub escape: bool,
}

impl NaiveBoard {
    pub fn new(size: i32) -> Self {
        NaiveBoard { size, stones: HashMap::new() }
    }

    fn on(&self, p: Xy) -> bool {
        p.0 >= 1 && p.1 >= 1 && p.0 <= self.size && p.1 <= self.size
    }

    fn adj(&self, p: Xy) -> Vec<Xy> {
        [(p.0 - 1, p.1), (p.0 + 1, p.1), (p.0, p.1 - 1), (p.0, p.1 + 1)]
            .into_iter()
            .filter(|&q| self.on(q))
            .collect()
    }

    /// Stones and liberties of the group at `p`.
    pub fn group(&self, p: Xy) -> (HashSet<Xy>, HashSet<Xy>) {
        let color = self.stones[&p];
        let mut stones = HashSet::from([p]);
        let mut libs = HashSet::new();
        let mut queue = VecDeque::from([p]);
        while let Some(q) = queue.pop_front() {
            for r in self.adj(q) {
                match self.stones.get(&r) {
                    None => {
                        libs.insert(r);
                    }
                    Some(&c) if c == color
                        && stones.insert(r) => {
                            queue.push_back(r);
                        }
                    _ => {}
                }
            }
        }
        (stones, libs)
    }

    /// Plays a move known to be legal; panics otherwise.
    pub fn play(&mut self, color: Color, p: Xy) -> NaiveEffect {
        assert!(self.on(p) && !self.stones.contains_key(&p), "scripted move {p:?} not playable");
        let friendly_in_atari = self
            .adj(p)
            .into_iter()
            .filter(|q| self.stones.get(q) == Some(&color))
            .any(|q| self.group(q).1.len() == 1);
        self.stones.insert(p, color);
        let mut captured = HashSet::new();
        for q in self.adj(p) {
            if self.stones.get(&q) == Some(&color.opponent()) {
                let (st, libs) = self.group(q);
                if libs.is_empty() {
                    captured.extend(st);
                }
            }
        }
        for q in &captured {
            self.stones.remove(q);
        }
        let own_libs = self.group(p).1.len();
        assert!(own_libs > 0, "scripted move {p:?} is suicide");
        let atari = self
            .adj(p)
            .into_iter()
            .filter(|q| self.stones.get(q) == Some(&color.opponent()))
            .any(|q| self.group(q).1.len() == 1);
        NaiveEffect { captures: captured.len() as u32, atari, escape: friendly_in_atari && own_libs >= 2 }
    }
}

pub fn naive_gridcular(a: Xy, b: Xy) -> u32 {
    let (dx, dy) = ((a.0 - b.0).unsigned_abs(), (a.1 - b.1).unsigned_abs());
    dx + dy + dx.max(dy)
}

/// Offsets at gridcular distance 1..=d, ordered by (dy, dx).
pub fn naive_neighborhood(d: u32) -> Vec<Xy> {
    let r = d as i32;
    let mut v: Vec<Xy> = Vec::new();
    for dy in -r..=r {
        for dx in -r..=r {
            let g = naive_gridcular((0, 0), (dx, dy));
            if (1..=d).contains(&g) {
                v.push((dx, dy));
            }
        }
    }
    v.sort_by_key(|&(dx, dy)| (dy, dx));
    v
}

/// Images of an offset under the 8 symmetries of the square, generated by
/// repeated quarter turns and one mirror.
pub fn symmetries(o: Xy) -> [Xy; 8] {
    let rot = |(x, y): Xy| (-y, x);
    let mut out = [(0, 0); 8];
    let mut cur = o;
    for k in 0..4 {
        out[k] = cur;
        out[k + 4] = (-cur.0, cur.1);
        cur = rot(cur);
    }
    out
}

/// Cell code: 0 empty, 1 black (or own after the swap), 2 white, 3 off board.
fn cell_code(board: &NaiveBoard, p: Xy, to_move: Color) -> u64 {
    if !board.on(p) {
        return 3;
    }
    match (board.stones.get(&p), to_move) {
        (None, _) => 0,
        (Some(&c), Color::Black) => if c == Color::Black { 1 } else { 2 },
        (Some(&c), Color::White) => if c == Color::White { 1 } else { 2 },
    }
}

/// (size, minimal code) of the pattern around `center` before the move.
pub fn naive_pattern(board: &NaiveBoard, center: Xy, d: u32, to_move: Color) -> (u8, u64) {
    let offs = naive_neighborhood(d);
    let best = (0..8)
        .map(|t| {
            offs.iter().fold(0u64, |acc, &o| {
                let img = symmetries(o)[t];
                (acc << 2) | cell_code(board, (center.0 + img.0, center.1 + img.1), to_move)
            })
        })
        .min()
        .unwrap();
    (d as u8, best)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NaiveMove {
    pub number: usize,
    pub color: Color,
    pub point: Xy,
    pub effect: NaiveEffect,
    pub contiguity: Option<u32>,
    pub line: u32,
    /// (size, code, flags) for sizes 2..=6.
    pub keys: Vec<(u8, u64, u8)>,
}

pub fn naive_replay(game: &GameRecord) -> Vec<NaiveMove> {
    let n = game.board_size as i32;
    let mut b = NaiveBoard::new(n);
    for &(c, p) in &game.setup {
        b.stones.insert((p.col as i32, p.row as i32), c);
    }
    let mut out = Vec::new();
    let mut last: Option<Xy> = None;
    for (k, mv) in game.moves.iter().enumerate() {
        let Some(p) = mv.point else {
            last = None;
            continue;
        };
        let xy = (p.col as i32, p.row as i32);
        let raw: Vec<(u8, u64)> = (2..=6).map(|d| naive_pattern(&b, xy, d, mv.color)).collect();
        let effect = b.play(mv.color, xy);
        let flags = effect.atari as u8 | (effect.escape as u8) << 1;
        out.push(NaiveMove {
            number: k + 1,
            color: mv.color,
            point: xy,
            effect,
            contiguity: last.map(|q| naive_gridcular(xy, q)),
            line: [xy.0, xy.1, n + 1 - xy.0, n + 1 - xy.1].into_iter().min().unwrap() as u32,
            keys: raw.into_iter().map(|(s, c)| (s, c, flags)).collect(),
        });
        last = Some(xy);
    }
    out
}

fn by_moves_bin(m: usize) -> usize {
    match m {
        1..=10 => 0,
        11..=64 => 1,
        65..=200 => 2,
        _ => 3,
    }
}

fn by_dist_bin(d: u32) -> usize {
    match d {
        1 | 2 => 0,
        3 => 1,
        4 => 2,
        _ => 3,
    }
}

fn stage_bin(m: usize) -> usize {
    match m {
        1..=60 => 0,
        61..=240 => 1,
        _ => 2,
    }
}

/// Un-normalized feature counts of a game set under the strength preset
/// (omega 10, both players for patterns, interest player for the border).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NaiveCounts {
    pub patterns: BTreeMap<(u8, u64, u8), u64>,
    pub sente: u64,
    pub gote: u64,
    pub border: [u64; 16],
    pub captures: [i64; 9],
    pub wl: [u64; 4],
    pub win_margin_mean: f64,
    pub loss_margin_mean: f64,
}

pub fn naive_counts(games: &[(&GameRecord, Color)]) -> NaiveCounts {
    let mut c = NaiveCounts::default();
    let (mut wsum, mut wn, mut lsum, mut ln) = (0.0, 0, 0.0, 0);
    for &(g, me) in games {
        let moves = naive_replay(g);
        for m in &moves {
            for k in &m.keys {
                *c.patterns.entry(*k).or_default() += 1;
            }
            if m.color == me {
                c.border[by_moves_bin(m.number) * 4 + by_dist_bin(m.line)] += 1;
            }
            if m.effect.captures > 0 {
                let slot = if m.color == me { 0 } else { 1 };
                c.captures[stage_bin(m.number) * 3 + slot] += m.effect.captures as i64;
            }
        }
        // sequences: a move continues the current one iff its distance to
        // the previous played move exists and is below 10
        let mut seqs: Vec<(Color, Color)> = Vec::new();
        for m in &moves {
            match m.contiguity {
                Some(d) if d < 10 && !seqs.is_empty() => seqs.last_mut().unwrap().1 = m.color,
                _ => seqs.push((m.color, m.color)),
            }
        }
        for (start, end) in seqs {
            if start == me {
                if start != end {
                    c.sente += 1;
                } else {
                    c.gote += 1;
                }
            }
        }
        match g.result {
            Outcome::WinByPoints { winner, margin } if winner == me => {
                c.wl[0] += 1;
                wsum += margin;
                wn += 1;
            }
            Outcome::WinByResignation { winner } if winner == me => c.wl[1] += 1,
            Outcome::WinByPoints { margin, .. } => {
                c.wl[2] += 1;
                lsum += margin;
                ln += 1;
            }
            Outcome::WinByResignation { .. } => c.wl[3] += 1,
            Outcome::Other => {}
        }
    }
    for s in 0..3 {
        c.captures[s * 3 + 2] = c.captures[s * 3] - c.captures[s * 3 + 1];
    }
    c.win_margin_mean = if wn > 0 { wsum / wn as f64 } else { 0.0 };
    c.loss_margin_mean = if ln > 0 { lsum / ln as f64 } else { 0.0 };
    c
}

/// Hand-worked events of a scripted game: (move number, captures, atari,
/// atari escape). Every move not listed has no capture and no flag.
pub type Events = &'static [(usize, u32, bool, bool)];

pub const SCRIPTED: [(&str, Events); 10] = [
    (
        "(;SZ[9]RE[B+R];B[de];W[ee];B[fe];W[aa];B[ed];W[ab];B[ef])",
        &[(5, 0, true, false), (7, 1, false, false)],
    ),
    (
        "(;SZ[9]RE[B+R];B[ab];W[aa];B[bb];W[ba];B[ee];W[ca];B[cb];W[da];B[db];W[ea];B[eb];W[gg];B[fa])",
        &[
            (6, 0, false, true),
            (7, 0, true, false),
            (8, 0, false, true),
            (9, 0, true, false),
            (10, 0, false, true),
            (11, 0, true, false),
            (13, 5, false, false),
        ],
    ),
    (
        "(;SZ[9]RE[W+3.5];B[ed];W[fd];B[de];W[ee];B[ef];W[ge];B[ai];W[ff];B[fe];W[cc];B[aa];W[ee];B[];W[hh];B[fe])",
        &[(5, 0, true, false), (9, 1, false, false), (12, 1, false, false), (15, 1, false, false)],
    ),
    (
        "(;SZ[9]RE[B+12.5];B[ce];W[de];B[dd];W[fe];B[df];W[ai];B[ge];W[bi];B[fd];W[ci];B[ff];W[ia];B[ee])",
        &[(5, 0, true, false), (11, 0, true, false), (13, 2, false, false)],
    ),
    (
        "(;SZ[9]RE[W+R];B[ae];W[be];B[af];W[bf];B[ag];W[bg];B[ii];W[ad];B[ah];W[bh];B[hh];W[ai])",
        &[(8, 0, true, false), (9, 0, false, true), (10, 0, true, false), (12, 4, false, false)],
    ),
    ("(;SZ[9]RE[Void];B[cc];W[gg];B[];W[cg];B[gc];W[];B[ee];W[])", &[]),
    (
        "(;SZ[9]RE[B+0.5];B[bb];W[ab];B[ac];W[ba];B[ca];W[ee];B[aa])",
        &[(3, 0, true, false), (5, 0, true, false), (7, 2, false, false)],
    ),
    ("(;SZ[9]RE[W+7.5];B[cc];W[cd];B[dd];W[gg];B[gf];W[fg];B[ee];W[ce];B[ge];W[hf])", &[]),
    (
        "(;SZ[9]RE[W+T];B[ee];W[de];B[aa];W[fe];B[ab];W[ed];B[ba];W[ef])",
        &[(6, 0, true, false), (8, 1, false, false)],
    ),
    ("(;SZ[9]HA[2]AB[cc][gg]RE[B+1.5];W[ee];B[ec];W[ce];B[eg];W[ge])", &[]),
];

pub fn scripted_games() -> Vec<GameRecord> {
    SCRIPTED.iter().map(|(s, _)| parse_sgf(s).expect("scripted game parses")).collect()
}

pub fn point_xy(p: Point) -> Xy {
    (p.col as i32, p.row as i32)
}

fn annotated(game: &GameRecord) -> Arc<AnnotatedGame> {
    Arc::new(annotate(Arc::new(game.clone())).expect("scripted game replays"))
}

/// Library annotations of every scripted game against the hand tables and
/// the naive replay.
pub fn check_annotations() -> Result<(), String> {
    for (gi, (game, (_, events))) in scripted_games().iter().zip(SCRIPTED.iter()).enumerate() {
        let naive = naive_replay(game);
        let lib = annotate_game(game).map_err(|e| format!("game {gi}: {e}"))?;
        if lib.len() != naive.len() {
            return Err(format!("game {gi}: {} annotations, naive {}", lib.len(), naive.len()));
        }
        for (a, m) in lib.iter().zip(&naive) {
            let hand = events
                .iter()
                .find(|e| e.0 == m.number)
                .map(|&(_, c, at, esc)| NaiveEffect { captures: c, atari: at, escape: esc })
                .unwrap_or_default();
            if m.effect != hand {
                return Err(format!("game {gi} move {}: naive {:?}, hand {:?}", m.number, m.effect, hand));
            }
            let lib_effect = NaiveEffect { captures: a.captures, atari: a.atari, escape: a.atari_escape };
            let lib_keys: Vec<(u8, u64, u8)> = a.pattern_keys().map(|k| (k.size, k.code, k.flags())).collect();
            if a.move_number != m.number
                || a.color != m.color
                || point_xy(a.point) != m.point
                || lib_effect != m.effect
                || a.contiguity != m.contiguity
                || a.border_distance != m.line
                || lib_keys != m.keys
            {
                return Err(format!("game {gi} move {}: library {a:?} differs from naive {m:?}", m.number));
            }
        }
    }
    Ok(())
}

/// Game sets over the scripted games: every game alone from both sides,
/// plus the whole collection with alternating interest colors.
fn scripted_sets(games: &[GameRecord]) -> Vec<Vec<(usize, Color)>> {
    let mut sets: Vec<Vec<(usize, Color)>> = Vec::new();
    for i in 0..games.len() {
        sets.push(vec![(i, Color::Black)]);
        sets.push(vec![(i, Color::White)]);
    }
    sets.push((0..games.len()).map(|i| (i, if i % 2 == 0 { Color::Black } else { Color::White })).collect());
    sets.push((0..games.len()).map(|i| (i, Color::White)).collect());
    sets
}

fn same_count(lib: f64, n: f64, count: f64) -> bool {
    (lib * n - count).abs() < 1e-9
}

/// All five feature families of the library, scaled back by the set size,
/// against the naive recount.
pub fn check_families() -> Result<(), String> {
    let games = scripted_games();
    let ann: Vec<Arc<AnnotatedGame>> = games.iter().map(annotated).collect();
    let cfg = FeatureConfig::strength();
    let vocab = build_vocabulary(ann.iter().map(|a| a.as_ref()), cfg.vocab_size, &cfg.pattern_sizes)
        .map_err(|e| e.to_string())?;

    // the vocabulary itself: naive counts over the corpus, most frequent first
    let all: Vec<(&GameRecord, Color)> = games.iter().map(|g| (g, Color::Black)).collect();
    let corpus_counts = naive_counts(&all).patterns;
    let mut ranked: Vec<((u8, u64, u8), u64)> = corpus_counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked.truncate(cfg.vocab_size);
    let lib_ranked: Vec<((u8, u64, u8), u64)> =
        vocab.entries().iter().map(|(k, c)| ((k.size, k.code, k.flags()), *c)).collect();
    if lib_ranked != ranked {
        return Err("vocabulary differs from naive ranking".into());
    }

    for spec in scripted_sets(&games) {
        let set = AnnotatedSet {
            player_id: "p".into(),
            entries: spec.iter().map(|&(i, c)| ColoredGame { game: Arc::clone(&ann[i]), color: c }).collect(),
        };
        let v = evaluate_set(&set, &vocab, &cfg).map_err(|e| e.to_string())?;
        let naive = naive_counts(&spec.iter().map(|&(i, c)| (&games[i], c)).collect::<Vec<_>>());
        let n = spec.len() as f64;
        let seg = |name: &str| v.segment(name).unwrap().to_vec();
        let pats = seg("patterns");
        for (i, (k, _)) in vocab.entries().iter().enumerate() {
            let want = naive.patterns.get(&(k.size, k.code, k.flags())).copied().unwrap_or(0);
            if !same_count(pats[i], n, want as f64) {
                return Err(format!("set {spec:?}: pattern {k} library {} naive {want}", pats[i] * n));
            }
        }
        if pats[vocab.len()..].iter().any(|&x| x != 0.0) {
            return Err("padding slots of the pattern segment are not zero".into());
        }
        let sg = seg("sente_gote");
        if !same_count(sg[0], n, naive.sente as f64) || !same_count(sg[1], n, naive.gote as f64) {
            return Err(format!("set {spec:?}: sente/gote {sg:?} vs {} {}", naive.sente, naive.gote));
        }
        let border = seg("border");
        if border.iter().zip(naive.border).any(|(&l, c)| !same_count(l, n, c as f64)) {
            return Err(format!("set {spec:?}: border {border:?} vs {:?}", naive.border));
        }
        let caps = seg("captures");
        if caps.iter().zip(naive.captures).any(|(&l, c)| !same_count(l, n, c as f64)) {
            return Err(format!("set {spec:?}: captures {caps:?} vs {:?}", naive.captures));
        }
        let wl = seg("winloss");
        let counts_ok = wl[..4].iter().zip(naive.wl).all(|(&l, c)| same_count(l, n, c as f64));
        let margins_ok = (wl[4] - naive.win_margin_mean).abs() < 1e-12
            && (wl[5] - naive.loss_margin_mean).abs() < 1e-12;
        if !counts_ok || !margins_ok {
            return Err(format!("set {spec:?}: winloss {wl:?} vs {naive:?}"));
        }
    }
    Ok(())
}

fn random_cell(rng: &mut impl Rng) -> PatternCell {
    [PatternCell::Empty, PatternCell::Black, PatternCell::White, PatternCell::OffBoard][rng.gen_range(0..4)]
}

fn swap(c: PatternCell) -> PatternCell {
    match c {
        PatternCell::Black => PatternCell::White,
        PatternCell::White => PatternCell::Black,
        c => c,
    }
}

/// Random patterns, each compared with a randomly transformed (and maybe
/// color-swapped, with the mover swapped too) copy. Returns the number of
/// trials whose keys agree.
pub fn canonical_invariance_trials(trials: usize, seed: u64) -> usize {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut agree = 0;
    for _ in 0..trials {
        let d = rng.gen_range(2..=6u8);
        let offs = neighborhood(d);
        let cells: Vec<PatternCell> = offs.iter().map(|_| random_cell(&mut rng)).collect();
        let mover = if rng.gen_bool(0.5) { Color::Black } else { Color::White };
        let (atari, escape) = (rng.gen_bool(0.3), rng.gen_bool(0.3));
        let t = rng.gen_range(0..8);
        let swap_colors = rng.gen_bool(0.5);
        let at: HashMap<Xy, PatternCell> = offs.iter().copied().zip(cells.iter().copied()).collect();
        // the transformed pattern holds at T(o) what the original holds at o
        let mut moved: HashMap<Xy, PatternCell> = HashMap::new();
        for (&o, &c) in &at {
            moved.insert(symmetries(o)[t], if swap_colors { swap(c) } else { c });
        }
        let cells2: Vec<PatternCell> = offs.iter().map(|o| moved[o]).collect();
        let mover2 = if swap_colors { mover.opponent() } else { mover };
        let a = canonicalize(&RawPattern::from_cells(d, mover, &cells), atari, escape);
        let b = canonicalize(&RawPattern::from_cells(d, mover2, &cells2), atari, escape);
        let naive = naive_key_of(offs, &cells, mover);
        if a == b && (a.size, a.code) == naive {
            agree += 1;
        }
    }
    agree
}

fn naive_key_of(offs: &[Xy], cells: &[PatternCell], mover: Color) -> (u8, u64) {
    let mut b = NaiveBoard::new(40);
    let center = (20, 20);
    let mut off_board = HashSet::new();
    for (&o, &c) in offs.iter().zip(cells) {
        let p = (center.0 + o.0, center.1 + o.1);
        match c {
            PatternCell::Black => drop(b.stones.insert(p, Color::Black)),
            PatternCell::White => drop(b.stones.insert(p, Color::White)),
            PatternCell::OffBoard => drop(off_board.insert(p)),
            PatternCell::Empty => {}
        }
    }
    let d = offs.iter().map(|&o| naive_gridcular((0, 0), o)).max().unwrap();
    let best = (0..8)
        .map(|t| {
            offs.iter().fold(0u64, |acc, &o| {
                let img = symmetries(o)[t];
                let p = (center.0 + img.0, center.1 + img.1);
                let code = if off_board.contains(&p) { 3 } else { cell_code(&b, p, mover) };
                (acc << 2) | code
            })
        })
        .min()
        .unwrap();
    (d as u8, best)
}

/// Metric axioms on random triples; returns the first violation.
pub fn check_gridcular(triples: usize, seed: u64) -> Result<(), String> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let pt = |rng: &mut rand_chacha::ChaCha8Rng| Point::new(rng.gen_range(1..=25), rng.gen_range(1..=25));
    for _ in 0..triples {
        let (a, b, c) = (pt(&mut rng), pt(&mut rng), pt(&mut rng));
        let d = gridcular_distance;
        if d(a, b) != d(b, a) {
            return Err(format!("asymmetric at {a} {b}"));
        }
        if (d(a, b) == 0) != (a == b) {
            return Err(format!("identity fails at {a} {b}"));
        }
        if d(a, c) > d(a, b) + d(b, c) {
            return Err(format!("triangle fails at {a} {b} {c}"));
        }
        if d(a, b) != naive_gridcular(point_xy(a), point_xy(b)) {
            return Err(format!("distance {a} {b} differs from |dx|+|dy|+max"));
        }
    }
    Ok(())
}

/// Library neighborhoods against brute force over every point of a 19x19
/// board: the on-board cells of the library pattern are exactly the board
/// points within distance d.
pub fn check_neighborhoods() -> Result<(), String> {
    let sizes = [(2, 4), (3, 8), (4, 12), (5, 20), (6, 28)];
    for (d, len) in sizes {
        let lib = neighborhood(d);
        if lib != naive_neighborhood(d as u32).as_slice() || lib.len() != len {
            return Err(format!("neighborhood {d}: {lib:?}"));
        }
        for col in 1..=19 {
            for row in 1..=19 {
                let c = Point::new(col, row);
                let mut brute: Vec<Point> = (1..=19u8)
                    .flat_map(|x| (1..=19u8).map(move |y| Point::new(x, y)))
                    .filter(|&p| (1..=d as u32).contains(&gridcular_distance(c, p)))
                    .collect();
                let mut got: Vec<Point> = lib
                    .iter()
                    .map(|&(dx, dy)| (col as i32 + dx, row as i32 + dy))
                    .filter(|&(x, y)| (1..=19).contains(&x) && (1..=19).contains(&y))
                    .map(|(x, y)| Point::new(x as u8, y as u8))
                    .collect();
                brute.sort();
                got.sort();
                if brute != got {
                    return Err(format!("neighborhood {d} at {c}"));
                }
            }
        }
    }
    Ok(())
}

/// Border total, capture difference and win/loss rate invariants over
/// random sets drawn from a small synthetic corpus.
pub fn check_conservation(sets: usize, seed: u64) -> Result<(), String> {
    let corpus = generate(&SynthConfig::new(SynthProfile::Planted, 10, 12, seed)).map_err(|e| e.to_string())?;
    let ann: Vec<Arc<AnnotatedGame>> = corpus
        .games
        .iter()
        .map(|g| annotated(&parse_sgf(&g.sgf).expect("synthetic game parses")))
        .collect();
    let cfg = FeatureConfig::strength();
    let vocab = build_vocabulary(ann.iter().map(|a| a.as_ref()), 50, &cfg.pattern_sizes)
        .map_err(|e| e.to_string())?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for s in 0..sets {
        let k = rng.gen_range(1..=20);
        let entries: Vec<ColoredGame<AnnotatedGame>> = (0..k)
            .map(|_| ColoredGame {
                game: Arc::clone(&ann[rng.gen_range(0..ann.len())]),
                color: if rng.gen_bool(0.5) { Color::Black } else { Color::White },
            })
            .collect();
        let interest_moves: usize =
            entries.iter().map(|e| e.game.moves.iter().filter(|m| m.color == e.color).count()).sum();
        let set = AnnotatedSet { player_id: format!("s{s}"), entries };
        let v = evaluate_set(&set, &vocab, &cfg).map_err(|e| e.to_string())?;
        let n = k as f64;
        let border: f64 = v.segment("border").unwrap().iter().sum();
        if (border * n - interest_moves as f64).abs() > 1e-6 {
            return Err(format!("set {s}: border total {} vs {interest_moves} moves", border * n));
        }
        let caps = v.segment("captures").unwrap();
        for st in caps.chunks(3) {
            if (st[2] - (st[0] - st[1])).abs() > 1e-12 {
                return Err(format!("set {s}: capture difference {st:?}"));
            }
        }
        let rates: f64 = v.segment("winloss").unwrap()[..4].iter().sum();
        if rates > 1.0 + 1e-12 {
            return Err(format!("set {s}: win/loss rates sum to {rates}"));
        }
    }
    Ok(())
}

/// Repeated 10-fold CV of the mean regressor on 26 evenly filled ranks
/// (120 sets each, targets -5..=20).
pub fn mean_anchor(seed: u64) -> CvReport {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for t in -5..=20 {
        for _ in 0..120 {
            xs.push(vec![rng.gen::<f64>()]);
            ys.push(t as f64);
        }
    }
    let data = LabeledDataset::from_xy(xs, ys).expect("balanced dataset");
    let opts = CvOptions { seed, ..CvOptions::default() };
    cross_validate(&data, &ModelSpec::Mean, &opts, "none").expect("mean regression CV")
}

/// Largest relative error between the analytic gradient and central
/// differences over `instances` random networks, each on its own random data.
/// Components below 1e-6 in magnitude are compared absolutely.
pub fn worst_gradient_error(instances: usize, inputs: usize, seed: u64) -> f64 {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let h = 1e-6;
    let mut worst = 0.0f64;
    for _ in 0..instances {
        let xs: Vec<Vec<f64>> = (0..20).map(|_| (0..inputs).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        let ys: Vec<f64> = (0..20).map(|_| rng.gen_range(-0.9..0.9)).collect();
        let mut net = Network::random(inputs, &mut rng);
        let (_, grad) = net.mse_and_gradient(&xs, &ys);
        let base = net.params();
        for k in 0..base.len() {
            let mut p = base.clone();
            p[k] = base[k] + h;
            net.set_params(&p);
            let up = net.mse(&xs, &ys);
            p[k] = base[k] - h;
            net.set_params(&p);
            let down = net.mse(&xs, &ys);
            net.set_params(&base);
            let num = (up - down) / (2.0 * h);
            let rel = (num - grad[k]).abs() / num.abs().max(grad[k].abs()).max(1e-6);
            worst = worst.max(rel);
        }
    }
    worst
}
