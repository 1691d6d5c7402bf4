use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use goeval::evaluation::{
    ablation_delimited, ablation_text, feature_ablation, AblationRow, AblationTable, CvOptions,
    LabeledDataset, ModelSpec, ALL_COMBINED, MEAN_BASELINE,
};
use goeval::features::{
    evaluate_set, EvaluationMatrix, FeatureConfig, PatternVocabulary, Preset, SegmentLayout,
    SEGMENT_NAMES,
};
use goeval::ingest::sets::{
    assemble_strength_sets, assemble_style_sets, player_games, ColoredGame, ColoredGameSet,
    STYLE_DIMENSIONS,
};
use goeval::ingest::{parse_sgf, GameRecord};
use goeval::pipeline::{AnnotationIndex, LabeledSets};
use goeval::predictor::{train_bagged, ModelBundle};
use goeval::rng::derive_seed;
use goeval::synth::{generate, SynthConfig, SynthProfile};

use crate::args::*;
use crate::io::{feature_config, input_error, load_corpus, read_text, with_suffix, write_atomic, LoadedCorpus};
use crate::run_manifest::RunManifest;

/// How a successful command ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Complete,
    /// Output was written but some inputs were unreadable.
    Partial,
}

impl RunStatus {
    fn from_partial(partial: bool) -> RunStatus {
        if partial {
            RunStatus::Partial
        } else {
            RunStatus::Complete
        }
    }
}

fn base_manifest(command: &str, argv: &[String], features: Option<(&FeatureArgs, &FeatureConfig)>) -> RunManifest {
    let mut m = RunManifest::new(command, argv);
    if let Some((args, cfg)) = features {
        m.preset = Some(cfg.preset.to_string());
        m.config_path = args.config.clone();
        m.config = Some(cfg.to_kv());
    }
    m
}

fn read_vocab(path: &Path) -> Result<PatternVocabulary> {
    PatternVocabulary::parse(&read_text(path)?).with_context(|| format!("in vocabulary {}", path.display()))
}

fn read_matrix(path: &Path) -> Result<EvaluationMatrix> {
    EvaluationMatrix::parse(&read_text(path)?).with_context(|| format!("in matrix {}", path.display()))
}

fn annotate_corpus(corpus: &LoadedCorpus) -> AnnotationIndex {
    let (index, failures) = AnnotationIndex::build(&corpus.records());
    for (i, e) in failures {
        log::warn!("skipping {}: {e}", corpus.games[i].entry.path.display());
    }
    index
}

pub fn build_vocab(args: &BuildVocabArgs, argv: &[String]) -> Result<RunStatus> {
    let cfg = feature_config(&args.features)?;
    let corpus = load_corpus(&args.corpus.corpus)?;
    let index = annotate_corpus(&corpus);
    let games: Vec<_> = corpus
        .games
        .iter()
        .filter(|g| {
            let who = args.corpus.player.as_deref().or(g.entry.player.as_deref());
            who.is_none_or(|p| g.record.color_of(p).is_some())
        })
        .filter_map(|g| index.get(&g.record))
        .map(|a| a.as_ref())
        .collect();
    if games.is_empty() {
        bail!(input_error("no replayable game in the corpus"));
    }
    let vocab = goeval::features::build_vocabulary(games.iter().copied(), cfg.vocab_size, &cfg.pattern_sizes)?;
    write_atomic(&args.out, vocab.to_text().as_bytes())?;

    println!("{} patterns from {} games (requested {})", vocab.len(), games.len(), cfg.vocab_size);
    for (i, (key, count)) in vocab.entries().iter().take(10).enumerate() {
        println!("{:>3}  {key}  {count}", i + 1);
    }

    let mut m = base_manifest("build-vocab", argv, Some((&args.features, &cfg)));
    m.inputs.push(args.corpus.corpus.clone());
    m.outputs.push(args.out.clone());
    m.partial_corpus = corpus.is_partial();
    m.write(&args.out)?;
    Ok(RunStatus::from_partial(corpus.is_partial()))
}

/// `player v1 v2 v3 v4` per line, each value in [1, 10].
pub fn parse_style_labels(text: &str) -> Result<BTreeMap<String, [f64; STYLE_DIMENSIONS]>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 1 + STYLE_DIMENSIONS {
            bail!(input_error(format!("labels line {}: expected a player and {STYLE_DIMENSIONS} values", i + 1)));
        }
        let mut vals = [0.0; STYLE_DIMENSIONS];
        for (v, f) in vals.iter_mut().zip(&fields[1..]) {
            *v = f
                .parse()
                .map_err(|_| input_error(format!("labels line {}: bad number {f:?}", i + 1)))?;
        }
        if out.insert(fields[0].to_string(), vals).is_some() {
            bail!(input_error(format!("labels line {}: duplicate player {}", i + 1, fields[0])));
        }
    }
    Ok(out)
}

/// Game sets with targets, for either preset.
fn labeled_sets(
    corpus: &LoadedCorpus,
    index: &AnnotationIndex,
    cfg: &FeatureConfig,
    player: Option<&str>,
    labels: Option<&Path>,
    seed: u64,
) -> Result<LabeledSets> {
    let sets = match cfg.preset {
        Preset::Strength => {
            let pg: Vec<_> = corpus
                .games
                .iter()
                .flat_map(|g| {
                    let who = player.or(g.entry.player.as_deref());
                    player_games(&g.record, who, g.entry.rank)
                })
                .collect();
            LabeledSets::strength(&assemble_strength_sets(&pg, seed), index)
        }
        Preset::Style => {
            let path = labels.ok_or_else(|| input_error("the style preset needs --labels"))?;
            let labels = parse_style_labels(&read_text(path)?)?;
            let mut sets = Vec::new();
            for (i, (name, vals)) in labels.iter().enumerate() {
                if player.is_some_and(|p| p != name) {
                    continue;
                }
                let games: Vec<ColoredGame<GameRecord>> = corpus
                    .games
                    .iter()
                    .filter_map(|g| {
                        g.record.color_of(name).map(|color| ColoredGame { game: Arc::clone(&g.record), color })
                    })
                    .collect();
                match assemble_style_sets(name, &games, *vals, derive_seed(seed, i as u64)) {
                    Ok(s) => sets.extend(s),
                    Err(e) => log::warn!("skipping style player {name}: {e}"),
                }
            }
            LabeledSets::style(&sets, index)
        }
    };
    if sets.is_empty() {
        bail!(input_error("no game set could be assembled from the corpus"));
    }
    Ok(sets)
}

fn check_vocab(vocab: &PatternVocabulary, cfg: &FeatureConfig) -> Result<()> {
    let built_for = vocab.len() + vocab.shortfall;
    if built_for != cfg.vocab_size {
        bail!(input_error(format!(
            "vocabulary was built for {built_for} patterns but the configuration expects {}",
            cfg.vocab_size
        )));
    }
    Ok(())
}

pub fn extract(args: &ExtractArgs, argv: &[String]) -> Result<RunStatus> {
    let cfg = feature_config(&args.features)?;
    let vocab = read_vocab(&args.vocab)?;
    check_vocab(&vocab, &cfg)?;
    let corpus = load_corpus(&args.corpus.corpus)?;
    let index = annotate_corpus(&corpus);
    let sets = labeled_sets(&corpus, &index, &cfg, args.corpus.player.as_deref(), args.labels.as_deref(), args.seed)?;
    let matrix = sets.matrix(&vocab, &cfg)?;
    write_atomic(&args.out, matrix.to_text().as_bytes())?;
    log::info!("wrote {} rows to {}", matrix.rows.len(), args.out.display());

    let mut m = base_manifest("extract", argv, Some((&args.features, &cfg)));
    m.seed = Some(args.seed);
    m.inputs.extend([args.corpus.corpus.clone(), args.vocab.clone()]);
    m.inputs.extend(args.labels.clone());
    m.outputs.push(args.out.clone());
    m.partial_corpus = corpus.is_partial();
    m.write(&args.out)?;
    Ok(RunStatus::from_partial(corpus.is_partial()))
}

fn model_spec(arg: ModelArg) -> ModelSpec {
    match arg {
        ModelArg::Mean => ModelSpec::Mean,
        ModelArg::BaggedNn => ModelSpec::bagged(),
    }
}

fn target_indices(names: &[String], wanted: Option<&str>) -> Result<Vec<usize>> {
    match wanted {
        None => Ok((0..names.len()).collect()),
        Some(w) => names
            .iter()
            .position(|n| n == w)
            .map(|i| vec![i])
            .ok_or_else(|| input_error(format!("unknown target {w:?}; available: {}", names.join(", ")))),
    }
}

pub fn crossval(args: &CrossvalArgs, argv: &[String]) -> Result<RunStatus> {
    let spec = model_spec(args.model);
    let options = CvOptions {
        folds: args.folds,
        repeats: args.repeats,
        seed: args.seed,
        group_aware: args.group_by_player,
    };
    let mut m = base_manifest("crossval", argv, None);
    m.seed = Some(args.seed);
    let mut tables = Vec::new();
    let mut partial = false;

    if args.vocab_from_train {
        let cfg = feature_config(&args.features)?;
        let corpus_path = args.corpus.as_ref().expect("clap enforces --corpus");
        let corpus = load_corpus(corpus_path)?;
        partial = corpus.is_partial();
        let index = annotate_corpus(&corpus);
        let sets = labeled_sets(&corpus, &index, &cfg, args.player.as_deref(), args.labels.as_deref(), args.seed)?;
        for t in target_indices(&sets.target_names, args.target.as_deref())? {
            let name = &sets.target_names[t];
            log::info!("leak-free cross-validation of {name}");
            let base = sets.cross_validate_leak_free(t, &ModelSpec::Mean, &options, &cfg)?.report;
            let mut model = sets.cross_validate_leak_free(t, &spec, &options, &cfg)?.report;
            model.features = format!("{ALL_COMBINED} (fold vocabulary)");
            let mut baseline = base;
            baseline.features = MEAN_BASELINE.to_string();
            let mean_cmp = baseline.mean / model.mean;
            tables.push(AblationTable {
                target: name.clone(),
                baseline,
                rows: vec![AblationRow { report: model, mean_cmp }],
            });
        }
        m.preset = Some(cfg.preset.to_string());
        m.config = Some(cfg.to_kv());
        m.config_path = args.features.config.clone();
        m.inputs.push(corpus_path.clone());
        m.inputs.extend(args.labels.clone());
    } else {
        let path = args.matrix.as_ref().expect("clap enforces --matrix");
        let matrix = read_matrix(path)?;
        if matrix.rows.is_empty() {
            bail!(input_error(format!("matrix {} has no rows", path.display())));
        }
        let segments: Vec<&str> = if args.ablate {
            SEGMENT_NAMES.iter().copied().filter(|s| matrix.layout.get(s).is_some()).collect()
        } else {
            Vec::new()
        };
        for t in target_indices(&matrix.target_names, args.target.as_deref())? {
            let name = &matrix.target_names[t];
            log::info!("cross-validating {name} with {}", spec.label());
            let data = LabeledDataset::from_matrix(&matrix, t, args.group_by_player)?;
            tables.push(feature_ablation(&data, &spec, &matrix.layout, &segments, &options, name)?);
        }
        m.inputs.push(path.clone());
    }

    let text: String = tables.iter().map(ablation_text).collect::<Vec<_>>().join("\n");
    let mut tsv = String::new();
    for (i, t) in tables.iter().enumerate() {
        let block = ablation_delimited(t, '\t');
        tsv.push_str(if i == 0 { &block } else { block.split_once('\n').map_or("", |(_, rest)| rest) });
    }
    let (txt_path, tsv_path) = (with_suffix(&args.out, ".txt"), with_suffix(&args.out, ".tsv"));
    write_atomic(&txt_path, text.as_bytes())?;
    write_atomic(&tsv_path, tsv.as_bytes())?;
    print!("{text}");
    m.outputs.extend([txt_path, tsv_path]);
    m.partial_corpus = partial;
    m.write(&args.out)?;
    Ok(RunStatus::from_partial(partial))
}

pub fn train(args: &TrainArgs, argv: &[String]) -> Result<RunStatus> {
    let matrix = read_matrix(&args.matrix)?;
    if matrix.rows.is_empty() {
        bail!(input_error(format!("matrix {} has no rows", args.matrix.display())));
    }
    let xs: Vec<Vec<f64>> = matrix.rows.iter().map(|r| r.values.clone()).collect();
    let mut targets = Vec::new();
    for (t, name) in matrix.target_names.iter().enumerate() {
        log::info!("training {name} on {} rows", xs.len());
        let model = train_bagged(&xs, &matrix.target_column(t), derive_seed(args.seed, t as u64))?;
        targets.push((name.clone(), model));
    }
    let bundle = ModelBundle { layout: matrix.layout.clone(), targets };
    write_atomic(&args.out, bundle.to_text().as_bytes())?;

    let mut m = base_manifest("train", argv, None);
    m.seed = Some(args.seed);
    m.inputs.push(args.matrix.clone());
    m.outputs.push(args.out.clone());
    m.write(&args.out)?;
    Ok(RunStatus::Complete)
}

fn common_player(games: &[Arc<GameRecord>]) -> Option<String> {
    let names = |g: &GameRecord| [g.black_name.clone(), g.white_name.clone()];
    let mut candidates: Vec<String> = names(&games[0]).into_iter().flatten().collect();
    candidates.retain(|n| games.iter().all(|g| g.color_of(n).is_some()));
    candidates.dedup();
    (candidates.len() == 1).then(|| candidates.remove(0))
}

pub fn predict(args: &PredictArgs, argv: &[String]) -> Result<RunStatus> {
    let cfg = feature_config(&args.features)?;
    let bundle = ModelBundle::parse(&read_text(&args.model)?)
        .with_context(|| format!("in model {}", args.model.display()))?;
    let vocab = read_vocab(&args.vocab)?;
    check_vocab(&vocab, &cfg)?;
    let layout = SegmentLayout::for_config(&cfg);
    if layout != bundle.layout {
        bail!(input_error(format!(
            "model was trained on features [{}] but the configuration gives [{layout}]",
            bundle.layout
        )));
    }

    let mut records = Vec::new();
    let mut failures = 0;
    for path in &args.games {
        match read_text(path).and_then(|t| parse_sgf(&t).with_context(|| format!("cannot parse {}", path.display()))) {
            Ok(r) => records.push(Arc::new(r)),
            Err(e) => {
                log::error!("{e:#}");
                failures += 1;
            }
        }
    }
    if records.is_empty() {
        bail!(input_error("none of the given games could be parsed"));
    }
    let player = match &args.player {
        Some(p) => p.clone(),
        None => common_player(&records)
            .ok_or_else(|| input_error("cannot tell which player to evaluate; pass --player"))?,
    };
    let mut entries = Vec::new();
    for r in &records {
        match r.color_of(&player) {
            Some(color) => entries.push(ColoredGame { game: Arc::clone(r), color }),
            None => log::warn!("{player} does not play in one of the games; ignored"),
        }
    }
    let (index, bad) = AnnotationIndex::build(&records);
    for (_, e) in bad {
        log::warn!("skipping a game: {e}");
    }
    let set = index.annotate_set(&ColoredGameSet { player_id: player.clone(), entries });
    if set.is_empty() {
        bail!(input_error(format!("no replayable game of {player}")));
    }
    let vector = evaluate_set(&set, &vocab, &cfg)?;

    let mut report = String::new();
    let _ = writeln!(report, "player\t{player}\ngames\t{}", set.len());
    let mut notes = Vec::new();
    for (name, model) in &bundle.targets {
        let p = model.predict_detailed(&vector.values)?;
        let _ = writeln!(report, "{name}\t{:.3}", p.value);
        if p.clamped > 0 {
            notes.push(format!(
                "{} feature values lie outside the {name} model's training range and were clamped",
                p.clamped
            ));
        }
    }
    let _ = writeln!(report, "segment\tlength\tsum\tnonzero");
    for seg in layout.segments() {
        let v = &vector.values[seg.range()];
        let nonzero = v.iter().filter(|x| **x != 0.0).count();
        let _ = writeln!(report, "{}\t{}\t{:.4}\t{nonzero}", seg.name, seg.len, v.iter().sum::<f64>());
    }
    for n in &notes {
        log::warn!("{n}");
        let _ = writeln!(report, "# note: {n}");
    }
    print!("{report}");
    if let Some(out) = &args.out {
        write_atomic(out, report.as_bytes())?;
        let mut m = base_manifest("predict", argv, Some((&args.features, &cfg)));
        m.inputs.extend([args.model.clone(), args.vocab.clone()]);
        m.inputs.extend(args.games.iter().cloned());
        m.outputs.push(out.clone());
        m.partial_corpus = failures > 0;
        m.write(out)?;
    }
    Ok(RunStatus::from_partial(failures > 0))
}

pub fn synth(args: &SynthArgs, argv: &[String]) -> Result<RunStatus> {
    let profile = match args.profile {
        ProfileArg::Planted => SynthProfile::Planted,
        ProfileArg::Null => SynthProfile::Null,
    };
    let corpus = generate(&SynthConfig::new(profile, args.players, args.games_per_player, args.seed))?;
    for g in &corpus.games {
        write_atomic(&args.out.join(&g.path), g.sgf.as_bytes())?;
    }
    let labels: PathBuf = args.out.join("labels.tsv");
    let manifest = args.out.join("corpus.txt");
    write_atomic(&labels, corpus.labels_text().as_bytes())?;
    write_atomic(&manifest, corpus.manifest_text().as_bytes())?;
    log::info!("wrote {} games for {} players to {}", corpus.games.len(), corpus.labels.len(), args.out.display());

    let mut m = base_manifest("synth", argv, None);
    m.seed = Some(args.seed);
    m.outputs.extend([manifest.clone(), labels]);
    m.write(&manifest)?;
    Ok(RunStatus::Complete)
}
