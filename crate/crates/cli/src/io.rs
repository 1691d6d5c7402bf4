//! File plumbing shared by the commands.

use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use goeval::features::{FeatureConfig, Preset};
use goeval::ingest::{parse_manifest, parse_sgf, GameRecord, ManifestEntry};
use rayon::prelude::*;

use crate::args::{FeatureArgs, PresetArg};

/// Bad input from the user (as opposed to a bug); exits with status 1.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn input_error(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(InputError(msg.into()))
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Writes via a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)
        .with_context(|| format!("cannot create a temporary file in {}", dir.display()))?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

/// `<path><suffix>`, e.g. `out` + `.tsv`.
pub fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn preset_of(arg: PresetArg) -> Preset {
    match arg {
        PresetArg::Strength => Preset::Strength,
        PresetArg::Style => Preset::Style,
    }
}

/// Merges defaults, preset, config file and `--set` overrides, last wins.
/// Without `--preset`, a `preset` key in the config file picks the preset.
pub fn feature_config(args: &FeatureArgs) -> Result<FeatureConfig> {
    let file = args.config.as_deref().map(read_text).transpose()?;
    let file_preset = file.as_deref().and_then(|text| {
        text.lines()
            .filter_map(|l| l.split('#').next()?.split_once('='))
            .find(|(k, _)| k.trim() == "preset")
            .map(|(_, v)| v.trim().to_string())
    });
    let preset = match (args.preset, file_preset) {
        (Some(p), _) => preset_of(p),
        (None, Some(p)) => p.parse().map_err(|e: goeval::Error| input_error(e.to_string()))?,
        (None, None) => Preset::Strength,
    };
    let mut cfg = FeatureConfig::for_preset(preset);
    if let (Some(text), Some(path)) = (&file, &args.config) {
        cfg.apply_kv(text).with_context(|| format!("in config {}", path.display()))?;
    }
    for kv in &args.overrides {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| input_error(format!("--set expects KEY=VALUE, got {kv:?}")))?;
        cfg.set(k.trim(), v.trim()).with_context(|| format!("in --set {kv}"))?;
    }
    cfg.validate()?;
    Ok(cfg)
}

#[derive(Debug, Clone)]
pub struct LoadedGame {
    pub entry: ManifestEntry,
    pub record: Arc<GameRecord>,
}

#[derive(Debug, Default)]
pub struct LoadedCorpus {
    pub games: Vec<LoadedGame>,
    /// Entries that could not be read or parsed.
    pub failures: usize,
}

impl LoadedCorpus {
    pub fn is_partial(&self) -> bool {
        self.failures > 0
    }

    pub fn records(&self) -> Vec<Arc<GameRecord>> {
        self.games.iter().map(|g| Arc::clone(&g.record)).collect()
    }
}

/// Reads every game of a manifest. Unreadable or malformed games are logged
/// and counted; an empty manifest or a corpus with no usable game is an error.
pub fn load_corpus(manifest: &Path) -> Result<LoadedCorpus> {
    let text = read_text(manifest)?;
    let base = manifest.parent().unwrap_or(Path::new("."));
    let entries = parse_manifest(&text, base)
        .with_context(|| format!("in manifest {}", manifest.display()))?;
    if entries.is_empty() {
        return Err(input_error(format!("corpus manifest {} lists no games", manifest.display())));
    }
    let parsed: Vec<Result<GameRecord>> = entries
        .par_iter()
        .map(|e| {
            let text = read_text(&e.path)?;
            parse_sgf(&text).with_context(|| format!("cannot parse {}", e.path.display()))
        })
        .collect();
    let mut corpus = LoadedCorpus::default();
    for (entry, res) in entries.into_iter().zip(parsed) {
        match res {
            Ok(record) => corpus.games.push(LoadedGame { entry, record: Arc::new(record) }),
            Err(e) => {
                log::error!("{e:#}");
                corpus.failures += 1;
            }
        }
    }
    if corpus.games.is_empty() {
        return Err(input_error("no game in the corpus could be read"));
    }
    if corpus.is_partial() {
        log::warn!("{} of {} games could not be read", corpus.failures, corpus.failures + corpus.games.len());
    }
    Ok(corpus)
}
