use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "goeval", version, about = "Predict player strength and style from Go game records")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count patterns over a corpus and keep the most frequent ones.
    BuildVocab(BuildVocabArgs),
    /// Assemble game sets and write their evaluation vectors.
    Extract(ExtractArgs),
    /// Repeated k-fold cross-validation with RMSE reports.
    Crossval(CrossvalArgs),
    /// Train one bagged model per target of a matrix.
    Train(TrainArgs),
    /// Predict the targets of one player from a few games.
    Predict(PredictArgs),
    /// Generate a synthetic corpus with known per-player targets.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    Strength,
    Style,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Mean,
    BaggedNn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Planted,
    Null,
}

/// Feature configuration: defaults, then preset, then config file, then `--set`.
#[derive(Debug, Clone, Args)]
pub struct FeatureArgs {
    #[arg(long, value_enum)]
    pub preset: Option<PresetArg>,

    /// File of `key = value` lines overriding the preset.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Single `key=value` override, applied last (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CorpusArgs {
    /// Corpus manifest: one `path [player] [rank]` per line.
    #[arg(long)]
    pub corpus: PathBuf,

    /// Only use this player's side of each game.
    #[arg(long)]
    pub player: Option<String>,
}

#[derive(Debug, Args)]
pub struct BuildVocabArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub features: FeatureArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub features: FeatureArgs,
    #[arg(long)]
    pub vocab: PathBuf,
    /// Style labels: `player territoriality orthodoxity aggressivity thickness`.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CrossvalArgs {
    /// Evaluation matrix written by `extract`.
    #[arg(long, required_unless_present = "vocab_from_train", conflicts_with = "vocab_from_train")]
    pub matrix: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = ModelArg::BaggedNn)]
    pub model: ModelArg,

    /// Also cross-validate every feature segment on its own.
    #[arg(long)]
    pub ablate: bool,

    /// Rebuild the pattern vocabulary from each training fold (needs --corpus).
    #[arg(long, requires = "corpus")]
    pub vocab_from_train: bool,

    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[arg(long)]
    pub player: Option<String>,
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[command(flatten)]
    pub features: FeatureArgs,

    /// Only this target column (default: all).
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long, default_value_t = 10)]
    pub folds: usize,
    #[arg(long, default_value_t = 5)]
    pub repeats: usize,
    /// Keep all sets of a player in one fold.
    #[arg(long)]
    pub group_by_player: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output prefix; writes `<out>.txt` and `<out>.tsv`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Model written by `train`.
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub vocab: PathBuf,
    #[command(flatten)]
    pub features: FeatureArgs,
    /// Player of interest (default: the one name common to all games).
    #[arg(long)]
    pub player: Option<String>,
    /// Also write the report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(required = true)]
    pub games: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, value_enum, default_value_t = ProfileArg::Planted)]
    pub profile: ProfileArg,
    #[arg(long, default_value_t = 100)]
    pub players: usize,
    #[arg(long = "games", default_value_t = 20)]
    pub games_per_player: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}
