//! Glue between ingestion, annotation, feature extraction and evaluation.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::board::{annotate, AnnotatedGame};
use crate::error::{AnnotateError, Error, Result};
use crate::evaluation::{cross_validate_with, CvOptions, CvOutcome, ModelSpec};
use crate::features::{
    build_vocabulary, evaluate_set, AnnotatedSet, EvaluationMatrix, FeatureConfig, MatrixRow,
    PatternVocabulary, SegmentLayout,
};
use crate::ingest::sets::{ColoredGameSet, StrengthSet, StyleSet, STYLE_NAMES};
use crate::ingest::GameRecord;

/// Annotated games looked up by the identity of their source record.
#[derive(Debug, Default, Clone)]
pub struct AnnotationIndex {
    by_record: HashMap<usize, Arc<AnnotatedGame>>,
}

fn record_key(record: &Arc<GameRecord>) -> usize {
    Arc::as_ptr(record) as usize
}

impl AnnotationIndex {
    /// Replays every record. Failed replays are returned alongside, in input order.
    pub fn build(records: &[Arc<GameRecord>]) -> (AnnotationIndex, Vec<(usize, AnnotateError)>) {
        let results: Vec<_> = records.par_iter().map(|r| annotate(Arc::clone(r))).collect();
        let mut index = AnnotationIndex::default();
        let mut failures = Vec::new();
        for (i, (rec, res)) in records.iter().zip(results).enumerate() {
            match res {
                Ok(a) => {
                    index.by_record.insert(record_key(rec), Arc::new(a));
                }
                Err(e) => failures.push((i, e)),
            }
        }
        (index, failures)
    }

    pub fn get(&self, record: &Arc<GameRecord>) -> Option<&Arc<AnnotatedGame>> {
        self.by_record.get(&record_key(record))
    }

    pub fn len(&self) -> usize {
        self.by_record.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_record.is_empty()
    }

    /// Swaps the records of a set for their annotations; games that failed
    /// to replay are dropped.
    pub fn annotate_set(&self, set: &ColoredGameSet) -> AnnotatedSet {
        let entries = set
            .entries
            .iter()
            .filter_map(|e| {
                self.get(&e.game).map(|a| crate::ingest::sets::ColoredGame {
                    game: Arc::clone(a),
                    color: e.color,
                })
            })
            .collect();
        ColoredGameSet { player_id: set.player_id.clone(), entries }
    }
}

/// Annotated game sets with their targets.
#[derive(Debug, Clone)]
pub struct LabeledSets {
    pub target_names: Vec<String>,
    pub sets: Vec<AnnotatedSet>,
    pub targets: Vec<Vec<f64>>,
}

impl LabeledSets {
    pub fn strength(sets: &[StrengthSet], index: &AnnotationIndex) -> LabeledSets {
        let mut out = LabeledSets { target_names: vec!["strength".into()], sets: vec![], targets: vec![] };
        for s in sets {
            let a = index.annotate_set(&s.set);
            if !a.is_empty() {
                out.sets.push(a);
                out.targets.push(vec![s.target]);
            }
        }
        out
    }

    pub fn style(sets: &[StyleSet], index: &AnnotationIndex) -> LabeledSets {
        let mut out = LabeledSets {
            target_names: STYLE_NAMES.iter().map(|s| s.to_string()).collect(),
            sets: vec![],
            targets: vec![],
        };
        for s in sets {
            let a = index.annotate_set(&s.set);
            if !a.is_empty() {
                out.sets.push(a);
                out.targets.push(s.targets.to_vec());
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Distinct games of the selected sets, in first-seen order.
    pub fn games(&self, idx: &[usize]) -> Vec<&AnnotatedGame> {
        let mut seen = std::collections::HashSet::new();
        idx.iter()
            .flat_map(|&i| self.sets[i].entries.iter())
            .filter(|e| seen.insert(Arc::as_ptr(&e.game) as usize))
            .map(|e| e.game.as_ref())
            .collect()
    }

    pub fn vocabulary(&self, idx: &[usize], config: &FeatureConfig) -> Result<PatternVocabulary> {
        build_vocabulary(self.games(idx), config.vocab_size, &config.pattern_sizes)
    }

    pub fn vectors(
        &self,
        idx: &[usize],
        vocab: &PatternVocabulary,
        config: &FeatureConfig,
    ) -> Result<Vec<Vec<f64>>> {
        idx.par_iter()
            .map(|&i| evaluate_set(&self.sets[i], vocab, config).map(|v| v.values))
            .collect()
    }

    pub fn matrix(&self, vocab: &PatternVocabulary, config: &FeatureConfig) -> Result<EvaluationMatrix> {
        let all: Vec<usize> = (0..self.len()).collect();
        let vectors = self.vectors(&all, vocab, config)?;
        let mut m = EvaluationMatrix::new(SegmentLayout::for_config(config), self.target_names.clone());
        for ((set, targets), values) in self.sets.iter().zip(&self.targets).zip(vectors) {
            m.push(MatrixRow { player_id: set.player_id.clone(), targets: targets.clone(), values })?;
        }
        Ok(m)
    }

    /// Cross-validation with the vocabulary rebuilt from each training fold.
    pub fn cross_validate_leak_free(
        &self,
        target: usize,
        spec: &ModelSpec,
        options: &CvOptions,
        config: &FeatureConfig,
    ) -> Result<CvOutcome> {
        if target >= self.target_names.len() {
            return Err(Error::domain(format!("no target column {target}")));
        }
        let ys: Vec<f64> = self.targets.iter().map(|t| t[target]).collect();
        let groups: Vec<&str> = self.sets.iter().map(|s| s.player_id.as_str()).collect();
        cross_validate_with(
            &ys,
            options.group_aware.then_some(groups.as_slice()),
            spec,
            options,
            "All features combined (fold vocabulary)",
            |train, test| {
                let vocab = self.vocabulary(train, config)?;
                Ok((self.vectors(train, &vocab, config)?, self.vectors(test, &vocab, config)?))
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::sets::{assemble_strength_sets, player_games};
    use crate::ingest::parse_sgf;
    use crate::synth::{generate, SynthConfig, SynthProfile};

    fn small() -> (LabeledSets, FeatureConfig) {
        let corpus = generate(&SynthConfig::new(SynthProfile::Planted, 12, 10, 1)).unwrap();
        let records: Vec<Arc<GameRecord>> =
            corpus.games.iter().map(|g| Arc::new(parse_sgf(&g.sgf).unwrap())).collect();
        let (index, failures) = AnnotationIndex::build(&records);
        assert!(failures.is_empty());
        let pg: Vec<_> = records.iter().flat_map(|r| player_games(r, None, None)).collect();
        let sets = assemble_strength_sets(&pg, 0);
        assert_eq!(sets.len(), 12);
        let mut cfg = FeatureConfig::strength();
        cfg.vocab_size = 50;
        (LabeledSets::strength(&sets, &index), cfg)
    }

    #[test]
    fn matrix_shape() {
        let (ls, cfg) = small();
        let all: Vec<usize> = (0..ls.len()).collect();
        let vocab = ls.vocabulary(&all, &cfg).unwrap();
        let m = ls.matrix(&vocab, &cfg).unwrap();
        assert_eq!(m.rows.len(), 12);
        assert_eq!(m.rows[0].values.len(), 50 + 2 + 16 + 9 + 6);
        assert_eq!(ls.games(&all).len(), 120);
    }

    #[test]
    fn leak_free_runs() {
        let (ls, cfg) = small();
        let opts = CvOptions { folds: 4, repeats: 2, seed: 1, group_aware: false };
        let out = ls.cross_validate_leak_free(0, &ModelSpec::Mean, &opts, &cfg).unwrap();
        assert_eq!(out.report.repeat_rmse.len(), 2);
    }
}
