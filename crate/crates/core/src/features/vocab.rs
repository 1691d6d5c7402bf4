use std::collections::HashMap;
use std::fmt::Write as _;

use crate::board::{AnnotatedGame, PatternKey, PATTERN_SIZES};
use crate::error::{Error, Result};

/// Tally of pattern key occurrences.
#[derive(Debug, Clone, Default)]
pub struct PatternCounter {
    counts: HashMap<PatternKey, u64>,
    games: usize,
}

impl PatternCounter {
    pub fn new() -> PatternCounter {
        PatternCounter::default()
    }

    pub fn add(&mut self, key: PatternKey) {
        *self.counts.entry(key).or_insert(0) += 1;
    }

    /// One occurrence per move per requested pattern size, both players.
    pub fn add_game(&mut self, game: &AnnotatedGame, sizes: &[u8]) {
        self.games += 1;
        for mv in &game.moves {
            for &d in sizes {
                if let Some(key) = mv.pattern_key(d) {
                    self.add(key);
                }
            }
        }
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, key: &PatternKey) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn into_vocabulary(self, n: usize) -> Result<PatternVocabulary> {
        if n == 0 {
            return Err(Error::domain("vocabulary size must be at least 1"));
        }
        let mut entries: Vec<(PatternKey, u64)> = self.counts.into_iter().collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let shortfall = n.saturating_sub(entries.len());
        entries.truncate(n);
        Ok(PatternVocabulary::from_entries(entries, shortfall))
    }
}

/// The N most frequent pattern keys of a corpus, most frequent first.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternVocabulary {
    entries: Vec<(PatternKey, u64)>,
    index: HashMap<PatternKey, usize>,
    /// How many entries short of the requested size the corpus fell.
    pub shortfall: usize,
}

impl PatternVocabulary {
    pub fn from_entries(entries: Vec<(PatternKey, u64)>, shortfall: usize) -> PatternVocabulary {
        let index = entries.iter().enumerate().map(|(i, (k, _))| (*k, i)).collect();
        PatternVocabulary { entries, index, shortfall }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(PatternKey, u64)] {
        &self.entries
    }

    pub fn keys(&self) -> impl Iterator<Item = &PatternKey> {
        self.entries.iter().map(|(k, _)| k)
    }

    pub fn position(&self, key: &PatternKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Sizes present in the vocabulary.
    pub fn sizes(&self) -> Vec<u8> {
        PATTERN_SIZES
            .into_iter()
            .filter(|d| self.entries.iter().any(|(k, _)| k.size == *d))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("goeval-vocab v1 {} {}\n", self.entries.len(), self.shortfall);
        for (k, c) in &self.entries {
            let _ = writeln!(s, "{}\t{:x}\t{}\t{}", k.size, k.code, k.flags(), c);
        }
        s
    }

    pub fn parse(text: &str) -> Result<PatternVocabulary> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::format(1, "empty vocabulary file"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 4 || h[0] != "goeval-vocab" || h[1] != "v1" {
            return Err(Error::format(1, "not a goeval-vocab v1 file"));
        }
        let n: usize = h[2].parse().map_err(|_| Error::format(1, "bad entry count"))?;
        let shortfall: usize = h[3].parse().map_err(|_| Error::format(1, "bad shortfall"))?;
        let mut entries = Vec::with_capacity(n);
        for (i, line) in lines.enumerate() {
            let bad = |m: &str| Error::format(i + 2, m);
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 4 {
                return Err(bad("expected size, code, flags, count"));
            }
            let size: u8 = f[0].parse().map_err(|_| bad("bad size"))?;
            if !PATTERN_SIZES.contains(&size) {
                return Err(bad("pattern size out of range"));
            }
            let code = u64::from_str_radix(f[1], 16).map_err(|_| bad("bad code"))?;
            let flags: u8 = f[2].parse().map_err(|_| bad("bad flags"))?;
            let count: u64 = f[3].parse().map_err(|_| bad("bad count"))?;
            entries.push((PatternKey::from_parts(size, code, flags), count));
        }
        if entries.len() != n {
            return Err(Error::format(1, format!("header says {n} entries, found {}", entries.len())));
        }
        Ok(PatternVocabulary::from_entries(entries, shortfall))
    }
}

/// Counts patterns over the whole corpus and keeps the `n` most frequent.
pub fn build_vocabulary<'a, I>(corpus: I, n: usize, sizes: &[u8]) -> Result<PatternVocabulary>
where
    I: IntoIterator<Item = &'a AnnotatedGame>,
{
    let mut counter = PatternCounter::new();
    for game in corpus {
        counter.add_game(game, sizes);
    }
    if counter.games == 0 {
        return Err(Error::domain("cannot build a vocabulary from an empty corpus"));
    }
    let vocab = counter.into_vocabulary(n)?;
    if vocab.shortfall > 0 {
        log::warn!("only {} distinct patterns, {} short of the requested {n}", vocab.len(), vocab.shortfall);
    }
    Ok(vocab)
}
