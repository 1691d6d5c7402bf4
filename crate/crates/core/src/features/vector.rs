use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::features::config::FeatureConfig;
use crate::features::families::{
    border_distance_feature, captured_stones_feature, pattern_feature, sente_gote_feature,
    winloss_feature, AnnotatedSet,
};
use crate::features::vocab::PatternVocabulary;

pub const PATTERNS: &str = "patterns";
pub const SENTE_GOTE: &str = "sente_gote";
pub const BORDER: &str = "border";
pub const CAPTURES: &str = "captures";
pub const WINLOSS: &str = "winloss";
/// First four win/loss components (rates).
pub const WINLOSS_STAT: &str = "winloss_stat";
/// Last two win/loss components (mean margins).
pub const WINLOSS_POINTS: &str = "winloss_points";

pub const SEGMENT_NAMES: [&str; 5] = [PATTERNS, SENTE_GOTE, BORDER, CAPTURES, WINLOSS];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub name: String,
    pub offset: usize,
    pub len: usize,
}

impl Segment {
    pub fn range(&self) -> Range<usize> {
        self.offset..self.offset + self.len
    }
}

/// Named, contiguous segments of an evaluation vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentLayout {
    segments: Vec<Segment>,
}

impl SegmentLayout {
    pub fn from_lengths(parts: &[(&str, usize)]) -> SegmentLayout {
        let mut offset = 0;
        let segments = parts
            .iter()
            .map(|&(name, len)| {
                let s = Segment { name: name.to_string(), offset, len };
                offset += len;
                s
            })
            .collect();
        SegmentLayout { segments }
    }

    pub fn for_config(config: &FeatureConfig) -> SegmentLayout {
        SegmentLayout::from_lengths(&[
            (PATTERNS, config.vocab_size),
            (SENTE_GOTE, 2),
            (BORDER, config.border_len()),
            (CAPTURES, config.captures_len()),
            (WINLOSS, 6),
        ])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn total_len(&self) -> usize {
        self.segments.iter().map(|s| s.len).sum()
    }

    pub fn get(&self, name: &str) -> Option<&Segment> {
        self.segments.iter().find(|s| s.name == name)
    }

    /// Column range of a segment; also understands the win/loss halves.
    pub fn resolve(&self, name: &str) -> Option<Range<usize>> {
        match name {
            WINLOSS_STAT | WINLOSS_POINTS => {
                let w = self.get(WINLOSS).filter(|w| w.len == 6)?;
                Some(if name == WINLOSS_STAT {
                    w.offset..w.offset + 4
                } else {
                    w.offset + 4..w.offset + 6
                })
            }
            _ => self.get(name).map(Segment::range),
        }
    }

    /// `name:offset:len` triples separated by spaces.
    pub fn parse(text: &str) -> Result<SegmentLayout> {
        let mut segments = Vec::new();
        let mut expect = 0;
        for part in text.split_whitespace() {
            let f: Vec<&str> = part.split(':').collect();
            let bad = || Error::domain(format!("bad segment spec {part:?}"));
            if f.len() != 3 {
                return Err(bad());
            }
            let offset: usize = f[1].parse().map_err(|_| bad())?;
            let len: usize = f[2].parse().map_err(|_| bad())?;
            if offset != expect {
                return Err(Error::domain(format!("segment {} not contiguous", f[0])));
            }
            expect += len;
            segments.push(Segment { name: f[0].to_string(), offset, len });
        }
        Ok(SegmentLayout { segments })
    }
}

impl fmt::Display for SegmentLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}:{}:{}", s.name, s.offset, s.len)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationVector {
    pub values: Vec<f64>,
    pub layout: SegmentLayout,
}

impl EvaluationVector {
    pub fn segment(&self, name: &str) -> Option<&[f64]> {
        self.layout.resolve(name).map(|r| &self.values[r])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Concatenates the five feature families in fixed order. The pattern
/// segment is always `config.vocab_size` long; slots beyond a short
/// vocabulary stay zero.
pub fn evaluate_set(
    set: &AnnotatedSet,
    vocab: &PatternVocabulary,
    config: &FeatureConfig,
) -> Result<EvaluationVector> {
    if set.is_empty() {
        return Err(Error::domain(format!("game set for {} is empty", set.player_id)));
    }
    if vocab.len() > config.vocab_size {
        return Err(Error::domain(format!(
            "vocabulary has {} entries, configuration expects at most {}",
            vocab.len(),
            config.vocab_size
        )));
    }
    let layout = SegmentLayout::for_config(config);
    let mut values = Vec::with_capacity(layout.total_len());
    let mut patterns =
        pattern_feature(set, vocab, &config.pattern_sizes, config.patterns_both_players);
    patterns.resize(config.vocab_size, 0.0);
    values.extend(patterns);
    values.extend(sente_gote_feature(set, config.omega));
    values.extend(border_distance_feature(set, config));
    values.extend(captured_stones_feature(set, config));
    values.extend(winloss_feature(set));
    debug_assert_eq!(values.len(), layout.total_len());
    Ok(EvaluationVector { values, layout })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_lengths() {
        assert_eq!(SegmentLayout::for_config(&FeatureConfig::strength()).total_len(), 1033);
        assert_eq!(SegmentLayout::for_config(&FeatureConfig::style()).total_len(), 633);
    }

    #[test]
    fn resolve_and_parse() {
        let l = SegmentLayout::for_config(&FeatureConfig::style());
        assert_eq!(l.resolve(SENTE_GOTE), Some(600..602));
        assert_eq!(l.resolve(WINLOSS_STAT), Some(627..631));
        assert_eq!(l.resolve(WINLOSS_POINTS), Some(631..633));
        assert_eq!(l.resolve("nope"), None);
        assert_eq!(SegmentLayout::parse(&l.to_string()).unwrap(), l);
        assert!(SegmentLayout::parse("a:0:2 b:3:1").is_err());
    }
}
