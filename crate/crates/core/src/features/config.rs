use std::fmt;
use std::str::FromStr;

use crate::board::PATTERN_SIZES;
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]`; `hi == None` is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub lo: u32,
    pub hi: Option<u32>,
}

impl Interval {
    pub const fn new(lo: u32, hi: Option<u32>) -> Interval {
        Interval { lo, hi }
    }

    pub fn contains(&self, x: u32) -> bool {
        x >= self.lo && self.hi.is_none_or(|h| x <= h)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) if h == self.lo => write!(f, "{}", self.lo),
            Some(h) => write!(f, "{}-{}", self.lo, h),
            None => write!(f, "{}-", self.lo),
        }
    }
}

/// Ordered, disjoint intervals covering `[1, inf)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intervals(Vec<Interval>);

impl Intervals {
    pub fn new(list: Vec<Interval>) -> Result<Intervals> {
        let bad = |m: &str| Err(Error::domain(format!("interval list: {m}")));
        let Some(first) = list.first() else { return bad("empty") };
        if first.lo != 1 {
            return bad("must start at 1");
        }
        for w in list.windows(2) {
            match w[0].hi {
                Some(h) if h >= w[0].lo && w[1].lo == h + 1 => {}
                _ => return bad("intervals must be contiguous and ordered"),
            }
        }
        if list.last().and_then(|l| l.hi).is_some() {
            return bad("last interval must be unbounded");
        }
        Ok(Intervals(list))
    }

    /// Parses `"1-2,3,4,5-"`.
    pub fn parse(text: &str) -> Result<Intervals> {
        let num = |s: &str| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::domain(format!("bad interval bound {s:?}")))
        };
        let list = text
            .split(',')
            .map(|part| match part.split_once('-') {
                None => {
                    let v = num(part)?;
                    Ok(Interval::new(v, Some(v)))
                }
                Some((lo, hi)) if hi.trim().is_empty() => Ok(Interval::new(num(lo)?, None)),
                Some((lo, hi)) => Ok(Interval::new(num(lo)?, Some(num(hi)?))),
            })
            .collect::<Result<Vec<_>>>()?;
        Intervals::new(list)
    }

    pub fn bin(&self, x: u32) -> Option<usize> {
        self.0.iter().position(|i| i.contains(x))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Interval] {
        &self.0
    }
}

impl fmt::Display for Intervals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Strength,
    Style,
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Preset> {
        match s.trim().to_ascii_lowercase().as_str() {
            "strength" => Ok(Preset::Strength),
            "style" => Ok(Preset::Style),
            other => Err(Error::domain(format!("unknown preset {other:?}"))),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Strength => "strength",
            Preset::Style => "style",
        })
    }
}

fn iv(lo: u32, hi: Option<u32>) -> Interval {
    Interval::new(lo, hi)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureConfig {
    pub preset: Preset,
    /// Pattern vocabulary size N.
    pub vocab_size: usize,
    /// Locality threshold for sente/gote sequences.
    pub omega: u32,
    pub by_dist: Intervals,
    pub by_moves_border: Intervals,
    pub by_moves_capture: Intervals,
    pub pattern_sizes: Vec<u8>,
    /// Count patterns of both players' moves (otherwise only the player of interest).
    pub patterns_both_players: bool,
    /// Count border distances of both players' moves.
    pub border_both_players: bool,
}

impl FeatureConfig {
    pub fn strength() -> FeatureConfig {
        FeatureConfig {
            preset: Preset::Strength,
            vocab_size: 1000,
            omega: 10,
            by_dist: Intervals(vec![iv(1, Some(2)), iv(3, Some(3)), iv(4, Some(4)), iv(5, None)]),
            by_moves_border: Intervals(vec![
                iv(1, Some(10)),
                iv(11, Some(64)),
                iv(65, Some(200)),
                iv(201, None),
            ]),
            by_moves_capture: Intervals(vec![iv(1, Some(60)), iv(61, Some(240)), iv(241, None)]),
            pattern_sizes: PATTERN_SIZES.to_vec(),
            patterns_both_players: true,
            border_both_players: false,
        }
    }

    pub fn style() -> FeatureConfig {
        FeatureConfig {
            preset: Preset::Style,
            vocab_size: 600,
            omega: 5,
            by_moves_border: Intervals(vec![
                iv(1, Some(16)),
                iv(17, Some(64)),
                iv(65, Some(160)),
                iv(161, None),
            ]),
            ..FeatureConfig::strength()
        }
    }

    pub fn for_preset(preset: Preset) -> FeatureConfig {
        match preset {
            Preset::Strength => FeatureConfig::strength(),
            Preset::Style => FeatureConfig::style(),
        }
    }

    pub fn border_len(&self) -> usize {
        self.by_moves_border.len() * self.by_dist.len()
    }

    pub fn captures_len(&self) -> usize {
        self.by_moves_capture.len() * 3
    }

    /// Overrides fields from `key = value` lines. A `preset` key is accepted
    /// but ignored here; callers resolve the preset before applying a file.
    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::format(i + 1, "expected key = value"))?;
            self.set(key.trim(), value.trim()).map_err(|e| Error::format(i + 1, e.to_string()))?;
        }
        self.validate()
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let int = |v: &str| v.parse::<u64>().map_err(|_| Error::domain(format!("bad integer {v:?}")));
        let players = |v: &str| match v {
            "both" => Ok(true),
            "interest" => Ok(false),
            _ => Err(Error::domain(format!("expected both|interest, got {v:?}"))),
        };
        match key {
            "preset" => {
                value.parse::<Preset>()?;
            }
            "vocab_size" => self.vocab_size = int(value)? as usize,
            "omega" => self.omega = int(value)? as u32,
            "by_dist" => self.by_dist = Intervals::parse(value)?,
            "by_moves_border" => self.by_moves_border = Intervals::parse(value)?,
            "by_moves_capture" => self.by_moves_capture = Intervals::parse(value)?,
            "pattern_sizes" => {
                self.pattern_sizes = value
                    .split(',')
                    .map(|s| int(s.trim()).map(|v| v as u8))
                    .collect::<Result<_>>()?
            }
            "pattern_players" => self.patterns_both_players = players(value)?,
            "border_players" => self.border_both_players = players(value)?,
            _ => return Err(Error::domain(format!("unknown config key {key:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.vocab_size == 0 {
            return Err(Error::domain("vocab_size must be at least 1"));
        }
        if self.omega == 0 {
            return Err(Error::domain("omega must be at least 1"));
        }
        if self.pattern_sizes.is_empty()
            || self.pattern_sizes.iter().any(|s| !PATTERN_SIZES.contains(s))
        {
            return Err(Error::domain("pattern sizes must be a nonempty subset of 2..=6"));
        }
        Ok(())
    }

    pub fn to_kv(&self) -> String {
        let players = |b: bool| if b { "both" } else { "interest" };
        let sizes: Vec<String> = self.pattern_sizes.iter().map(u8::to_string).collect();
        format!(
            "preset = {}\nvocab_size = {}\nomega = {}\nby_dist = {}\nby_moves_border = {}\n\
             by_moves_capture = {}\npattern_sizes = {}\npattern_players = {}\nborder_players = {}\n",
            self.preset,
            self.vocab_size,
            self.omega,
            self.by_dist,
            self.by_moves_border,
            self.by_moves_capture,
            sizes.join(","),
            players(self.patterns_both_players),
            players(self.border_both_players),
        )
    }
}
