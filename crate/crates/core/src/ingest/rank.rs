use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RankClass {
    Kyu,
    Dan,
}

/// Amateur rank: kyu 1..=30, dan 1..=9.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rank {
    pub grade: u8,
    pub class: RankClass,
}

impl Rank {
    pub fn kyu(grade: u8) -> Rank {
        Rank { grade, class: RankClass::Kyu }
    }

    pub fn dan(grade: u8) -> Rank {
        Rank { grade, class: RankClass::Dan }
    }

    pub fn is_valid(&self) -> bool {
        match self.class {
            RankClass::Kyu => (1..=30).contains(&self.grade),
            RankClass::Dan => (1..=9).contains(&self.grade),
        }
    }

    /// Accepts "6d", "20k", "1-dan", "3 kyu"; a trailing `?` or `*`
    /// (uncertain-rank markers) is ignored.
    pub fn parse(text: &str) -> Result<Rank> {
        let t = text.trim().trim_end_matches(['?', '*']).to_ascii_lowercase();
        let digits_end = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
        if digits_end == 0 {
            return Err(Error::domain(format!("unparseable rank {text:?}")));
        }
        let grade: u8 = t[..digits_end]
            .parse()
            .map_err(|_| Error::domain(format!("unparseable rank {text:?}")))?;
        let class = match t[digits_end..].trim_start_matches([' ', '-']) {
            "k" | "kyu" => RankClass::Kyu,
            "d" | "dan" => RankClass::Dan,
            _ => return Err(Error::domain(format!("unparseable rank {text:?}"))),
        };
        let rank = Rank { grade, class };
        if !rank.is_valid() {
            return Err(Error::domain(format!("rank out of range {text:?}")));
        }
        Ok(rank)
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.class {
            RankClass::Kyu => 'k',
            RankClass::Dan => 'd',
        };
        write!(f, "{}{}", self.grade, c)
    }
}

/// Regression target for a rank: kyu g maps to g, dan g to 1 - g, so the
/// value decreases with strength (20k = 20, 1k = 1, 1d = 0, 6d = -5).
pub fn rank_to_target(rank: Rank) -> Result<f64> {
    if !rank.is_valid() {
        return Err(Error::domain(format!("rank out of range: {rank}")));
    }
    Ok(match rank.class {
        RankClass::Kyu => rank.grade as f64,
        RankClass::Dan => 1.0 - rank.grade as f64,
    })
}
