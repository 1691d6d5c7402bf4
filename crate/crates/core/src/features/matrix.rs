//! Evaluation matrix persistence: tab-separated text, one row per game set.
//!
//! ```text
//! #goeval-matrix v1
//! #segments patterns:0:1000 sente_gote:1000:2 ...
//! #targets strength
//! player_id  strength  patterns.0  patterns.1 ...
//! alice      3         0.25        0 ...
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::features::vector::SegmentLayout;

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRow {
    pub player_id: String,
    pub targets: Vec<f64>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationMatrix {
    pub layout: SegmentLayout,
    pub target_names: Vec<String>,
    pub rows: Vec<MatrixRow>,
}

impl EvaluationMatrix {
    pub fn new(layout: SegmentLayout, target_names: Vec<String>) -> EvaluationMatrix {
        EvaluationMatrix { layout, target_names, rows: Vec::new() }
    }

    pub fn push(&mut self, row: MatrixRow) -> Result<()> {
        if row.values.len() != self.layout.total_len() || row.targets.len() != self.target_names.len() {
            return Err(Error::domain(format!("row for {} has the wrong shape", row.player_id)));
        }
        if row.player_id.contains(['\t', '\n']) {
            return Err(Error::domain("player id may not contain tabs or newlines"));
        }
        self.rows.push(row);
        Ok(())
    }

    /// Column `j` of the feature block.
    pub fn target_column(&self, t: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r.targets[t]).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str("#goeval-matrix v1\n");
        let _ = writeln!(s, "#segments {}", self.layout);
        let _ = writeln!(s, "#targets {}", self.target_names.join(" "));
        s.push_str("player_id");
        for t in &self.target_names {
            let _ = write!(s, "\t{t}");
        }
        for seg in self.layout.segments() {
            for i in 0..seg.len {
                let _ = write!(s, "\t{}.{}", seg.name, i);
            }
        }
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.player_id);
            for v in row.targets.iter().chain(&row.values) {
                let _ = write!(s, "\t{v}");
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<EvaluationMatrix> {
        let mut lines = text.lines().enumerate();
        let mut next = |what: &str| {
            lines.next().ok_or_else(|| Error::format(0, format!("missing {what}")))
        };
        let (_, magic) = next("header")?;
        if magic.trim() != "#goeval-matrix v1" {
            return Err(Error::format(1, "not a goeval-matrix v1 file"));
        }
        let (i, seg) = next("segments line")?;
        let layout = seg
            .strip_prefix("#segments ")
            .ok_or_else(|| Error::format(i + 1, "expected #segments"))
            .and_then(|s| SegmentLayout::parse(s).map_err(|e| Error::format(i + 1, e.to_string())))?;
        let (i, tg) = next("targets line")?;
        let target_names: Vec<String> = tg
            .strip_prefix("#targets")
            .ok_or_else(|| Error::format(i + 1, "expected #targets"))?
            .split_whitespace()
            .map(str::to_string)
            .collect();
        let (i, cols) = next("column header")?;
        let width = 1 + target_names.len() + layout.total_len();
        if cols.split('\t').count() != width {
            return Err(Error::format(i + 1, "column header does not match segments"));
        }
        let mut m = EvaluationMatrix::new(layout, target_names);
        for (i, line) in lines {
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != width {
                return Err(Error::format(i + 1, format!("expected {width} fields, got {}", f.len())));
            }
            let nums = f[1..]
                .iter()
                .map(|v| {
                    v.parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| Error::format(i + 1, format!("bad number {v:?}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            let nt = m.target_names.len();
            m.rows.push(MatrixRow {
                player_id: f[0].to_string(),
                targets: nums[..nt].to_vec(),
                values: nums[nt..].to_vec(),
            });
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> EvaluationMatrix {
        let layout = SegmentLayout::from_lengths(&[("a", 2), ("b", 1)]);
        let mut m = EvaluationMatrix::new(layout, vec!["strength".into()]);
        m.push(MatrixRow { player_id: "p1".into(), targets: vec![-5.0], values: vec![0.1, 1e-17, 3.0] })
            .unwrap();
        m.push(MatrixRow { player_id: "p2".into(), targets: vec![20.0], values: vec![1.0 / 3.0, 0.0, 2.5] })
            .unwrap();
        m
    }

    #[test]
    fn round_trip_is_exact() {
        let m = sample();
        assert_eq!(EvaluationMatrix::parse(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn malformed_row_names_line() {
        let mut text = sample().to_text();
        text.push_str("p3\t1\t2\n");
        match EvaluationMatrix::parse(&text).unwrap_err() {
            Error::Format { line, .. } => assert_eq!(line, 7),
            e => panic!("unexpected {e}"),
        }
        let bad = sample().to_text().replace("\t2.5", "\tnan");
        assert!(EvaluationMatrix::parse(&bad).is_err());
    }

    #[test]
    fn shape_checked_on_push() {
        let mut m = sample();
        assert!(m.push(MatrixRow { player_id: "x".into(), targets: vec![], values: vec![0.0; 3] }).is_err());
    }
}
