//! Versioned text format for trained models.
//!
//! ```text
//! goeval-model v1
//! segments patterns:0:1000 ...
//! targets 1
//! target strength
//! inputs 1033
//! hidden 20
//! members 20
//! seed 42
//! target_range -5 20
//! input_min ...
//! input_max ...
//! member 0
//! w1 ...            (row-major, 20 x (active + 1))
//! w2 ...
//! ```
//!
//! Floats use Rust's shortest round-trip formatting, so reloading is exact.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::features::vector::SegmentLayout;
use crate::predictor::bagged::BaggedModel;
use crate::predictor::network::{Network, HIDDEN_UNITS};
use crate::predictor::scaler::ScalerParams;

/// One bagged model per target, plus the feature layout they were trained on.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelBundle {
    pub layout: SegmentLayout,
    pub targets: Vec<(String, BaggedModel)>,
}

fn join(v: &[f64]) -> String {
    let mut s = String::new();
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x}");
    }
    s
}

impl ModelBundle {
    pub fn to_text(&self) -> String {
        let mut s = String::from("goeval-model v1\n");
        let _ = writeln!(s, "segments {}", self.layout);
        let _ = writeln!(s, "targets {}", self.targets.len());
        for (name, m) in &self.targets {
            let _ = writeln!(s, "target {name}");
            let _ = writeln!(s, "inputs {}", m.dim());
            let _ = writeln!(s, "hidden {HIDDEN_UNITS}");
            let _ = writeln!(s, "members {}", m.members.len());
            let _ = writeln!(s, "seed {}", m.seed);
            let _ = writeln!(s, "target_range {} {}", m.scaler.target_min, m.scaler.target_max);
            let _ = writeln!(s, "input_min {}", join(&m.scaler.input_min));
            let _ = writeln!(s, "input_max {}", join(&m.scaler.input_max));
            for (k, net) in m.members.iter().enumerate() {
                let _ = writeln!(s, "member {k}");
                let _ = writeln!(s, "w1 {}", join(&net.w1));
                let _ = writeln!(s, "w2 {}", join(&net.w2));
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<ModelBundle> {
        let mut r = Reader { lines: text.lines().enumerate() };
        let (ln, magic) = r.line()?;
        if magic.trim() != "goeval-model v1" {
            return Err(Error::format(ln, "not a goeval-model v1 file"));
        }
        let (ln, seg) = r.field("segments")?;
        let layout = SegmentLayout::parse(seg).map_err(|e| Error::format(ln, e.to_string()))?;
        let count: usize = r.number("targets")?;
        let mut targets = Vec::with_capacity(count);
        for _ in 0..count {
            let (_, name) = r.field("target")?;
            let name = name.to_string();
            let inputs: usize = r.number("inputs")?;
            let (ln, hidden) = r.field("hidden")?;
            if hidden.trim() != HIDDEN_UNITS.to_string() {
                return Err(Error::format(ln, format!("unsupported hidden width {hidden}")));
            }
            let members: usize = r.number("members")?;
            let seed: u64 = r.number("seed")?;
            let (ln, range) = r.floats("target_range")?;
            if range.len() != 2 {
                return Err(Error::format(ln, "target_range needs two values"));
            }
            let (ln, input_min) = r.floats("input_min")?;
            let (_, input_max) = r.floats("input_max")?;
            if input_min.len() != inputs || input_max.len() != inputs {
                return Err(Error::format(ln, "scaler arrays do not match inputs"));
            }
            let scaler =
                ScalerParams { input_min, input_max, target_min: range[0], target_max: range[1] };
            let active = scaler.active_dims();
            let mut nets = Vec::with_capacity(members);
            for _ in 0..members {
                r.field("member")?;
                let (ln, w1) = r.floats("w1")?;
                let (_, w2) = r.floats("w2")?;
                nets.push(
                    Network::from_weights(active.len(), w1, w2)
                        .map_err(|e| Error::format(ln, e.to_string()))?,
                );
            }
            targets.push((name, BaggedModel { scaler, active, members: nets, seed }));
        }
        Ok(ModelBundle { layout, targets })
    }
}

struct Reader<'a, I: Iterator<Item = (usize, &'a str)>> {
    lines: I,
}

impl<'a, I: Iterator<Item = (usize, &'a str)>> Reader<'a, I> {
    fn line(&mut self) -> Result<(usize, &'a str)> {
        self.lines
            .next()
            .map(|(i, l)| (i + 1, l))
            .ok_or_else(|| Error::format(0, "unexpected end of model file"))
    }

    fn field(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (ln, l) = self.line()?;
        match l.split_once(' ') {
            Some((k, v)) if k == key => Ok((ln, v)),
            None if l == key => Ok((ln, "")),
            _ => Err(Error::format(ln, format!("expected {key}"))),
        }
    }

    fn number<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let (ln, v) = self.field(key)?;
        v.trim().parse().map_err(|_| Error::format(ln, format!("bad {key} value")))
    }

    fn floats(&mut self, key: &str) -> Result<(usize, Vec<f64>)> {
        let (ln, v) = self.field(key)?;
        let vals = v
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| Error::format(ln, format!("bad number {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok((ln, vals))
    }
}
