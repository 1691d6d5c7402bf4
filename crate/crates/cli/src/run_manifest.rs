use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Result;
use serde::{Deserialize, Serialize};

use crate::io::{with_suffix, write_atomic};

/// What a run read and wrote, written next to its main output as
/// `<out>.run.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub args: Vec<String>,
    pub version: String,
    pub preset: Option<String>,
    pub config_path: Option<PathBuf>,
    /// Effective feature configuration after all overrides.
    pub config: Option<String>,
    pub seed: Option<u64>,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub partial_corpus: bool,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(command: &str, args: &[String]) -> RunManifest {
        RunManifest {
            command: command.to_string(),
            args: args.to_vec(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            preset: None,
            config_path: None,
            config: None,
            seed: None,
            inputs: Vec::new(),
            outputs: Vec::new(),
            partial_corpus: false,
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        }
    }

    pub fn path_for(out: &Path) -> PathBuf {
        with_suffix(out, ".run.json")
    }

    pub fn write(&self, out: &Path) -> Result<PathBuf> {
        let path = RunManifest::path_for(out);
        let mut json = serde_json::to_string_pretty(self)?;
        json.push('\n');
        write_atomic(&path, json.as_bytes())?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let mut m = RunManifest::new("extract", &["goeval".into(), "extract".into()]);
        m.seed = Some(3);
        m.outputs.push(dir.path().join("m.tsv"));
        let p = m.write(&dir.path().join("m.tsv")).unwrap();
        assert!(p.ends_with("m.tsv.run.json"));
        let back: RunManifest = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
