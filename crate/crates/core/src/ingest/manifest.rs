//! Corpus manifests: one game per line as `path [player-id] [rank]`,
//! tab- or space-separated. `-` leaves a field empty, `#` starts a comment.
//! Relative paths resolve against the manifest's directory.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::ingest::rank::Rank;

#[derive(Debug, Clone, PartialEq)]
pub struct ManifestEntry {
    pub path: PathBuf,
    pub player: Option<String>,
    pub rank: Option<Rank>,
}

pub fn parse_manifest(text: &str, base_dir: &Path) -> Result<Vec<ManifestEntry>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() > 3 {
            return Err(Error::format(i + 1, "expected at most 3 fields: path [player] [rank]"));
        }
        let opt = |k: usize| fields.get(k).copied().filter(|f| *f != "-");
        let path = Path::new(fields[0]);
        let path = if path.is_absolute() { path.to_path_buf() } else { base_dir.join(path) };
        let rank = match opt(2) {
            Some(r) => Some(Rank::parse(r).map_err(|e| Error::format(i + 1, e.to_string()))?),
            None => None,
        };
        out.push(ManifestEntry { path, player: opt(1).map(str::to_string), rank });
    }
    Ok(out)
}

pub fn write_manifest(entries: &[ManifestEntry], base_dir: &Path) -> String {
    let mut s = String::new();
    for e in entries {
        let path = e.path.strip_prefix(base_dir).unwrap_or(&e.path);
        s.push_str(&path.to_string_lossy());
        s.push('\t');
        s.push_str(e.player.as_deref().unwrap_or("-"));
        s.push('\t');
        match e.rank {
            Some(r) => s.push_str(&r.to_string()),
            None => s.push('-'),
        }
        s.push('\n');
    }
    s
}
