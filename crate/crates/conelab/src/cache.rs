//! Content-addressed store for conversion results and DD checkpoints.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use conelab_core::polyhedra::DdCheckpoint;
use conelab_core::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::format::ConeFile;

pub const CACHE_ENV: &str = "CONELAB_CACHE";
pub const DEFAULT_DIR: &str = ".conelab-cache";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

/// Hex SHA-256 of the parts, each length-prefixed so boundaries matter.
pub fn content_key<S: AsRef<[u8]>>(parts: &[S]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        let p = p.as_ref();
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

#[derive(Serialize, Deserialize)]
struct CheckpointFile {
    key: String,
    dim: usize,
    row_count: usize,
    order: Vec<usize>,
    processed: usize,
    rays: Vec<Vec<String>>,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    /// `$CONELAB_CACHE`, else `.conelab-cache/` in the working directory.
    pub fn from_env() -> Cache {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Cache::new(d),
            _ => Cache::new(DEFAULT_DIR),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn entry(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    fn checkpoint_entry(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.checkpoint.json"))
    }

    pub fn get(&self, key: &str) -> Option<ConeFile> {
        let text = std::fs::read_to_string(self.entry(key)).ok()?;
        ConeFile::from_json(&text).ok()
    }

    pub fn put(&self, key: &str, file: &ConeFile) -> anyhow::Result<()> {
        write_atomic(&self.dir, &self.entry(key), &file.to_json())
    }

    pub fn load_checkpoint(&self, key: &str) -> anyhow::Result<Option<DdCheckpoint>> {
        let path = self.checkpoint_entry(key);
        if !path.exists() {
            return Ok(None);
        }
        let text = std::fs::read_to_string(&path)
            .with_context(|| format!("reading {}", path.display()))?;
        let cp: CheckpointFile =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if cp.key != key {
            bail!(
                "checkpoint {} belongs to another computation",
                path.display()
            );
        }
        let rays = cp
            .rays
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| s.parse::<BigInt>())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .with_context(|| format!("bad ray in {}", path.display()))?;
        Ok(Some(DdCheckpoint {
            dim: cp.dim,
            row_count: cp.row_count,
            order: cp.order,
            processed: cp.processed,
            rays,
        }))
    }

    pub fn save_checkpoint(&self, key: &str, cp: &DdCheckpoint) -> anyhow::Result<()> {
        let file = CheckpointFile {
            key: key.to_string(),
            dim: cp.dim,
            row_count: cp.row_count,
            order: cp.order.clone(),
            processed: cp.processed,
            rays: cp
                .rays
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
        };
        write_atomic(
            &self.dir,
            &self.checkpoint_entry(key),
            &serde_json::to_string(&file)?,
        )
    }

    pub fn clear_checkpoint(&self, key: &str) {
        let _ = std::fs::remove_file(self.checkpoint_entry(key));
    }
}

fn write_atomic(dir: &Path, path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    std::fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_separate_boundaries() {
        assert_ne!(content_key(&["ab", "c"]), content_key(&["a", "bc"]));
        assert_eq!(content_key(&["x"]).len(), 64);
    }

    #[test]
    fn checkpoint_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let cp = DdCheckpoint {
            dim: 2,
            row_count: 3,
            order: vec![2, 0, 1],
            processed: 2,
            rays: vec![vec![BigInt::from(1), BigInt::from(-7)]],
        };
        assert!(cache.load_checkpoint("k").unwrap().is_none());
        cache.save_checkpoint("k", &cp).unwrap();
        assert_eq!(cache.load_checkpoint("k").unwrap(), Some(cp));
        cache.clear_checkpoint("k");
        assert!(cache.load_checkpoint("k").unwrap().is_none());
    }
}
