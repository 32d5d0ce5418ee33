//! Persistent Poincaré-polynomial cache: one JSON document on disk.
//!
//! A missing file is an empty cache. An unreadable or corrupt file is
//! reported on stderr and ignored; it is overwritten on the next save.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use rankfilt_core::cartan::{Engine, EngineConfig, Evaluator};
use rankfilt_core::{OrbitDescriptor, PoincareCache, PoincarePoly};
use serde::{Deserialize, Serialize};

const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub coefficients: BTreeMap<u32, u64>,
    /// Highest degree computed, when the polynomial is truncated.
    pub truncation: Option<u32>,
    pub engine_version: String,
    /// Seconds since the Unix epoch at which the entry was first written.
    pub created: u64,
}

impl CacheEntry {
    fn from_poly(p: &PoincarePoly, created: u64) -> Self {
        CacheEntry {
            coefficients: p.coefficients().clone(),
            truncation: p.truncation(),
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            created,
        }
    }

    fn to_poly(&self) -> PoincarePoly {
        let p = PoincarePoly::from_pairs(self.coefficients.iter().map(|(&d, &c)| (d, c)));
        match self.truncation {
            Some(t) => p.truncated(t),
            None => p,
        }
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: BTreeMap<String, CacheEntry>,
}

/// The on-disk cache and the in-memory memo it seeds.
pub struct FileCache {
    path: PathBuf,
    loaded: BTreeMap<String, CacheEntry>,
    memo: Arc<PoincareCache>,
}

impl FileCache {
    pub fn open(path: &Path) -> Self {
        let loaded = match std::fs::read_to_string(path) {
            Ok(text) => match serde_json::from_str::<CacheFile>(&text) {
                Ok(file) if file.version == FORMAT_VERSION => file.entries,
                Ok(file) => {
                    eprintln!(
                        "warning: cache {} has format version {}, expected {FORMAT_VERSION}; ignoring it",
                        path.display(),
                        file.version
                    );
                    BTreeMap::new()
                }
                Err(e) => {
                    eprintln!("warning: cache {} is corrupt ({e}); ignoring it", path.display());
                    BTreeMap::new()
                }
            },
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => {
                eprintln!("warning: cannot read cache {} ({e}); ignoring it", path.display());
                BTreeMap::new()
            }
        };
        let memo = Arc::new(PoincareCache::new());
        for (key, entry) in &loaded {
            memo.insert(key.clone(), entry.to_poly());
        }
        FileCache {
            path: path.to_path_buf(),
            loaded,
            memo,
        }
    }

    pub fn memo(&self) -> Arc<PoincareCache> {
        Arc::clone(&self.memo)
    }

    /// Writes every memo entry back, keeping the creation time of entries
    /// that were already on disk.
    pub fn save(&self) -> Result<()> {
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let entries = self
            .memo
            .snapshot()
            .into_iter()
            .map(|(key, poly)| {
                let created = self.loaded.get(&key).map_or(now, |e| e.created);
                (key, CacheEntry::from_poly(&poly, created))
            })
            .collect();
        let file = CacheFile {
            version: FORMAT_VERSION,
            entries,
        };
        let text = serde_json::to_string_pretty(&file)?;
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        let tmp = self.path.with_extension("tmp");
        std::fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
        std::fs::rename(&tmp, &self.path).with_context(|| format!("replacing {}", self.path.display()))?;
        Ok(())
    }

    /// Recomputes every entry loaded from disk and lists those that differ.
    pub fn verify(&self, config: &EngineConfig) -> Result<Vec<String>> {
        let mut mismatches = Vec::new();
        for (key, entry) in &self.loaded {
            let (descriptor, engine, cutoff) = parse_key(key).with_context(|| format!("malformed cache key {key:?}"))?;
            let fresh = Evaluator::new(engine, *config).poincare(&descriptor, cutoff)?;
            let cached = entry.to_poly();
            if fresh != cached {
                mismatches.push(format!("{key}: cached {cached}, recomputed {fresh}"));
            }
        }
        Ok(mismatches)
    }

    pub fn loaded_len(&self) -> usize {
        self.loaded.len()
    }
}

/// Inverse of [`PoincareCache::key`].
fn parse_key(key: &str) -> Result<(OrbitDescriptor, Engine, Option<u32>)> {
    let mut parts = key.rsplitn(3, '|');
    let cutoff = parts.next().context("missing cutoff")?;
    let engine = parts.next().context("missing engine")?;
    let descriptor = parts.next().context("missing descriptor")?;
    let cutoff = match cutoff {
        "exact" => None,
        c => Some(c.parse()?),
    };
    Ok((descriptor.parse()?, engine.parse()?, cutoff))
}
