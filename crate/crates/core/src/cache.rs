//! Append-only JSON-lines store of search records keyed by kind, parameters and budget.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::search::{validate_record, EnumerationBudget, ExtremalRecord, Kind, Params};

pub const CACHE_ENV: &str = "SATLAB_CACHE";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub kind: Kind,
    pub params: Params,
    pub budget: String,
}

impl CacheKey {
    pub fn new(kind: Kind, params: Params, budget: &EnumerationBudget) -> Self {
        CacheKey { kind, params, budget: budget.fingerprint() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: CacheKey,
    pub record: ExtremalRecord,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
    pub tool_version: String,
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<CacheKey, ExtremalRecord>,
    writer: Mutex<()>,
}

impl Cache {
    /// Path from the environment, else a file in the temp directory.
    pub fn default_path() -> PathBuf {
        std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| std::env::temp_dir().join("satlab-cache.jsonl"))
    }

    /// Loads `path`, skipping unreadable lines and records whose witness fails re-validation.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        match File::open(&path) {
            Ok(f) => {
                for (i, line) in BufReader::new(f).lines().enumerate() {
                    let line = line.map_err(|source| CacheError::Io { path: path.clone(), source })?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match serde_json::from_str::<CacheEntry>(&line) {
                        Ok(e) if e.key.kind == e.record.kind && validate_record(&e.record) => {
                            entries.insert(e.key, e.record);
                        }
                        Ok(_) => log::warn!("{}:{}: record failed re-validation, skipped", path.display(), i + 1),
                        Err(err) => log::warn!("{}:{}: unreadable cache line ({err}), skipped", path.display(), i + 1),
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(source) => return Err(CacheError::Io { path, source }),
        }
        Ok(Cache { path, entries, writer: Mutex::new(()) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &CacheKey) -> Option<&ExtremalRecord> {
        self.entries.get(key)
    }

    /// Appends one line and remembers the record.
    pub fn insert(&mut self, key: CacheKey, record: ExtremalRecord) -> Result<(), CacheError> {
        let entry = CacheEntry {
            key: key.clone(),
            record: record.clone(),
            created_at: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        };
        let line = serde_json::to_string(&entry).expect("entry serializes");
        {
            let _guard = self.writer.lock().unwrap_or_else(|p| p.into_inner());
            let io = |source| CacheError::Io { path: self.path.clone(), source };
            if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(io)?;
            }
            let mut f = OpenOptions::new().create(true).append(true).open(&self.path).map_err(io)?;
            writeln!(f, "{line}").map_err(io)?;
        }
        self.entries.insert(key, record);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::sat_min;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let b = EnumerationBudget::default();
        let rec = sat_min(4, 3, &b).unwrap();
        let key = CacheKey::new(rec.kind, rec.params, &b);
        let mut c = Cache::open(&path).unwrap();
        assert!(c.is_empty());
        c.insert(key.clone(), rec.clone()).unwrap();
        std::fs::OpenOptions::new().append(true).open(&path).unwrap().write_all(b"{not json\n").unwrap();
        let mut bad = rec.clone();
        bad.value = Some(99);
        c.insert(CacheKey::new(rec.kind, Params { n: Some(99), ..rec.params }, &b), bad).unwrap();
        let reopened = Cache::open(&path).unwrap();
        assert_eq!(reopened.len(), 1);
        assert_eq!(reopened.get(&key), Some(&rec));
    }
}
