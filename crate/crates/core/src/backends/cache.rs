//! Append-only JSON-lines store for backend answers.
//!
//! One record per line:
//!
//! ```text
//! {"backend_id":"fixture","captured_at":"2014-06-01T00:00:00Z","key":"site:ree.es","kind":"hce","value":{"count":6790,"rounded":false}}
//! {"backend_id":"fixture","captured_at":"2014-06-01T00:00:00Z","key":"ree.es","kind":"impact","value":{"authority":null,"page_count":6790,"root_domains_linking":null,"sites_linking_in":null}}
//! ```
//!
//! `kind` is `hce` (key = rendered query) or `impact` (key = host). A `null`
//! value field is a cached "no information" answer, kept so that reruns do not
//! ask again. When a key occurs on several lines the last one wins. Entries
//! never expire; [`Cache::stale_count`] lets callers warn about old ones.
//! Fixture directories use the same layout.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, RwLock};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use super::snapshot::{HitCountEstimate, ImpactSnapshot, ImpactValues};
use crate::domain::Host;

/// Environment variable that overrides the default cache location.
pub const CACHE_ENV: &str = "DOMAINSCOPE_CACHE";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    Corrupt {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("cache record {key:?} rejected: {reason}")]
    Invalid { key: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    Impact,
    Hce,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CacheKey {
    pub backend_id: String,
    pub kind: RecordKind,
    pub key: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub key: String,
    pub kind: RecordKind,
    pub value: Value,
    pub captured_at: DateTime<Utc>,
    pub backend_id: String,
}

#[derive(Serialize, Deserialize)]
struct HceValue {
    count: Option<u64>,
    #[serde(default)]
    rounded: bool,
}

impl CacheRecord {
    pub fn cache_key(&self) -> CacheKey {
        CacheKey {
            backend_id: self.backend_id.clone(),
            kind: self.kind,
            key: self.key.clone(),
        }
    }

    pub fn from_snapshot(s: &ImpactSnapshot) -> Self {
        CacheRecord {
            key: s.host.to_string(),
            kind: RecordKind::Impact,
            value: serde_json::to_value(&s.values).expect("plain struct"),
            captured_at: s.captured_at,
            backend_id: s.backend_id.clone(),
        }
    }

    pub fn from_estimate(e: &HitCountEstimate) -> Self {
        CacheRecord {
            key: e.query.clone(),
            kind: RecordKind::Hce,
            value: serde_json::to_value(HceValue {
                count: e.count,
                rounded: e.rounded,
            })
            .expect("plain struct"),
            captured_at: e.captured_at,
            backend_id: e.backend_id.clone(),
        }
    }

    pub fn impact_values(&self) -> Result<ImpactValues, String> {
        if self.kind != RecordKind::Impact {
            return Err("not an impact record".into());
        }
        let v: ImpactValues =
            serde_json::from_value(self.value.clone()).map_err(|e| e.to_string())?;
        if !v.authority_in_range() {
            return Err(format!("authority {:?} outside 0..=100", v.authority));
        }
        Ok(v)
    }

    /// Count and rounding flag. A bare number or `null` is accepted as
    /// shorthand for an unrounded count.
    pub fn hce_value(&self) -> Result<(Option<u64>, bool), String> {
        if self.kind != RecordKind::Hce {
            return Err("not an hce record".into());
        }
        match &self.value {
            Value::Null => Ok((None, false)),
            Value::Number(n) => n
                .as_u64()
                .map(|c| (Some(c), false))
                .ok_or_else(|| format!("bad count {n}")),
            other => {
                let v: HceValue =
                    serde_json::from_value(other.clone()).map_err(|e| e.to_string())?;
                Ok((v.count, v.rounded))
            }
        }
    }

    pub fn to_snapshot(&self) -> Result<ImpactSnapshot, String> {
        Ok(ImpactSnapshot {
            host: Host::parse(&self.key).map_err(|e| e.to_string())?,
            values: self.impact_values()?,
            captured_at: self.captured_at,
            backend_id: self.backend_id.clone(),
        })
    }

    pub fn to_estimate(&self) -> Result<HitCountEstimate, String> {
        let (count, rounded) = self.hce_value()?;
        Ok(HitCountEstimate {
            query: self.key.clone(),
            count,
            rounded,
            captured_at: self.captured_at,
            backend_id: self.backend_id.clone(),
        })
    }

    /// One line, keys sorted, no trailing newline.
    pub fn to_line(&self) -> String {
        serde_json::to_value(self)
            .expect("plain struct")
            .to_string()
    }

    pub fn parse_line(line: &str) -> Result<Self, String> {
        let rec: CacheRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
        rec.check()?;
        Ok(rec)
    }

    /// The checks a record must pass to be read back.
    fn check(&self) -> Result<(), String> {
        match self.kind {
            RecordKind::Impact => self.to_snapshot().map(|_| ()),
            RecordKind::Hce => self.hce_value().map(|_| ()),
        }
    }
}

/// Reads every record of a JSON-lines file, in file order.
pub fn read_records(path: &Path) -> Result<Vec<CacheRecord>, CacheError> {
    let io_err = |source| CacheError::Io {
        path: path.to_owned(),
        source,
    };
    let file = File::open(path).map_err(io_err)?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err)?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = CacheRecord::parse_line(&line).map_err(|reason| CacheError::Corrupt {
            path: path.to_owned(),
            line: i + 1,
            reason,
        })?;
        out.push(rec);
    }
    Ok(out)
}

/// Shared read-mostly cache. Readers take a read lock; writes are appended
/// to the file under a separate mutex and then published to the map.
#[derive(Debug, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    entries: RwLock<BTreeMap<CacheKey, CacheRecord>>,
    writer: Mutex<Option<File>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl Cache {
    /// A cache that lives only as long as the process.
    pub fn in_memory() -> Self {
        Cache::default()
    }

    /// Opens or creates the store at `path`.
    pub fn open(path: &Path) -> Result<Self, CacheError> {
        let io_err = |source| CacheError::Io {
            path: path.to_owned(),
            source,
        };
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(io_err)?;
        }
        let mut entries = BTreeMap::new();
        if path.exists() {
            for rec in read_records(path)? {
                entries.insert(rec.cache_key(), rec);
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(io_err)?;
        Ok(Cache {
            path: Some(path.to_owned()),
            entries: RwLock::new(entries),
            writer: Mutex::new(Some(file)),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    /// Looks a record up and counts the hit or miss.
    pub fn lookup(&self, key: &CacheKey) -> Option<CacheRecord> {
        let found = self.get(key);
        let counter = if found.is_some() {
            &self.hits
        } else {
            &self.misses
        };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    /// Looks a record up without touching the counters.
    pub fn get(&self, key: &CacheKey) -> Option<CacheRecord> {
        self.entries.read().unwrap().get(key).cloned()
    }

    /// Appends a record. Records that could not be read back are refused.
    pub fn put(&self, rec: CacheRecord) -> Result<(), CacheError> {
        rec.check().map_err(|reason| CacheError::Invalid {
            key: rec.key.clone(),
            reason,
        })?;
        let mut writer = self.writer.lock().unwrap();
        if let Some(file) = writer.as_mut() {
            let mut line = rec.to_line();
            line.push('\n');
            file.write_all(line.as_bytes())
                .map_err(|source| CacheError::Io {
                    path: self.path.clone().unwrap_or_default(),
                    source,
                })?;
        }
        self.entries.write().unwrap().insert(rec.cache_key(), rec);
        Ok(())
    }

    /// Current contents in key order.
    pub fn records(&self) -> Vec<CacheRecord> {
        self.entries.read().unwrap().values().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    /// Entries captured more than `max_age` before `now`.
    pub fn stale_count(&self, now: DateTime<Utc>, max_age: chrono::Duration) -> usize {
        self.entries
            .read()
            .unwrap()
            .values()
            .filter(|r| now - r.captured_at > max_age)
            .count()
    }
}

/// Cache location: an explicit flag wins, then `DOMAINSCOPE_CACHE`, then
/// `default`.
pub fn resolve_cache_path(flag: Option<&Path>, default: &Path) -> PathBuf {
    if let Some(p) = flag {
        return p.to_owned();
    }
    match std::env::var_os(CACHE_ENV) {
        Some(v) if !v.is_empty() => PathBuf::from(v),
        _ => default.to_owned(),
    }
}
