use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};

use chrono::{DateTime, Utc};

use super::cache::{read_records, CacheError, CacheRecord, RecordKind};
use super::snapshot::ImpactValues;
use super::{BackendError, HitObservation, ImpactObservation, ImpactSource, SearchSource};
use crate::domain::Host;

pub const FIXTURE_BACKEND_ID: &str = "fixture";

/// Offline backend answering from recorded JSON-lines files.
///
/// Anything not recorded is reported as missing. Every answered call bumps
/// a counter so tests can check that cached runs stay offline.
#[derive(Debug, Default)]
pub struct FixtureBackend {
    id: String,
    impact: HashMap<String, (ImpactValues, DateTime<Utc>)>,
    hce: HashMap<String, (Option<u64>, bool, DateTime<Utc>)>,
    max_query_len: usize,
    calls: AtomicU64,
}

impl FixtureBackend {
    pub fn empty() -> Self {
        FixtureBackend {
            id: FIXTURE_BACKEND_ID.to_owned(),
            max_query_len: 2048,
            ..Default::default()
        }
    }

    /// Loads every `*.jsonl` file in `dir`, in file-name order. Later
    /// records override earlier ones with the same key.
    pub fn load_dir(dir: &Path) -> Result<Self, CacheError> {
        let io_err = |source| CacheError::Io {
            path: dir.to_owned(),
            source,
        };
        let mut files: Vec<_> = fs::read_dir(dir)
            .map_err(io_err)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
            .collect();
        files.sort();
        let mut records = Vec::new();
        for f in files {
            records.extend(read_records(&f)?);
        }
        Ok(Self::from_records(records))
    }

    /// Records must already be validated (as [`read_records`] does).
    pub fn from_records(records: impl IntoIterator<Item = CacheRecord>) -> Self {
        let mut fb = Self::empty();
        for rec in records {
            match rec.kind {
                RecordKind::Impact => {
                    let v = rec.impact_values().expect("validated record");
                    fb.impact.insert(rec.key, (v, rec.captured_at));
                }
                RecordKind::Hce => {
                    let (count, rounded) = rec.hce_value().expect("validated record");
                    fb.hce.insert(rec.key, (count, rounded, rec.captured_at));
                }
            }
        }
        fb
    }

    pub fn with_max_query_len(mut self, n: usize) -> Self {
        self.max_query_len = n;
        self
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn is_empty(&self) -> bool {
        self.impact.is_empty() && self.hce.is_empty()
    }
}

impl ImpactSource for FixtureBackend {
    fn backend_id(&self) -> &str {
        &self.id
    }

    fn impact(&self, host: &Host) -> Result<ImpactObservation, BackendError> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        Ok(match self.impact.get(host.as_str()) {
            Some((v, at)) => ImpactObservation {
                values: v.clone(),
                captured_at: Some(*at),
            },
            None => ImpactObservation::default(),
        })
    }

    fn calls(&self) -> u64 {
        FixtureBackend::calls(self)
    }
}

impl SearchSource for FixtureBackend {
    fn backend_id(&self) -> &str {
        &self.id
    }

    fn max_query_len(&self) -> usize {
        self.max_query_len
    }

    fn hit_count(&self, query: &str) -> Result<HitObservation, BackendError> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        Ok(match self.hce.get(query) {
            Some(&(count, rounded, at)) => HitObservation {
                count,
                rounded,
                captured_at: Some(at),
            },
            None => HitObservation::default(),
        })
    }

    fn calls(&self) -> u64 {
        FixtureBackend::calls(self)
    }
}
