//! Capability layer for web-impact indicators and hit-count estimates.
//!
//! Sources implement [`ImpactSource`] and/or [`SearchSource`]. Callers go
//! through [`fetch_impact`] and [`hit_count_estimate`], which consult the
//! [`Cache`] first and write every fresh answer through it.

mod cache;
mod fixture;
#[cfg(feature = "live")]
pub mod live;
mod query;
mod snapshot;
mod throttle;

use chrono::{DateTime, Utc};
use thiserror::Error;

pub use cache::{
    read_records, resolve_cache_path, Cache, CacheError, CacheKey, CacheRecord, RecordKind,
    CACHE_ENV,
};
pub use fixture::{FixtureBackend, FIXTURE_BACKEND_ID};
pub use query::{render_query, HitCountQuery, QueryError};
pub use snapshot::{HitCountEstimate, ImpactIndicator, ImpactSnapshot, ImpactValues};
pub use throttle::{RetryPolicy, Throttled};

use crate::clock::Clock;
use crate::domain::Host;

#[derive(Debug, Error)]
pub enum BackendError {
    #[error("backend {backend} unavailable: {reason}")]
    Unavailable { backend: String, reason: String },
    #[error("backend {backend} quota exhausted")]
    QuotaExhausted { backend: String },
    #[error("backend {backend} rejected query {query:?}: {reason}")]
    QueryRejected {
        backend: String,
        query: String,
        reason: String,
    },
    #[error("backend {backend} sent an unusable answer: {reason}")]
    InvalidResponse { backend: String, reason: String },
    #[error(transparent)]
    Cache(#[from] CacheError),
}

impl BackendError {
    /// Worth retrying after a pause.
    pub fn is_retryable(&self) -> bool {
        matches!(self, BackendError::Unavailable { .. })
    }
}

/// Raw answer from an impact source. Without `captured_at` the caller's
/// clock stamps it.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ImpactObservation {
    pub values: ImpactValues,
    pub captured_at: Option<DateTime<Utc>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HitObservation {
    pub count: Option<u64>,
    pub rounded: bool,
    pub captured_at: Option<DateTime<Utc>>,
}

/// Source of the four per-domain impact indicators.
pub trait ImpactSource: Send + Sync {
    fn backend_id(&self) -> &str;
    fn impact(&self, host: &Host) -> Result<ImpactObservation, BackendError>;
    /// Requests served so far.
    fn calls(&self) -> u64;
}

/// Source of hit-count estimates for rendered queries.
pub trait SearchSource: Send + Sync {
    fn backend_id(&self) -> &str;
    /// Longest rendered query the source accepts, in bytes.
    fn max_query_len(&self) -> usize;
    fn hit_count(&self, query: &str) -> Result<HitObservation, BackendError>;
    fn calls(&self) -> u64;
}

pub fn fetch_impact(
    host: &Host,
    source: &dyn ImpactSource,
    cache: &Cache,
    clock: &dyn Clock,
) -> Result<ImpactSnapshot, BackendError> {
    let key = CacheKey {
        backend_id: source.backend_id().to_owned(),
        kind: RecordKind::Impact,
        key: host.to_string(),
    };
    if let Some(rec) = cache.lookup(&key) {
        if let Ok(s) = rec.to_snapshot() {
            return Ok(s);
        }
    }
    let obs = source.impact(host)?;
    if !obs.values.authority_in_range() {
        return Err(BackendError::InvalidResponse {
            backend: key.backend_id,
            reason: format!(
                "authority {:?} for {host} outside 0..=100",
                obs.values.authority
            ),
        });
    }
    let snap = ImpactSnapshot {
        host: host.clone(),
        values: obs.values,
        captured_at: obs.captured_at.unwrap_or_else(|| clock.now()),
        backend_id: key.backend_id,
    };
    cache.put(CacheRecord::from_snapshot(&snap))?;
    Ok(snap)
}

pub fn hit_count_estimate(
    q: &HitCountQuery,
    source: &dyn SearchSource,
    cache: &Cache,
    clock: &dyn Clock,
) -> Result<HitCountEstimate, BackendError> {
    let rendered = q.render();
    if rendered.len() > source.max_query_len() {
        return Err(BackendError::QueryRejected {
            backend: source.backend_id().to_owned(),
            reason: format!(
                "{} bytes exceeds the limit of {}",
                rendered.len(),
                source.max_query_len()
            ),
            query: rendered,
        });
    }
    let key = CacheKey {
        backend_id: source.backend_id().to_owned(),
        kind: RecordKind::Hce,
        key: rendered,
    };
    if let Some(rec) = cache.lookup(&key) {
        if let Ok(e) = rec.to_estimate() {
            return Ok(e);
        }
    }
    let obs = source.hit_count(&key.key)?;
    let est = HitCountEstimate {
        query: key.key,
        count: obs.count,
        rounded: obs.rounded,
        captured_at: obs.captured_at.unwrap_or_else(|| clock.now()),
        backend_id: key.backend_id,
    };
    cache.put(CacheRecord::from_estimate(&est))?;
    Ok(est)
}
