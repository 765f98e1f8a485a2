use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::collision::{colliding_siblings, detect_collision, Collision};
use super::plan::QueryPlan;
use crate::backends::{hit_count_estimate, BackendError, Cache, HitCountQuery, SearchSource};
use crate::clock::Clock;
use crate::domain::Host;

/// One `"target" site:source` measurement after collision correction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MentionEdge {
    /// The site searched.
    pub source: Host,
    /// The quoted, mentioned domain.
    pub target: Host,
    pub raw_hce: u64,
    pub sibling_overcount: u64,
    pub corrected_hce: u64,
    pub collision: Collision,
    pub reliable: bool,
}

impl MentionEdge {
    /// Applies the subtraction correction. A missing raw count is taken as 0
    /// and a missing sibling count as 0; either makes the edge unreliable,
    /// as does a self-prefix collision.
    pub fn from_counts(
        target: Host,
        source: Host,
        collision: Collision,
        raw: Option<u64>,
        sibling_counts: impl IntoIterator<Item = Option<u64>>,
    ) -> Self {
        let mut reliable = raw.is_some() && collision != Collision::SelfPrefix;
        let mut overcount = 0u64;
        for c in sibling_counts {
            match c {
                Some(c) => overcount = overcount.saturating_add(c),
                None => reliable = false,
            }
        }
        let raw_hce = raw.unwrap_or(0);
        MentionEdge {
            source,
            target,
            raw_hce,
            sibling_overcount: overcount,
            corrected_hce: raw_hce.saturating_sub(overcount),
            collision,
            reliable,
        }
    }

    pub fn has_collision(&self) -> bool {
        self.collision != Collision::None
    }
}

/// Errors that end a run rather than degrading one edge.
fn is_fatal(e: &BackendError) -> bool {
    matches!(
        e,
        BackendError::QuotaExhausted { .. } | BackendError::Cache(_)
    )
}

/// Measures one ordered pair, including the sibling queries its correction
/// needs.
pub fn corrected_mention_count(
    target: &Host,
    source: &Host,
    siblings: &[Host],
    search: &dyn SearchSource,
    cache: &Cache,
    clock: &dyn Clock,
) -> Result<MentionEdge, BackendError> {
    let collision = detect_collision(target, source, siblings);
    let raw = hit_count_estimate(
        &HitCountQuery::mention(target, source),
        search,
        cache,
        clock,
    )?
    .count;
    let mut counts = Vec::new();
    for s in colliding_siblings(target, source, siblings) {
        match hit_count_estimate(&HitCountQuery::mention(s, source), search, cache, clock) {
            Ok(e) => counts.push(e.count),
            Err(e) if is_fatal(&e) => return Err(e),
            Err(_) => counts.push(None),
        }
    }
    Ok(MentionEdge::from_counts(
        target.clone(),
        source.clone(),
        collision,
        raw,
        counts,
    ))
}

/// Runs a whole plan on the current rayon pool. Edges come back in plan
/// order whatever the scheduling.
pub fn measure_plan(
    plan: &QueryPlan,
    search: &dyn SearchSource,
    cache: &Cache,
    clock: &dyn Clock,
) -> Result<Vec<MentionEdge>, BackendError> {
    plan.pairs
        .par_iter()
        .map(|(t, s)| corrected_mention_count(t, s, &plan.hosts, search, cache, clock))
        .collect()
}
