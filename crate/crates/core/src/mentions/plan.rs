use serde::{Deserialize, Serialize};

use crate::domain::{Host, OrganizationRecord};

/// Organizations need at least this many domains for a usable network.
pub const DEFAULT_MIN_DOMAINS: usize = 10;

/// Every ordered (target, source) pair of an organization's domains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryPlan {
    pub org_id: String,
    /// Plan domains, sorted.
    pub hosts: Vec<Host>,
    /// `(target, source)` pairs in lexicographic order.
    pub pairs: Vec<(Host, Host)>,
    pub total_queries: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PlanOutcome {
    Planned(QueryPlan),
    Skipped {
        org_id: String,
        domains: usize,
        min_domains: usize,
    },
}

impl PlanOutcome {
    pub fn plan(&self) -> Option<&QueryPlan> {
        match self {
            PlanOutcome::Planned(p) => Some(p),
            PlanOutcome::Skipped { .. } => None,
        }
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, PlanOutcome::Skipped { .. })
    }
}

pub fn build_query_plan(org: &OrganizationRecord, min_domains: usize) -> PlanOutcome {
    let mut hosts: Vec<Host> = org.hosts().cloned().collect();
    hosts.sort();
    hosts.dedup();
    if hosts.len() < min_domains {
        return PlanOutcome::Skipped {
            org_id: org.id.clone(),
            domains: hosts.len(),
            min_domains,
        };
    }
    let pairs: Vec<(Host, Host)> = hosts
        .iter()
        .flat_map(|t| {
            hosts
                .iter()
                .filter(move |s| *s != t)
                .map(move |s| (t.clone(), s.clone()))
        })
        .collect();
    PlanOutcome::Planned(QueryPlan {
        org_id: org.id.clone(),
        total_queries: pairs.len(),
        hosts,
        pairs,
    })
}
