use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::domain::Host;

/// What an impact source reports for one host, before stamping.
///
/// `None` means the source had no information, which is different from a
/// reported zero.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ImpactValues {
    pub page_count: Option<u64>,
    pub sites_linking_in: Option<u64>,
    pub root_domains_linking: Option<u64>,
    /// 0 to 100.
    pub authority: Option<f64>,
}

impl ImpactValues {
    pub fn is_all_missing(&self) -> bool {
        self.page_count.is_none()
            && self.sites_linking_in.is_none()
            && self.root_domains_linking.is_none()
            && self.authority.is_none()
    }

    pub fn authority_in_range(&self) -> bool {
        self.authority.is_none_or(|a| (0.0..=100.0).contains(&a))
    }
}

/// The four web-impact indicators for one host at one instant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpactSnapshot {
    pub host: Host,
    #[serde(flatten)]
    pub values: ImpactValues,
    pub captured_at: DateTime<Utc>,
    pub backend_id: String,
}

impl ImpactSnapshot {
    pub fn page_count(&self) -> Option<u64> {
        self.values.page_count
    }
}

/// The four indicators in fixed order, for tallies and matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ImpactIndicator {
    PageCount,
    SitesLinkingIn,
    RootDomainsLinking,
    Authority,
}

impl ImpactIndicator {
    pub const ALL: [ImpactIndicator; 4] = [
        ImpactIndicator::PageCount,
        ImpactIndicator::SitesLinkingIn,
        ImpactIndicator::RootDomainsLinking,
        ImpactIndicator::Authority,
    ];

    /// Short column name used in matrices and tables.
    pub fn short_name(self) -> &'static str {
        match self {
            ImpactIndicator::PageCount => "Pco",
            ImpactIndicator::SitesLinkingIn => "Alexa",
            ImpactIndicator::RootDomainsLinking => "OSE",
            ImpactIndicator::Authority => "Aut",
        }
    }

    pub fn value(self, v: &ImpactValues) -> Option<f64> {
        match self {
            ImpactIndicator::PageCount => v.page_count.map(|x| x as f64),
            ImpactIndicator::SitesLinkingIn => v.sites_linking_in.map(|x| x as f64),
            ImpactIndicator::RootDomainsLinking => v.root_domains_linking.map(|x| x as f64),
            ImpactIndicator::Authority => v.authority,
        }
    }
}

/// One hit-count estimate as returned by a search source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitCountEstimate {
    pub query: String,
    /// `None` when the source has no figure for the query.
    pub count: Option<u64>,
    /// Set for sources that only report rounded figures.
    pub rounded: bool,
    pub captured_at: DateTime<Utc>,
    pub backend_id: String,
}
