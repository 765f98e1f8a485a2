//! Organizations, their web domains and the categories those domains fall in.

mod category;
mod host;
mod registry;
pub mod suffix;
mod suggest;
mod summary;

pub use category::{Category, CategoryCounts, UnknownCategory};
pub use host::{normalize_host, Host, HostError, Normalized};
pub use registry::{OrganizationRecord, Registry, RegistryError, WebDomainRecord};
pub use suggest::{suggest_category, CategoryHints, HintError, Suggestion, CONFIRMATION_THRESHOLD};
pub use summary::{summarize_registry, OrganizationCounts, RegistrySummary};

/// Version string of the bundled public-suffix snapshot.
pub fn suffix_list_version() -> &'static str {
    suffix::bundled().version()
}
