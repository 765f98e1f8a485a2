use serde::Serialize;

use super::{CategoryCounts, OrganizationRecord};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrganizationCounts {
    pub id: String,
    pub name: String,
    pub sector: String,
    pub counts: CategoryCounts,
    pub total: usize,
}

/// Census of an organization set: per-category counts and the spread of
/// domain counts across organizations.
///
/// Domain counts include the corporate domains, the way the census table
/// totals them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegistrySummary {
    pub organizations: Vec<OrganizationCounts>,
    pub category_totals: CategoryCounts,
    pub grand_total: usize,
    pub mean: f64,
    /// Population standard deviation (denominator n).
    pub std_dev: f64,
    /// Sample standard deviation (denominator n - 1); zero below two
    /// organizations.
    pub sample_std_dev: f64,
}

pub fn summarize_registry(orgs: &[OrganizationRecord]) -> RegistrySummary {
    let organizations: Vec<OrganizationCounts> = orgs
        .iter()
        .map(|o| {
            let mut counts = CategoryCounts::default();
            for d in &o.domains {
                counts[d.category] += 1;
            }
            OrganizationCounts {
                id: o.id.clone(),
                name: o.name.clone(),
                sector: o.sector.clone(),
                total: counts.total(),
                counts,
            }
        })
        .collect();
    let mut category_totals = CategoryCounts::default();
    for o in &organizations {
        category_totals.add(&o.counts);
    }
    let grand_total = category_totals.total();
    let n = organizations.len() as f64;
    let (mean, std_dev, sample_std_dev) = if organizations.is_empty() {
        (0.0, 0.0, 0.0)
    } else {
        let mean = grand_total as f64 / n;
        let ss: f64 = organizations
            .iter()
            .map(|o| (o.total as f64 - mean).powi(2))
            .sum();
        let sample = if organizations.len() > 1 {
            (ss / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        (mean, (ss / n).sqrt(), sample)
    };
    RegistrySummary {
        organizations,
        category_totals,
        grand_total,
        mean,
        std_dev,
        sample_std_dev,
    }
}
