use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::backends::{ImpactIndicator, ImpactSnapshot, ImpactValues};
use crate::domain::{Category, Host, OrganizationRecord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("organization {org_id} has no snapshot for its corporate domain")]
    MissingCorporateSnapshot { org_id: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContributionRow {
    pub org_id: String,
    pub corporate_host: Host,
    pub corporate_page_count: u64,
    pub total_page_count: u64,
    /// `None` when the total is zero.
    pub percentage: Option<f64>,
    /// Domains whose page count is missing and was counted as zero.
    pub missing_domains: usize,
}

fn index(snapshots: &[ImpactSnapshot]) -> BTreeMap<&Host, &ImpactValues> {
    snapshots.iter().map(|s| (&s.host, &s.values)).collect()
}

/// Share of each organization's page count held by its primary corporate
/// domain, smallest share first. Organizations with an undefined share come
/// last.
pub fn contribution_table(
    orgs: &[OrganizationRecord],
    snapshots: &[ImpactSnapshot],
) -> Result<Vec<ContributionRow>, ReportError> {
    let snaps = index(snapshots);
    let mut rows = Vec::with_capacity(orgs.len());
    for org in orgs {
        let missing = || ReportError::MissingCorporateSnapshot {
            org_id: org.id.clone(),
        };
        let corp = org.primary_corporate().ok_or_else(missing)?;
        let corp_values = snaps.get(&corp.host).ok_or_else(missing)?;
        let mut total = 0u64;
        let mut missing_domains = 0;
        for h in org.hosts() {
            match snaps.get(h).and_then(|v| v.page_count) {
                Some(c) => total += c,
                None => missing_domains += 1,
            }
        }
        let corporate = corp_values.page_count.unwrap_or(0);
        rows.push(ContributionRow {
            org_id: org.id.clone(),
            corporate_host: corp.host.clone(),
            corporate_page_count: corporate,
            total_page_count: total,
            percentage: (total > 0).then(|| 100.0 * corporate as f64 / total as f64),
            missing_domains,
        });
    }
    rows.sort_by(|a, b| match (a.percentage, b.percentage) {
        (Some(x), Some(y)) => x.total_cmp(&y).then_with(|| a.org_id.cmp(&b.org_id)),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => a.org_id.cmp(&b.org_id),
    });
    Ok(rows)
}

pub const TIE_POLICY: &str = "ties: CORPORATE wins, otherwise the lexicographically smallest host";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrgWinners {
    pub org_id: String,
    /// Best domain per indicator, in `ImpactIndicator::ALL` order.
    pub winners: Vec<Option<Host>>,
}

/// Which category the best domain of each organization falls in, per
/// impact indicator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestPerformerTally {
    pub indicators: Vec<ImpactIndicator>,
    /// Every category, each with one count per indicator.
    pub counts: Vec<(Category, Vec<usize>)>,
    /// Organizations with at least one value, per indicator.
    pub denominators: Vec<usize>,
    pub per_org: Vec<OrgWinners>,
    pub tie_policy: String,
}

impl BestPerformerTally {
    pub fn count(&self, category: Category, indicator: ImpactIndicator) -> usize {
        let j = self
            .indicators
            .iter()
            .position(|&i| i == indicator)
            .expect("every indicator tallied");
        self.counts
            .iter()
            .find(|(c, _)| *c == category)
            .map_or(0, |(_, v)| v[j])
    }
}

pub fn best_performers(
    orgs: &[OrganizationRecord],
    snapshots: &[ImpactSnapshot],
) -> BestPerformerTally {
    let snaps = index(snapshots);
    let indicators = ImpactIndicator::ALL.to_vec();
    let mut counts: Vec<(Category, Vec<usize>)> = Category::ALL
        .iter()
        .map(|&c| (c, vec![0; indicators.len()]))
        .collect();
    let mut denominators = vec![0; indicators.len()];
    let mut per_org = Vec::with_capacity(orgs.len());
    for org in orgs {
        let mut winners = Vec::with_capacity(indicators.len());
        for (j, ind) in indicators.iter().enumerate() {
            let mut best: Option<(&Host, Category, f64)> = None;
            for d in &org.domains {
                let Some(v) = snaps.get(&d.host).and_then(|s| ind.value(s)) else {
                    continue;
                };
                let better = match best {
                    None => true,
                    Some((bh, bc, bv)) => {
                        v > bv
                            || (v == bv
                                && match (
                                    d.category == Category::Corporate,
                                    bc == Category::Corporate,
                                ) {
                                    (true, false) => true,
                                    (false, true) => false,
                                    _ => d.host < *bh,
                                })
                    }
                };
                if better {
                    best = Some((&d.host, d.category, v));
                }
            }
            if let Some((h, c, _)) = best {
                denominators[j] += 1;
                counts
                    .iter_mut()
                    .find(|(k, _)| *k == c)
                    .expect("all categories listed")
                    .1[j] += 1;
                winners.push(Some(h.clone()));
            } else {
                winners.push(None);
            }
        }
        per_org.push(OrgWinners {
            org_id: org.id.clone(),
            winners,
        });
    }
    BestPerformerTally {
        indicators,
        counts,
        denominators,
        per_org,
        tie_policy: TIE_POLICY.to_owned(),
    }
}

#[cfg(test)]
mod tests {
    use chrono::TimeZone;

    use super::*;
    use crate::domain::WebDomainRecord;

    fn snap(host: &str, pco: Option<u64>) -> ImpactSnapshot {
        ImpactSnapshot {
            host: Host::parse(host).unwrap(),
            values: ImpactValues {
                page_count: pco,
                ..ImpactValues::default()
            },
            captured_at: chrono::Utc.timestamp_opt(0, 0).unwrap(),
            backend_id: "test".into(),
        }
    }

    fn org(id: &str, domains: &[(&str, Category)]) -> OrganizationRecord {
        OrganizationRecord {
            id: id.into(),
            name: id.into(),
            sector: "x".into(),
            domains: domains
                .iter()
                .map(|(h, c)| WebDomainRecord::new(Host::parse(h).unwrap(), *c))
                .collect(),
        }
    }

    #[test]
    fn santander_and_ree_rows() {
        let orgs = [
            org(
                "SAN",
                &[
                    ("santander.com", Category::Corporate),
                    ("santander.es", Category::Delegation),
                ],
            ),
            org("REE", &[("ree.es", Category::Corporate)]),
            org("NIL", &[("nil.com", Category::Corporate)]),
        ];
        let snaps = [
            snap("santander.com", Some(60_000)),
            snap("santander.es", Some(17_225_739 - 60_000)),
            snap("ree.es", Some(6_790)),
            snap("nil.com", Some(0)),
        ];
        let rows = contribution_table(&orgs, &snaps).unwrap();
        assert_eq!(rows[0].org_id, "SAN");
        assert_eq!(format!("{:.3}", rows[0].percentage.unwrap()), "0.348");
        assert_eq!(rows[1].percentage, Some(100.0));
        assert_eq!(rows[2].percentage, None);
    }

    #[test]
    fn missing_corporate_snapshot() {
        let orgs = [org("A", &[("a.com", Category::Corporate)])];
        assert!(matches!(
            contribution_table(&orgs, &[]),
            Err(ReportError::MissingCorporateSnapshot { .. })
        ));
    }

    #[test]
    fn missing_page_counts_are_zero_and_counted() {
        let orgs = [org(
            "A",
            &[("a.com", Category::Corporate), ("b.com", Category::Service)],
        )];
        let rows =
            contribution_table(&orgs, &[snap("a.com", Some(5)), snap("b.com", None)]).unwrap();
        assert_eq!(rows[0].total_page_count, 5);
        assert_eq!(rows[0].missing_domains, 1);
    }

    #[test]
    fn tally_ties_and_denominators() {
        let orgs = [
            org(
                "A",
                &[("b.com", Category::Service), ("a.com", Category::Corporate)],
            ),
            org("B", &[("solo.com", Category::Corporate)]),
            org(
                "C",
                &[
                    ("z.com", Category::Corporate),
                    ("y.com", Category::Service),
                    ("x.com", Category::Foundation),
                ],
            ),
        ];
        let snaps = [
            snap("a.com", Some(10)),
            snap("b.com", Some(10)),
            snap("solo.com", Some(1)),
            snap("z.com", Some(1)),
            snap("y.com", Some(7)),
            snap("x.com", Some(7)),
        ];
        let t = best_performers(&orgs, &snaps);
        assert_eq!(t.count(Category::Corporate, ImpactIndicator::PageCount), 2);
        assert_eq!(t.count(Category::Foundation, ImpactIndicator::PageCount), 1);
        assert_eq!(t.per_org[2].winners[0].as_ref().unwrap().as_str(), "x.com");
        assert_eq!(t.denominators, [3, 0, 0, 0]);
        let col_sum: usize = t.counts.iter().map(|(_, v)| v[0]).sum();
        assert_eq!(col_sum, 3);
    }
}
