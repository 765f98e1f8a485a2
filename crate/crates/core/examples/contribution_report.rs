//! Corporate share of page count and best-performing categories, rendered
//! the way the report tables print them.

use chrono::TimeZone;
use domainscope::backends::{ImpactIndicator, ImpactSnapshot, ImpactValues};
use domainscope::domain::{Category, Host, OrganizationRecord, WebDomainRecord};
use domainscope::report::{best_performers, contribution_table, fmt_real, PERCENT_DECIMALS};

fn snapshot(host: &str, pages: u64) -> ImpactSnapshot {
    ImpactSnapshot {
        host: Host::parse(host).expect("valid"),
        values: ImpactValues {
            page_count: Some(pages),
            ..ImpactValues::default()
        },
        captured_at: chrono::Utc.with_ymd_and_hms(2014, 6, 1, 0, 0, 0).unwrap(),
        backend_id: "example".into(),
    }
}

fn org(id: &str, domains: &[(&str, Category)]) -> OrganizationRecord {
    OrganizationRecord {
        id: id.into(),
        name: id.into(),
        sector: String::new(),
        domains: domains
            .iter()
            .map(|(h, c)| WebDomainRecord::new(Host::parse(h).expect("valid"), *c))
            .collect(),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let orgs = [
        org(
            "SAN",
            &[
                ("santander.com", Category::Corporate),
                ("universia.es", Category::BrandProduct),
            ],
        ),
        org("REE", &[("ree.es", Category::Corporate)]),
        org(
            "TEF",
            &[
                ("telefonica.com", Category::Corporate),
                ("movistar.es", Category::BrandProduct),
            ],
        ),
    ];
    let snaps = [
        snapshot("santander.com", 60_000),
        snapshot("universia.es", 17_225_739 - 60_000),
        snapshot("ree.es", 6_790),
        snapshot("telefonica.com", 500),
        snapshot("movistar.es", 500),
    ];
    for r in contribution_table(&orgs, &snaps)? {
        println!(
            "{:4} {:16} {:>10} / {:>10} = {:>7}%",
            r.org_id,
            r.corporate_host.as_str(),
            r.corporate_page_count,
            r.total_page_count,
            fmt_real(r.percentage, PERCENT_DECIMALS)
        );
    }
    let tally = best_performers(&orgs, &snaps);
    println!("{}", tally.tie_policy);
    for c in [Category::Corporate, Category::BrandProduct] {
        println!(
            "{:14} wins page count in {}",
            c.as_str(),
            tally.count(c, ImpactIndicator::PageCount)
        );
    }
    Ok(())
}
