//! Crawl the recorded Acciona pages and list candidate domains for review.

use std::path::Path;

use domainscope::clock::VirtualClock;
use domainscope::discovery::{crawl_organization, CrawlPolicy, FixtureFetcher};
use domainscope::domain::Registry;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let registry = Registry::load(&fixtures.join("ibex.toml"))?;
    let org = registry.get("ACC").expect("ACC in sample registry");
    let fetcher = FixtureFetcher::load(&fixtures.join("pages"))?;
    let clock = VirtualClock::fixture_epoch();

    let report = crawl_organization(org, &CrawlPolicy::default(), &fetcher, &clock)?;
    for c in &report.candidates {
        println!(
            "{:24} suggested {:13} ({:.2}) first seen {}",
            c.host.as_str(),
            c.suggestion.category.as_str(),
            c.suggestion.confidence,
            c.first_seen
        );
        for e in &c.evidence {
            println!("    from {} {:?}", e.source_page, e.anchor_text);
        }
    }
    let fetches: usize = report.fetches.values().sum();
    println!(
        "{fetches} requests, {} diagnostics",
        report.diagnostics.len()
    );
    for d in report
        .diagnostics
        .iter()
        .filter(|d| d.url.contains("acciona.com/"))
    {
        println!("    {:?} {} {}", d.kind, d.url, d.detail);
    }
    Ok(())
}
