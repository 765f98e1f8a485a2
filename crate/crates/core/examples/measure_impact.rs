//! Impact snapshots through the cache, then the corporate share of page count.

use std::path::Path;

use domainscope::backends::{fetch_impact, Cache, FixtureBackend, ImpactIndicator};
use domainscope::clock::VirtualClock;
use domainscope::domain::Registry;
use domainscope::report::{contribution_table, fmt_real, PERCENT_DECIMALS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let registry = Registry::load(&fixtures.join("ibex.toml"))?;
    let backend = FixtureBackend::load_dir(&fixtures.join("backend"))?;
    let cache = Cache::in_memory();
    let clock = VirtualClock::fixture_epoch();

    let org = registry.get("TEF").expect("TEF in sample registry");
    let mut snapshots = Vec::new();
    for h in org.hosts() {
        let s = fetch_impact(h, &backend, &cache, &clock)?;
        let cells: Vec<String> = ImpactIndicator::ALL
            .iter()
            .map(|i| format!("{}={}", i.short_name(), fmt_real(i.value(&s.values), 1)))
            .collect();
        println!("{:24} {}", h.as_str(), cells.join(" "));
        snapshots.push(s);
    }
    // Second pass is served from the cache.
    for h in org.hosts() {
        fetch_impact(h, &backend, &cache, &clock)?;
    }
    println!(
        "backend calls {}, cache hits {}",
        backend.calls(),
        cache.hits()
    );

    let rows = contribution_table(std::slice::from_ref(org), &snapshots)?;
    let r = &rows[0];
    println!(
        "{} holds {}% of {} pages",
        r.corporate_host,
        fmt_real(r.percentage, PERCENT_DECIMALS),
        r.total_page_count
    );
    Ok(())
}
