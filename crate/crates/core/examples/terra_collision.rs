//! A mention query for "terra.com" also matches every "terra.com.xx" URL.
//! The sibling counts are subtracted and self-prefixed pairs are flagged.

use chrono::TimeZone;
use domainscope::backends::{Cache, CacheRecord, FixtureBackend, HitCountQuery, RecordKind};
use domainscope::clock::VirtualClock;
use domainscope::domain::Host;
use domainscope::mentions::corrected_mention_count;

fn host(s: &str) -> Host {
    Host::parse(s).expect("valid host")
}

fn record(target: &str, source: &str, count: u64, rounded: bool) -> CacheRecord {
    CacheRecord {
        key: HitCountQuery::mention(&host(target), &host(source)).render(),
        kind: RecordKind::Hce,
        value: serde_json::json!({ "count": count, "rounded": rounded }),
        captured_at: chrono::Utc.with_ymd_and_hms(2014, 6, 1, 0, 0, 0).unwrap(),
        backend_id: "fixture".to_owned(),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let source = "terra.com.br";
    let siblings = [
        ("terra.com.ar", 19),
        ("terra.com.co", 57),
        ("terra.com.ec", 6),
        ("terra.com.sv", 1),
        ("terra.com.mx", 36),
        ("terra.com.pe", 29),
        ("terra.com.ve", 12),
    ];
    let mut records = vec![record("terra.com", source, 11_800_000, true)];
    records.extend(siblings.iter().map(|(s, c)| record(s, source, *c, false)));
    let backend = FixtureBackend::from_records(records);

    let mut all: Vec<Host> = siblings.iter().map(|(s, _)| host(s)).collect();
    all.push(host(source));
    all.push(host("terra.com"));
    let edge = corrected_mention_count(
        &host("terra.com"),
        &host(source),
        &all,
        &backend,
        &Cache::in_memory(),
        &VirtualClock::fixture_epoch(),
    )?;
    println!(
        "query       {}",
        HitCountQuery::mention(&edge.target, &edge.source).render()
    );
    println!("raw         {}", edge.raw_hce);
    println!("overcount   {}", edge.sibling_overcount);
    println!("corrected   {}", edge.corrected_hce);
    println!("collision   {}", edge.collision);
    println!("reliable    {}", edge.reliable);
    Ok(())
}
