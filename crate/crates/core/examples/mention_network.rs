//! Query plan, corrected mention counts and graph exports for one organization.

use std::path::Path;

use domainscope::backends::{Cache, FixtureBackend};
use domainscope::clock::VirtualClock;
use domainscope::domain::Registry;
use domainscope::mentions::{
    build_domain_graph, build_query_plan, measure_plan, to_net, PlanOutcome, DEFAULT_MIN_DOMAINS,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let registry = Registry::load(&fixtures.join("ibex.toml"))?;
    let backend = FixtureBackend::load_dir(&fixtures.join("backend"))?;
    let cache = Cache::in_memory();
    let clock = VirtualClock::fixture_epoch();

    for org in &registry.organizations {
        match build_query_plan(org, DEFAULT_MIN_DOMAINS) {
            PlanOutcome::Skipped {
                domains,
                min_domains,
                ..
            } => {
                println!(
                    "{}: Skipped ({domains} domains, needs {min_domains})",
                    org.id
                )
            }
            PlanOutcome::Planned(plan) => {
                let edges = measure_plan(&plan, &backend, &cache, &clock)?;
                let flagged = edges.iter().filter(|e| !e.reliable).count();
                let graph = build_domain_graph(
                    org.domains
                        .iter()
                        .map(|d| (d.host.clone(), Some(d.category))),
                    &edges,
                )?;
                println!(
                    "{}: {} ordered pairs, {} queries, {} arcs, {} unreliable",
                    org.id,
                    plan.pairs.len(),
                    plan.total_queries,
                    graph.arc_count(),
                    flagged
                );
                if org.id == "TEF" {
                    print!(
                        "{}",
                        to_net(&graph)
                            .lines()
                            .take(14)
                            .collect::<Vec<_>>()
                            .join("\n")
                    );
                    println!("\n...");
                }
            }
        }
    }
    Ok(())
}
