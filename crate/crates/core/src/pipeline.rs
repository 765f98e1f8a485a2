//! Analysis stages and the state each one hands to the next.
//!
//! Every stage is a pure function of the registry, earlier state and the
//! backends it is given, so the CLI can persist state between subcommands
//! and rerun any stage alone.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::backends::{
    fetch_impact, BackendError, Cache, ImpactIndicator, ImpactSnapshot, ImpactSource, SearchSource,
};
use crate::clock::Clock;
use crate::discovery::{
    crawl_organization_from, CrawlPolicy, CrawlReport, FetcherUnavailable, PageFetcher,
};
use crate::domain::{Host, Registry};
use crate::mentions::{
    build_domain_graph, build_query_plan, measure_plan, DomainGraph, GraphError, MentionEdge,
    PlanOutcome,
};
use crate::metrics::{
    asymmetry_report, intensity_totals, network_metrics, node_metrics, AsymmetryReport,
    IntensityTotals, NetworkMetrics, NodeMetrics,
};
use crate::stats::{pca_varimax, spearman, CorrelationResult, IndicatorMatrix, PcaResult};

/// Column names of the indicator matrix, impact indicators first.
pub const INDICATOR_COLUMNS: [&str; 10] = [
    "Pco", "Alexa", "OSE", "Aut", "InD", "OutD", "Clo", "Bet", "Cco", "Eve",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisSettings {
    pub min_domains: usize,
    pub asymmetry_threshold: i64,
    pub alpha: f64,
    pub components: usize,
}

impl Default for AnalysisSettings {
    fn default() -> Self {
        AnalysisSettings {
            min_domains: crate::mentions::DEFAULT_MIN_DOMAINS,
            asymmetry_threshold: 10,
            alpha: 0.01,
            components: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscoverState {
    pub reports: Vec<CrawlReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureState {
    /// One per registered host, in registry order.
    pub snapshots: Vec<ImpactSnapshot>,
}

impl MeasureState {
    pub fn get(&self, host: &Host) -> Option<&ImpactSnapshot> {
        self.snapshots.iter().find(|s| &s.host == host)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrgMentions {
    pub org_id: String,
    pub outcome: PlanOutcome,
    /// In plan order; empty when skipped.
    pub edges: Vec<MentionEdge>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MentionsState {
    pub orgs: Vec<OrgMentions>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrgNetwork {
    pub org_id: String,
    pub graph: DomainGraph,
    pub network: NetworkMetrics,
    pub nodes: Vec<NodeMetrics>,
    pub asymmetry: AsymmetryReport,
    /// Around the primary corporate domain.
    pub intensity: Option<IntensityTotals>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphState {
    pub networks: Vec<OrgNetwork>,
    /// `(org id, domain count)` of organizations below the eligibility bar.
    pub skipped: Vec<(String, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsState {
    pub matrix: IndicatorMatrix,
    pub correlation: CorrelationResult,
    pub pca: Option<PcaResult>,
    /// Why PCA could not run, when it could not.
    pub pca_error: Option<String>,
}

/// Sighting times count from the moment the stage starts, for every
/// organization alike.
pub fn run_discover(
    registry: &Registry,
    policy: &CrawlPolicy,
    fetcher: &dyn PageFetcher,
    clock: &dyn Clock,
) -> Result<DiscoverState, FetcherUnavailable> {
    let started = clock.now();
    let reports = registry
        .organizations
        .iter()
        .map(|org| crawl_organization_from(org, policy, fetcher, clock, started))
        .collect::<Result<_, _>>()?;
    Ok(DiscoverState { reports })
}

pub fn run_measure(
    registry: &Registry,
    source: &dyn ImpactSource,
    cache: &Cache,
    clock: &dyn Clock,
) -> Result<MeasureState, BackendError> {
    let hosts: Vec<&Host> = registry
        .organizations
        .iter()
        .flat_map(|o| o.hosts())
        .collect();
    let snapshots = hosts
        .par_iter()
        .map(|h| fetch_impact(h, source, cache, clock))
        .collect::<Result<_, _>>()?;
    Ok(MeasureState { snapshots })
}

pub fn run_mentions(
    registry: &Registry,
    min_domains: usize,
    search: &dyn SearchSource,
    cache: &Cache,
    clock: &dyn Clock,
) -> Result<MentionsState, BackendError> {
    let mut orgs = Vec::new();
    for org in &registry.organizations {
        let outcome = build_query_plan(org, min_domains);
        let edges = match outcome.plan() {
            Some(plan) => measure_plan(plan, search, cache, clock)?,
            None => Vec::new(),
        };
        orgs.push(OrgMentions {
            org_id: org.id.clone(),
            outcome,
            edges,
        });
    }
    Ok(MentionsState { orgs })
}

pub fn run_graph(
    registry: &Registry,
    mentions: &MentionsState,
    threshold: i64,
) -> Result<GraphState, GraphError> {
    let mut networks = Vec::new();
    let mut skipped = Vec::new();
    for m in &mentions.orgs {
        let Some(org) = registry.get(&m.org_id) else {
            continue;
        };
        if let PlanOutcome::Skipped { domains, .. } = &m.outcome {
            skipped.push((m.org_id.clone(), *domains));
            continue;
        }
        let graph = build_domain_graph(
            org.domains
                .iter()
                .map(|d| (d.host.clone(), Some(d.category))),
            &m.edges,
        )?;
        let nodes = node_metrics(&graph);
        let intensity = org
            .primary_corporate()
            .and_then(|c| intensity_totals(&graph, &c.host).ok());
        networks.push(OrgNetwork {
            org_id: m.org_id.clone(),
            network: network_metrics(&graph),
            asymmetry: asymmetry_report(&nodes, threshold),
            nodes,
            intensity,
            graph,
        });
    }
    Ok(GraphState { networks, skipped })
}

/// One row per registered host. Network columns are missing for hosts of
/// organizations without a graph.
pub fn indicator_matrix(
    registry: &Registry,
    measure: &MeasureState,
    graph: &GraphState,
) -> IndicatorMatrix {
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for org in &registry.organizations {
        let net = graph.networks.iter().find(|n| n.org_id == org.id);
        for host in org.hosts() {
            let mut row: Vec<Option<f64>> = ImpactIndicator::ALL
                .iter()
                .map(|i| measure.get(host).and_then(|s| i.value(&s.values)))
                .collect();
            let node = net.and_then(|n| n.nodes.iter().find(|m| &m.host == host));
            row.extend([
                node.map(|m| m.in_degree as f64),
                node.map(|m| m.out_degree as f64),
                node.and_then(|m| m.closeness),
                node.map(|m| m.betweenness),
                node.and_then(|m| m.clustering),
                node.and_then(|m| m.eigenvector),
            ]);
            rows.push(host.to_string());
            values.push(row);
        }
    }
    IndicatorMatrix::new(
        rows,
        INDICATOR_COLUMNS.iter().map(|s| s.to_string()).collect(),
        values,
    )
    .expect("rows built with the full column set")
}

pub fn run_stats(matrix: IndicatorMatrix, alpha: f64, components: usize) -> StatsState {
    let correlation = spearman(&matrix, alpha);
    let (pca, pca_error) = match pca_varimax(&matrix, components) {
        Ok(p) => (Some(p), None),
        Err(e) => (None, Some(e.to_string())),
    };
    StatsState {
        matrix,
        correlation,
        pca,
        pca_error,
    }
}
