use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::analysis::{
    best_performers, contribution_table, BestPerformerTally, ContributionRow, ReportError,
};
use crate::backends::ImpactIndicator;
use crate::domain::{summarize_registry, Category, Host, Registry, RegistrySummary};
use crate::mentions::{edges_to_csv, to_gexf, to_net, PlanOutcome};
use crate::pipeline::{
    AnalysisSettings, DiscoverState, GraphState, MeasureState, MentionsState, StatsState,
};

/// Placeholder for values the backends did not provide.
pub const MISSING: &str = "—";

pub const PERCENT_DECIMALS: usize = 3;
pub const CORRELATION_DECIMALS: usize = 2;
pub const METRIC_DECIMALS: usize = 3;

pub const CORRELATION_CORNER: &str = "spearman (pairwise-complete)";
pub const PCA_CORNER: &str = "pearson (listwise-complete)";

pub fn fmt_real(v: Option<f64>, decimals: usize) -> String {
    match v {
        Some(x) if x.is_finite() => format!("{x:.decimals$}"),
        _ => MISSING.to_owned(),
    }
}

pub fn fmt_count(v: Option<u64>) -> String {
    v.map_or_else(|| MISSING.to_owned(), |c| c.to_string())
}

/// `**` marks a coefficient significant at the chosen alpha.
pub fn fmt_correlation(rho: Option<f64>, significant: bool) -> String {
    match rho {
        Some(r) if significant => format!("**{r:.CORRELATION_DECIMALS$}"),
        r => fmt_real(r, CORRELATION_DECIMALS),
    }
}

fn csv_table<S: AsRef<str>>(header: &[S], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header.iter().map(AsRef::as_ref))
        .expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Everything the report is rendered from.
pub struct ReportInput<'a> {
    pub registry: &'a Registry,
    pub settings: &'a AnalysisSettings,
    pub discover: Option<&'a DiscoverState>,
    pub measure: &'a MeasureState,
    pub mentions: &'a MentionsState,
    pub graph: &'a GraphState,
    pub stats: &'a StatsState,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    settings: &'a AnalysisSettings,
    census: &'a RegistrySummary,
    contribution: &'a [ContributionRow],
    best_performers: &'a BestPerformerTally,
    impact: &'a MeasureState,
    mentions: &'a MentionsState,
    graph: &'a GraphState,
    stats: &'a StatsState,
    discovery: Option<&'a DiscoverState>,
}

/// Renders the report as relative path -> file contents. Identical input
/// gives identical bytes.
pub fn render_report(input: &ReportInput) -> Result<BTreeMap<String, String>, ReportError> {
    let orgs = &input.registry.organizations;
    let census = summarize_registry(orgs);
    let contribution = contribution_table(orgs, &input.measure.snapshots)?;
    let best = best_performers(orgs, &input.measure.snapshots);

    let mut files = BTreeMap::new();
    let mut put = |name: &str, body: String| {
        files.insert(format!("report/{name}"), body);
    };
    put("tables/census.csv", census_csv(&census));
    put("tables/contribution.csv", contribution_csv(&contribution));
    put("tables/best_performers.csv", best_csv(&best));
    put("tables/impact.csv", impact_csv(input));
    put("tables/query_plans.csv", plans_csv(input));
    put("tables/network.csv", network_csv(input.graph));
    put("tables/node_metrics.csv", node_csv(input));
    put("tables/asymmetry.csv", asymmetry_csv(input.graph));
    put("tables/intensity.csv", intensity_csv(input.graph));
    put("tables/correlation.csv", correlation_csv(input.stats));
    put("tables/pca_loadings.csv", loadings_csv(input.stats));
    put("tables/pca_variance.csv", variance_csv(input.stats));
    put("tables/candidates.csv", candidates_csv(input.discover));
    for net in &input.graph.networks {
        put(&format!("graphs/{}.net", net.org_id), to_net(&net.graph));
        put(&format!("graphs/{}.gexf", net.org_id), to_gexf(&net.graph));
    }
    for m in &input.mentions.orgs {
        if m.outcome.plan().is_some() {
            put(
                &format!("graphs/{}.edges.csv", m.org_id),
                edges_to_csv(&m.edges),
            );
        }
    }
    put(
        "summary.txt",
        summary_txt(input, &census, &contribution, &best),
    );
    let json = ReportJson {
        settings: input.settings,
        census: &census,
        contribution: &contribution,
        best_performers: &best,
        impact: input.measure,
        mentions: input.mentions,
        graph: input.graph,
        stats: input.stats,
        discovery: input.discover,
    };
    let mut text = serde_json::to_string_pretty(&json).expect("report types serialize");
    text.push('\n');
    put("report.json", text);
    Ok(files)
}

fn census_csv(s: &RegistrySummary) -> String {
    let mut header = vec!["org_id".to_owned(), "name".to_owned(), "sector".to_owned()];
    header.extend(Category::ALL.iter().map(|c| c.code().to_owned()));
    header.push("total".to_owned());
    let mut rows: Vec<Vec<String>> = s
        .organizations
        .iter()
        .map(|o| {
            let mut r = vec![o.id.clone(), o.name.clone(), o.sector.clone()];
            r.extend(o.counts.iter().map(|(_, n)| n.to_string()));
            r.push(o.total.to_string());
            r
        })
        .collect();
    let mut total = vec!["TOTAL".to_owned(), String::new(), String::new()];
    total.extend(s.category_totals.iter().map(|(_, n)| n.to_string()));
    total.push(s.grand_total.to_string());
    rows.push(total);
    csv_table(&header, rows)
}

fn contribution_csv(rows: &[ContributionRow]) -> String {
    csv_table(
        &[
            "org_id",
            "corporate_host",
            "corporate_page_count",
            "total_page_count",
            "percentage",
            "missing_domains",
        ],
        rows.iter().map(|r| {
            vec![
                r.org_id.clone(),
                r.corporate_host.to_string(),
                r.corporate_page_count.to_string(),
                r.total_page_count.to_string(),
                fmt_real(r.percentage, PERCENT_DECIMALS),
                r.missing_domains.to_string(),
            ]
        }),
    )
}

fn best_csv(t: &BestPerformerTally) -> String {
    let mut header = vec!["category".to_owned()];
    header.extend(t.indicators.iter().map(|i| i.short_name().to_owned()));
    let mut rows: Vec<Vec<String>> = t
        .counts
        .iter()
        .map(|(c, v)| {
            let mut r = vec![c.code().to_owned()];
            r.extend(v.iter().map(usize::to_string));
            r
        })
        .collect();
    let mut denom = vec!["organizations".to_owned()];
    denom.extend(t.denominators.iter().map(usize::to_string));
    rows.push(denom);
    csv_table(&header, rows)
}

fn impact_csv(input: &ReportInput) -> String {
    let mut header = vec!["org_id", "host", "category"];
    header.extend(ImpactIndicator::ALL.iter().map(|i| i.short_name()));
    header.extend(["captured_at", "backend_id"]);
    let mut rows = Vec::new();
    for org in &input.registry.organizations {
        for d in &org.domains {
            let snap = input.measure.get(&d.host);
            let mut r = vec![
                org.id.clone(),
                d.host.to_string(),
                d.category.code().to_owned(),
            ];
            for i in ImpactIndicator::ALL {
                let v = snap.and_then(|s| i.value(&s.values));
                r.push(match i {
                    ImpactIndicator::Authority => fmt_real(v, METRIC_DECIMALS),
                    _ => fmt_count(v.map(|x| x as u64)),
                });
            }
            r.push(snap.map_or_else(|| MISSING.to_owned(), |s| s.captured_at.to_rfc3339()));
            r.push(snap.map_or_else(|| MISSING.to_owned(), |s| s.backend_id.clone()));
            rows.push(r);
        }
    }
    csv_table(&header, rows)
}

fn plans_csv(input: &ReportInput) -> String {
    csv_table(
        &["org_id", "domains", "status", "ordered_pairs", "queries"],
        input.mentions.orgs.iter().map(|m| match &m.outcome {
            PlanOutcome::Planned(p) => vec![
                m.org_id.clone(),
                p.hosts.len().to_string(),
                "planned".to_owned(),
                p.pairs.len().to_string(),
                p.total_queries.to_string(),
            ],
            PlanOutcome::Skipped { domains, .. } => vec![
                m.org_id.clone(),
                domains.to_string(),
                "skipped".to_owned(),
                "0".to_owned(),
                "0".to_owned(),
            ],
        }),
    )
}

fn network_csv(g: &GraphState) -> String {
    csv_table(
        &[
            "org_id",
            "n",
            "m",
            "average_degree",
            "diameter",
            "density",
            "average_clustering",
            "average_path_length",
            "asymmetry_exceedance",
        ],
        g.networks.iter().map(|n| {
            let w = &n.network;
            vec![
                n.org_id.clone(),
                w.n.to_string(),
                w.m.to_string(),
                fmt_real(Some(w.average_degree), METRIC_DECIMALS),
                fmt_count(w.diameter.map(|d| d as u64)),
                fmt_real(Some(w.density), METRIC_DECIMALS),
                fmt_real(w.average_clustering, METRIC_DECIMALS),
                fmt_real(w.average_path_length, METRIC_DECIMALS),
                fmt_real(Some(n.asymmetry.exceedance_fraction), METRIC_DECIMALS),
            ]
        }),
    )
}

fn category_of(registry: &Registry, org_id: &str, host: &Host) -> String {
    registry
        .get(org_id)
        .and_then(|o| o.domain(host))
        .map_or_else(|| MISSING.to_owned(), |d| d.category.code().to_owned())
}

fn node_csv(input: &ReportInput) -> String {
    let mut rows = Vec::new();
    for n in &input.graph.networks {
        for m in &n.nodes {
            rows.push(vec![
                n.org_id.clone(),
                m.host.to_string(),
                category_of(input.registry, &n.org_id, &m.host),
                m.in_degree.to_string(),
                m.out_degree.to_string(),
                m.degree.to_string(),
                m.asymmetry.to_string(),
                fmt_real(Some(m.betweenness), METRIC_DECIMALS),
                fmt_real(m.closeness, METRIC_DECIMALS),
                fmt_real(m.eigenvector, METRIC_DECIMALS),
                fmt_real(m.clustering, METRIC_DECIMALS),
            ]);
        }
    }
    csv_table(
        &[
            "org_id",
            "host",
            "category",
            "in_degree",
            "out_degree",
            "degree",
            "asymmetry",
            "betweenness",
            "closeness",
            "eigenvector",
            "clustering",
        ],
        rows,
    )
}

fn asymmetry_csv(g: &GraphState) -> String {
    let mut rows = Vec::new();
    for n in &g.networks {
        for (role, list) in [
            ("authority", &n.asymmetry.authorities),
            ("hub", &n.asymmetry.hubs),
        ] {
            for (h, a) in list {
                rows.push(vec![
                    n.org_id.clone(),
                    role.to_owned(),
                    h.to_string(),
                    a.to_string(),
                    n.asymmetry.threshold.to_string(),
                ]);
            }
        }
    }
    csv_table(&["org_id", "role", "host", "asymmetry", "threshold"], rows)
}

fn intensity_csv(g: &GraphState) -> String {
    csv_table(
        &[
            "org_id",
            "host",
            "as_target_total",
            "as_source_total",
            "top_target",
            "top_source",
            "top_count",
        ],
        g.networks.iter().filter_map(|n| {
            let t = n.intensity.as_ref()?;
            let (tt, ts, tc) = match &t.top_pair {
                Some(p) => (
                    p.target.to_string(),
                    p.source.to_string(),
                    p.count.to_string(),
                ),
                None => (MISSING.to_owned(), MISSING.to_owned(), MISSING.to_owned()),
            };
            Some(vec![
                n.org_id.clone(),
                t.host.to_string(),
                t.as_target_total.to_string(),
                t.as_source_total.to_string(),
                tt,
                ts,
                tc,
            ])
        }),
    )
}

fn correlation_csv(s: &StatsState) -> String {
    let c = &s.correlation;
    let mut header = vec![CORRELATION_CORNER.to_owned()];
    header.extend(c.columns.iter().cloned());
    let rows = c.columns.iter().enumerate().map(|(i, name)| {
        let mut r = vec![name.clone()];
        r.extend(
            (0..c.columns.len())
                .map(|j| fmt_correlation(c.rho[i][j], i != j && c.significant[i][j])),
        );
        r
    });
    csv_table(&header, rows)
}

fn loadings_csv(s: &StatsState) -> String {
    let k = s.pca.as_ref().map_or(0, |p| {
        p.eigenvalues
            .len()
            .min(p.loadings.first().map_or(0, Vec::len))
    });
    let mut header = vec![PCA_CORNER.to_owned()];
    header.extend((1..=k).map(|c| format!("PC{c}")));
    header.extend((1..=k).map(|c| format!("RC{c}")));
    let Some(p) = &s.pca else {
        return csv_table(&header, Vec::new());
    };
    let rows = p.columns.iter().enumerate().map(|(i, name)| {
        let mut r = vec![name.clone()];
        r.extend(
            p.loadings[i]
                .iter()
                .map(|&v| fmt_real(Some(v), METRIC_DECIMALS)),
        );
        r.extend(
            p.rotated[i]
                .iter()
                .map(|&v| fmt_real(Some(v), METRIC_DECIMALS)),
        );
        r
    });
    csv_table(&header, rows)
}

fn variance_csv(s: &StatsState) -> String {
    let header = ["component", "eigenvalue", "explained", "cumulative"];
    let Some(p) = &s.pca else {
        return csv_table(&header, Vec::new());
    };
    let mut cum = 0.0;
    let rows = p
        .eigenvalues
        .iter()
        .zip(&p.explained)
        .enumerate()
        .map(|(i, (l, e))| {
            cum += e;
            vec![
                format!("PC{}", i + 1),
                fmt_real(Some(*l), METRIC_DECIMALS),
                fmt_real(Some(*e), METRIC_DECIMALS),
                fmt_real(Some(cum), METRIC_DECIMALS),
            ]
        });
    csv_table(&header, rows.collect::<Vec<_>>())
}

fn candidates_csv(d: Option<&DiscoverState>) -> String {
    let header = [
        "org_id",
        "host",
        "suggested_category",
        "confidence",
        "needs_confirmation",
        "first_seen",
        "evidence_count",
        "source_page",
        "anchor_text",
    ];
    let rows = d.into_iter().flat_map(|d| &d.reports).flat_map(|r| {
        r.candidates.iter().map(move |c| {
            let first = &c.evidence[0];
            vec![
                r.org_id.clone(),
                c.host.to_string(),
                c.suggestion.category.code().to_owned(),
                format!("{:.2}", c.suggestion.confidence),
                c.suggestion.needs_confirmation().to_string(),
                c.first_seen.to_rfc3339(),
                c.evidence.len().to_string(),
                first.source_page.clone(),
                first.anchor_text.clone(),
            ]
        })
    });
    csv_table(&header, rows.collect::<Vec<_>>())
}

fn summary_txt(
    input: &ReportInput,
    census: &RegistrySummary,
    contribution: &[ContributionRow],
    best: &BestPerformerTally,
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "domainscope report");
    let _ = writeln!(s);
    let _ = writeln!(s, "Census");
    let _ = writeln!(
        s,
        "  {} organizations, {} web domains",
        census.organizations.len(),
        census.grand_total
    );
    let _ = writeln!(
        s,
        "  domains per organization: mean {:.3}, sd {:.3} (population), {:.3} (sample)",
        census.mean, census.std_dev, census.sample_std_dev
    );
    let by_cat: Vec<String> = census
        .category_totals
        .iter()
        .map(|(c, n)| format!("{} {n}", c.code()))
        .collect();
    let _ = writeln!(s, "  by category: {}", by_cat.join(", "));

    let _ = writeln!(s);
    let _ = writeln!(s, "Contribution of the corporate domain to page count");
    let defined: Vec<&ContributionRow> = contribution
        .iter()
        .filter(|r| r.percentage.is_some())
        .collect();
    let under_half = defined
        .iter()
        .filter(|r| r.percentage.is_some_and(|p| p < 50.0))
        .count();
    let _ = writeln!(
        s,
        "  corporate share below 50% in {under_half} of {} organizations",
        defined.len()
    );
    let missing: usize = contribution.iter().map(|r| r.missing_domains).sum();
    if missing > 0 {
        let _ = writeln!(
            s,
            "  {missing} domain(s) without a page count were counted as 0"
        );
    }
    for r in contribution.iter().filter(|r| r.percentage.is_none()) {
        let _ = writeln!(s, "  {}: total page count is 0, share undefined", r.org_id);
    }

    let _ = writeln!(s);
    let _ = writeln!(s, "Best performing domain per indicator");
    let _ = writeln!(s, "  {}", best.tie_policy);
    for (j, ind) in best.indicators.iter().enumerate() {
        let corp = best.count(Category::Corporate, *ind);
        let _ = writeln!(
            s,
            "  {}: corporate domain best in {corp} of {} organizations",
            ind.short_name(),
            best.denominators[j]
        );
    }

    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "Mention networks (at least {} domains)",
        input.settings.min_domains
    );
    for n in &input.graph.networks {
        let w = &n.network;
        let _ = writeln!(
            s,
            "  {}: n {}, m {}, average degree {:.3}, density {:.3}",
            n.org_id, w.n, w.m, w.average_degree, w.density
        );
    }
    for (id, domains) in &input.graph.skipped {
        let _ = writeln!(s, "  {id}: Skipped ({domains} domains)");
    }
    let unreliable: usize = input
        .mentions
        .orgs
        .iter()
        .flat_map(|m| &m.edges)
        .filter(|e| !e.reliable)
        .count();
    let _ = writeln!(
        s,
        "  unreliable pair counts (collisions or missing estimates): {unreliable}"
    );
    let _ = writeln!(
        s,
        "  degree asymmetry threshold: {}",
        input.settings.asymmetry_threshold
    );

    let _ = writeln!(s);
    let c = &input.stats.correlation;
    let _ = writeln!(
        s,
        "Correlation: Spearman, pairwise-complete, two-tailed alpha {}; ** marks significance",
        c.alpha
    );
    if !c.degenerate.is_empty() {
        let _ = writeln!(
            s,
            "  constant columns (no coefficients): {}",
            c.degenerate.join(", ")
        );
    }
    match (&input.stats.pca, &input.stats.pca_error) {
        (Some(p), _) => {
            let ex: Vec<String> = p.explained.iter().map(|e| format!("{:.3}", e)).collect();
            let _ = writeln!(
                s,
                "PCA: Pearson correlation, listwise-complete ({} rows), varimax; explained {}",
                p.rows_used,
                ex.join(", ")
            );
        }
        (None, Some(e)) => {
            let _ = writeln!(s, "PCA: not computed: {e}");
        }
        (None, None) => {
            let _ = writeln!(s, "PCA: not computed");
        }
    }

    let _ = writeln!(s);
    match input.discover {
        Some(d) => {
            let n: usize = d.reports.iter().map(|r| r.candidates.len()).sum();
            let diag: usize = d.reports.iter().map(|r| r.diagnostics.len()).sum();
            let _ = writeln!(
                s,
                "Discovery: {n} candidate domain(s) awaiting review, {diag} crawl diagnostic(s)"
            );
        }
        None => {
            let _ = writeln!(s, "Discovery: not run");
        }
    }
    s
}
