//! Acceptance runner: one pass/fail line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use chrono::TimeZone;
use domainscope::backends::{
    read_records, Cache, CacheRecord, FixtureBackend, HitCountQuery, ImpactSnapshot, ImpactValues,
    RecordKind,
};
use domainscope::clock::VirtualClock;
use domainscope::domain::{Category, Host, OrganizationRecord, Registry, WebDomainRecord};
use domainscope::mentions::{
    build_query_plan, corrected_mention_count, from_gexf, from_net, to_gexf, to_net, Collision,
    DomainGraph, PlanOutcome,
};
use domainscope::metrics::{network_metrics, node_metrics};
use domainscope::report::contribution_table;
use domainscope::stats::{pca_from_correlation, pca_varimax, spearman_pair, IndicatorMatrix};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn h(s: &str) -> Host {
    Host::parse(s).unwrap()
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Graph on `n` nodes whose first `m` ordered pairs are arcs.
fn graph_with_arcs(n: usize, m: usize) -> DomainGraph {
    let names: Vec<Host> = (0..n).map(|i| h(&format!("v{i:03}.com"))).collect();
    let arcs = (0..n)
        .flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)))
        .take(m)
        .map(|(s, t)| (names[s].clone(), names[t].clone(), 1, true, Collision::None))
        .collect::<Vec<_>>();
    DomainGraph::new(names.into_iter().map(|x| (x, None)), arcs).unwrap()
}

fn density_identity() -> Outcome {
    // (company, printed average degree, n, printed density)
    let rows = [
        ("Telefonica", 16.743, 70usize, 0.243),
        ("Banco Sabadell", 9.278, 36, 0.265),
    ];
    let mut detail = Vec::new();
    for (name, avg, n, printed) in rows {
        let m = (avg * n as f64).round() as usize;
        let net = network_metrics(&graph_with_arcs(n, m));
        ensure(
            net.m == m,
            format!("{name}: built {} arcs, wanted {m}", net.m),
        )?;
        ensure(
            (net.average_degree - avg).abs() <= 0.0005,
            format!("{name}: average degree {:.4}", net.average_degree),
        )?;
        let expected = avg / (n as f64 - 1.0);
        ensure(
            (net.density - expected).abs() <= 0.0005 && (net.density - printed).abs() <= 0.0005,
            format!(
                "{name}: density {:.4} vs {expected:.4} / printed {printed}",
                net.density
            ),
        )?;
        detail.push(format!("{name} m={m} density={:.4}", net.density));
    }
    Ok(detail.join(", "))
}

/// Corporate page count, total page count and printed share. Four printed
/// figures carry digit-grouping typos and are given here corrected.
const CONTRIBUTION: [(&str, u64, u64, f64); 35] = [
    ("Inditex", 3_118, 5_907_672, 0.053),
    ("Mediaset", 9_930, 3_365_739, 0.295),
    ("IAG", 3_710, 1_138_645, 0.326),
    ("Santander", 60_000, 17_225_739, 0.348),
    ("Banco Sabadell", 4_337, 958_701, 0.452),
    ("Telefonica", 243_000, 46_292_475, 0.525),
    ("Ebro Foods", 2_800, 76_757, 3.648),
    ("DIA", 2_002, 35_682, 5.611),
    ("BBVA", 42_810, 596_144, 7.181),
    ("BPE", 3_620, 47_621, 7.602),
    ("Ferrovial", 25_660, 204_404, 12.554),
    ("Acciona", 4_740, 34_642, 13.683),
    ("BME", 66_600, 442_142, 15.063),
    ("FCC", 24_600, 121_667, 20.219),
    ("SACYR", 3_453, 11_859, 29.117),
    ("OHL", 5_450, 16_329, 33.376),
    ("ACS", 11_600, 34_603, 33.523),
    ("Repsol", 168_250, 423_734, 39.707),
    ("Abertis", 13_700, 29_893, 45.830),
    ("Bankia", 317_300, 674_285, 47.057),
    ("Viscofan", 2_710, 4_420, 61.312),
    ("Iberdrola", 45_060, 59_919, 75.202),
    ("Gas Natural", 88_962, 114_270, 77.852),
    ("Caixabank", 1_494_759, 1_889_036, 79.128),
    ("Grifols", 5_600, 6_797, 82.389),
    ("Mapfre", 559_000, 654_638, 85.391),
    ("Gamesa", 5_670, 6_382, 88.844),
    ("Arcelor Mittal", 44_200, 49_530, 89.239),
    ("Bankinter", 68_299, 74_801, 91.308),
    ("Indra", 37_600, 38_927, 96.591),
    ("Enagas", 33_617, 34_735, 96.781),
    ("Jazztel", 31_309, 31_581, 99.139),
    ("Amadeus", 285_000, 285_048, 99.983),
    ("REE", 6_790, 6_790, 100.000),
    ("Tecnicas Reunidas", 4_420, 4_420, 100.000),
];

fn snapshot(host: &Host, pages: u64) -> ImpactSnapshot {
    ImpactSnapshot {
        host: host.clone(),
        values: ImpactValues {
            page_count: Some(pages),
            ..ImpactValues::default()
        },
        captured_at: chrono::Utc.with_ymd_and_hms(2014, 6, 1, 0, 0, 0).unwrap(),
        backend_id: "fixture".into(),
    }
}

fn contribution_arithmetic() -> Outcome {
    let mut orgs = Vec::new();
    let mut snaps = Vec::new();
    for (i, (_, corp, total, _)) in CONTRIBUTION.iter().enumerate() {
        let c = h(&format!("corp{i:02}.com"));
        let o = h(&format!("rest{i:02}.com"));
        snaps.push(snapshot(&c, *corp));
        snaps.push(snapshot(&o, total - corp));
        orgs.push(OrganizationRecord {
            id: format!("O{i:02}"),
            name: CONTRIBUTION[i].0.into(),
            sector: String::new(),
            domains: vec![
                WebDomainRecord::new(c, Category::Corporate),
                WebDomainRecord::new(o, Category::Related),
            ],
        });
    }
    let rows = contribution_table(&orgs, &snaps).map_err(|e| e.to_string())?;
    ensure(rows.len() == 35, format!("{} rows", rows.len()))?;
    let mut worst = 0f64;
    for r in &rows {
        let i: usize = r.org_id[1..].parse().unwrap();
        let (name, _, _, printed) = CONTRIBUTION[i];
        let got = r.percentage.ok_or(format!("{name}: undefined share"))?;
        worst = worst.max((got - printed).abs());
        ensure(
            (got - printed).abs() <= 0.001,
            format!("{name}: {got:.4} vs printed {printed}"),
        )?;
    }
    let order: Vec<usize> = rows
        .iter()
        .map(|r| r.org_id[1..].parse().unwrap())
        .collect();
    ensure(
        order
            .windows(2)
            .all(|w| CONTRIBUTION[w[0]].3 <= CONTRIBUTION[w[1]].3),
        "rows not in ascending order",
    )?;
    Ok(format!("35 rows, max deviation {worst:.5}"))
}

fn collision_correction() -> Outcome {
    let source = h("terra.com.br");
    let target = h("terra.com");
    let siblings = [
        ("terra.com.ar", 19),
        ("terra.com.co", 57),
        ("terra.com.ec", 6),
        ("terra.com.sv", 1),
        ("terra.com.mx", 36),
        ("terra.com.pe", 29),
        ("terra.com.ve", 12),
    ];
    let rec = |t: &Host, count: u64| CacheRecord {
        key: HitCountQuery::mention(t, &source).render(),
        kind: RecordKind::Hce,
        value: serde_json::json!({ "count": count, "rounded": false }),
        captured_at: chrono::Utc.with_ymd_and_hms(2014, 6, 1, 0, 0, 0).unwrap(),
        backend_id: "fixture".into(),
    };
    let mut records = vec![rec(&target, 11_800_000)];
    records.extend(siblings.iter().map(|(s, c)| rec(&h(s), *c)));
    let backend = FixtureBackend::from_records(records);
    let mut hosts: Vec<Host> = siblings.iter().map(|(s, _)| h(s)).collect();
    hosts.extend([source.clone(), target.clone()]);
    let e = corrected_mention_count(
        &target,
        &source,
        &hosts,
        &backend,
        &Cache::in_memory(),
        &VirtualClock::fixture_epoch(),
    )
    .map_err(|e| e.to_string())?;
    ensure(
        e.sibling_overcount == 160,
        format!("overcount {}", e.sibling_overcount),
    )?;
    ensure(
        e.collision == Collision::SelfPrefix,
        format!("collision {}", e.collision),
    )?;
    ensure(!e.reliable, "edge marked reliable")?;
    ensure(
        e.corrected_hce == 11_800_000 - 160,
        format!("corrected {}", e.corrected_hce),
    )?;
    Ok(format!(
        "overcount {} {} reliable={}",
        e.sibling_overcount, e.collision, e.reliable
    ))
}

fn graph_metric_oracles() -> Outcome {
    let mut rng = common::rng(0x5eed_0001);
    let close = |a: Option<f64>, b: Option<f64>, tol: f64| match (a, b) {
        (Some(x), Some(y)) => (x - y).abs() <= tol,
        (None, None) => true,
        _ => false,
    };
    let mut nodes = 0;
    for g_i in 0..200 {
        let n = rng.random_range(1..=8);
        let p = rng.random_range(0.05..0.8);
        let g = common::random_graph(&mut rng, n, p);
        let a = common::adjacency_matrix(&g);
        let (bet, clo, eig, clu) = (
            common::betweenness(&a),
            common::closeness(&a),
            common::eigenvector(&a),
            common::clustering(&a),
        );
        for (v, m) in node_metrics(&g).iter().enumerate() {
            let ctx = |what: &str| format!("graph {g_i} node {v}: {what}");
            ensure(
                m.in_degree == (0..n).filter(|&u| a[u][v]).count(),
                ctx("in-degree"),
            )?;
            ensure(
                m.out_degree == (0..n).filter(|&u| a[v][u]).count(),
                ctx("out-degree"),
            )?;
            ensure((m.betweenness - bet[v]).abs() <= 1e-9, ctx("betweenness"))?;
            ensure(close(m.closeness, clo[v], 1e-12), ctx("closeness"))?;
            ensure(
                close(m.eigenvector, eig.as_ref().map(|e| e[v]), 1e-6),
                ctx("eigenvector"),
            )?;
            ensure(close(m.clustering, clu[v], 1e-12), ctx("clustering"))?;
            nodes += 1;
        }
    }
    Ok(format!("200 graphs, {nodes} nodes, eigenvector tol 1e-6"))
}

fn spearman_oracle() -> Outcome {
    let mut rng = common::rng(0x5eed_0002);
    let mut worst = 0f64;
    for s in 0..100 {
        let levels = rng.random_range(4..15);
        let x: Vec<f64> = (0..30)
            .map(|_| f64::from(rng.random_range(0..levels)))
            .collect();
        let y: Vec<f64> = x
            .iter()
            .map(|v| v + f64::from(rng.random_range(-6..6)) / 2.0)
            .collect();
        let rho = spearman_pair(&x, &y)
            .ok_or(format!("sample {s}: undefined"))?
            .rho;
        let oracle = common::rank_pearson(&x, &y);
        worst = worst.max((rho - oracle).abs());
        ensure(
            (rho - oracle).abs() <= 1e-12,
            format!("sample {s}: {rho} vs {oracle}"),
        )?;
    }
    let x: Vec<f64> = (0..30).map(|i| f64::from(i) * 1.5).collect();
    let up: Vec<f64> = x.iter().map(|v| v.exp()).collect();
    let down: Vec<f64> = x.iter().map(|v| 100.0 - v * v).collect();
    ensure(
        spearman_pair(&x, &up).unwrap().rho == 1.0,
        "increasing map not exactly 1",
    )?;
    ensure(
        spearman_pair(&x, &down).unwrap().rho == -1.0,
        "decreasing map not exactly -1",
    )?;
    Ok(format!(
        "100 samples n=30 with ties, max deviation {worst:.1e}; monotone +-1 exact"
    ))
}

fn criterion_oracle(l: &[Vec<f64>]) -> f64 {
    let p = l.len() as f64;
    (0..l[0].len())
        .map(|j| {
            let s2: f64 = l.iter().map(|r| r[j].powi(2)).sum::<f64>() / p;
            let s4: f64 = l.iter().map(|r| r[j].powi(4)).sum::<f64>() / p;
            s4 - s2 * s2
        })
        .sum()
}

fn pca_varimax_checks() -> Outcome {
    let names: Vec<String> = (0..5).map(|i| format!("c{i}")).collect();
    let identity: Vec<Vec<f64>> = (0..5)
        .map(|i| (0..5).map(|j| f64::from(u8::from(i == j))).collect())
        .collect();
    let id = pca_from_correlation(&names, &identity, 5).map_err(|e| e.to_string())?;
    for i in 0..5 {
        for j in 0..5 {
            ensure(
                (id.loadings[i][j].abs() - identity[i][j]).abs() <= 1e-12,
                format!("identity loadings permuted at ({i},{j})"),
            )?;
        }
    }

    let mut rng = common::rng(0x5eed_0003);
    let mut worst_rec = 0f64;
    let mut worst_grid = 0f64;
    let mut worst_orth = 0f64;
    for trial in 0..10 {
        let mut cols: Vec<Vec<f64>> = (0..5)
            .map(|_| (0..20).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        for r in 0..20 {
            cols[1][r] += cols[0][r];
            cols[3][r] -= 0.7 * cols[2][r];
        }
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let m = IndicatorMatrix::from_columns(&refs, &cols).map_err(|e| e.to_string())?;

        let full = pca_varimax(&m, 5).map_err(|e| e.to_string())?;
        let na = nalgebra::DMatrix::from_fn(5, 5, |i, j| full.correlation[i][j]);
        let mut reference: Vec<f64> = na.symmetric_eigen().eigenvalues.iter().copied().collect();
        reference.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in full.eigenvalues.iter().zip(&reference) {
            ensure(
                (a - b).abs() <= 1e-9,
                format!("trial {trial}: eigenvalue {a} vs {b}"),
            )?;
        }
        for i in 0..5 {
            for j in 0..5 {
                let r: f64 = (0..5)
                    .map(|k| full.loadings[i][k] * full.loadings[j][k])
                    .sum();
                worst_rec = worst_rec.max((r - full.correlation[i][j]).abs());
            }
        }
        ensure(
            worst_rec <= 1e-8,
            format!("trial {trial}: reconstruction error {worst_rec:.2e}"),
        )?;

        let two = pca_varimax(&m, 2).map_err(|e| e.to_string())?;
        let grid = common::grid_varimax_2(&two.loadings, criterion_oracle);
        let got = criterion_oracle(&two.rotated);
        worst_grid = worst_grid.max((grid - got).abs());
        ensure(
            (grid - got).abs() <= 1e-4,
            format!("trial {trial}: criterion {got} vs grid {grid}"),
        )?;
        for r in [&two.rotation, &full.rotation] {
            let k = r.len();
            for i in 0..k {
                for j in 0..k {
                    let dot: f64 = (0..k).map(|x| r[x][i] * r[x][j]).sum();
                    worst_orth = worst_orth.max((dot - f64::from(u8::from(i == j))).abs());
                }
            }
        }
        ensure(
            worst_orth <= 1e-9,
            format!("trial {trial}: R^T R deviates by {worst_orth:.2e}"),
        )?;
    }
    Ok(format!(
        "identity ok; reconstruction {worst_rec:.1e}, grid gap {worst_grid:.1e}, orthogonality {worst_orth:.1e}"
    ))
}

/// Domain totals per organization in the sample of 35.
const DOMAIN_TOTALS: [usize; 35] = [
    98, 70, 41, 40, 39, 37, 37, 36, 35, 30, 28, 27, 27, 25, 24, 24, 23, 19, 19, 17, 16, 16, 12, 11,
    11, 10, 8, 8, 6, 6, 6, 5, 4, 2, 1,
];

fn org_with(n: usize) -> OrganizationRecord {
    OrganizationRecord {
        id: format!("N{n}"),
        name: String::new(),
        sector: String::new(),
        domains: (0..n)
            .map(|i| {
                let c = if i == 0 {
                    Category::Corporate
                } else {
                    Category::Related
                };
                WebDomainRecord::new(h(&format!("q{n}x{i}.com")), c)
            })
            .collect(),
    }
}

fn query_plan_count() -> Outcome {
    for n in 1..=40 {
        match build_query_plan(&org_with(n), 10) {
            PlanOutcome::Planned(p) if n >= 10 => ensure(
                p.pairs.len() == n * (n - 1) && p.total_queries == n * (n - 1),
                format!("n={n}: {}", p.pairs.len()),
            )?,
            PlanOutcome::Skipped { domains, .. } if n < 10 => {
                ensure(domains == n, format!("n={n}: skipped with {domains}"))?
            }
            other => return Err(format!("n={n}: unexpected {:?}", other.is_skipped())),
        }
    }
    let mut eligible = 0;
    let mut queries = 0;
    for &n in &DOMAIN_TOTALS {
        if let PlanOutcome::Planned(p) = build_query_plan(&org_with(n), 10) {
            eligible += 1;
            queries += p.total_queries;
        }
    }
    ensure(eligible == 26, format!("{eligible} eligible organizations"))?;
    ensure(queries == 31_250, format!("{queries} queries"))?;
    Ok(format!(
        "n(n-1) for n=10..40, Skipped below 10; sample: {eligible} eligible, {queries} queries"
    ))
}

fn format_round_trips() -> Outcome {
    let mut rng = common::rng(0x5eed_0004);
    for i in 0..50 {
        let n = rng.random_range(1..=12);
        let p = rng.random_range(0.0..0.6);
        let g = common::random_graph(&mut rng, n, p);
        let net = to_net(&g);
        let net2 = to_net(&from_net(&net).map_err(|e| format!("graph {i}: {e}"))?);
        ensure(
            net == net2,
            format!("graph {i}: NET differs after round trip"),
        )?;
        let gexf = to_gexf(&g);
        let back = from_gexf(&gexf).map_err(|e| format!("graph {i}: {e}"))?;
        ensure(
            gexf == to_gexf(&back),
            format!("graph {i}: GEXF differs after round trip"),
        )?;
        ensure(
            back == g,
            format!("graph {i}: GEXF import lost information"),
        )?;
    }
    let reg =
        Registry::load(&manifest_dir().join("fixtures/ibex.toml")).map_err(|e| e.to_string())?;
    ensure(
        Registry::from_json_str(&reg.to_json()).map_err(|e| e.to_string())? == reg,
        "registry JSON",
    )?;
    ensure(
        Registry::from_toml_str(&reg.to_toml()).map_err(|e| e.to_string())? == reg,
        "registry TOML",
    )?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("cache.jsonl");
    let mut records = Vec::new();
    for f in ["impact.jsonl", "mentions.jsonl"] {
        records.extend(
            read_records(&manifest_dir().join("fixtures/backend").join(f))
                .map_err(|e| e.to_string())?,
        );
    }
    {
        let cache = Cache::open(&path).map_err(|e| e.to_string())?;
        for r in &records {
            cache.put(r.clone()).map_err(|e| e.to_string())?;
        }
    }
    let reopened = Cache::open(&path).map_err(|e| e.to_string())?;
    let mut want: BTreeMap<_, _> = BTreeMap::new();
    for r in &records {
        want.insert(r.cache_key(), r.clone());
    }
    ensure(
        reopened.records() == want.into_values().collect::<Vec<_>>(),
        "cache contents differ after reopen",
    )?;
    Ok(format!(
        "50 graphs NET+GEXF byte-identical; registry; cache of {} records",
        records.len()
    ))
}

fn read_tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for e in fs::read_dir(&dir).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.insert(
                    p.strip_prefix(root).unwrap().to_path_buf(),
                    fs::read(&p).unwrap(),
                );
            }
        }
    }
    out
}

fn end_to_end_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("out");
    let registry = manifest_dir().join("fixtures/ibex.toml");
    let argv = [
        "domainscope",
        "pipeline",
        "--registry",
        registry.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ];
    let mut trees = Vec::new();
    let mut calls = Vec::new();
    for run in 1..=2 {
        let code = domainscope::cli::run(argv);
        ensure(code == 0, format!("run {run} exited {code}"))?;
        let manifest: serde_json::Value = serde_json::from_str(
            &fs::read_to_string(out.join("manifest.json")).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        calls.push(manifest["backend_calls"].as_u64().unwrap_or(u64::MAX));
        trees.push(read_tree(&out.join("report")));
    }
    ensure(!trees[0].is_empty(), "no report files")?;
    ensure(trees[0] == trees[1], "report directories differ")?;
    ensure(
        calls[0] > 0 && calls[1] == 0,
        format!("backend calls {calls:?}"),
    )?;
    Ok(format!(
        "{} report files identical; backend calls {} then {}",
        trees[0].len(),
        calls[0],
        calls[1]
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "density identity (+-0.0005)",
            density_identity,
            Duration::from_secs(1),
        ),
        (
            "contribution arithmetic (+-0.001)",
            contribution_arithmetic,
            Duration::from_secs(1),
        ),
        (
            "collision correction (exact 160)",
            collision_correction,
            Duration::from_secs(1),
        ),
        (
            "graph-metric oracle equivalence",
            graph_metric_oracles,
            Duration::from_secs(30),
        ),
        (
            "spearman oracle (1e-12)",
            spearman_oracle,
            Duration::from_secs(30),
        ),
        (
            "pca / varimax (1e-8, 1e-4, 1e-9)",
            pca_varimax_checks,
            Duration::from_secs(60),
        ),
        ("query-plan count", query_plan_count, Duration::from_secs(5)),
        (
            "file-format round-trips",
            format_round_trips,
            Duration::from_secs(30),
        ),
        (
            "end-to-end determinism",
            end_to_end_determinism,
            Duration::from_secs(60),
        ),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > limit => Err(format!("{d}; took {took:?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail} ({} ms)", took.as_millis()),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why} ({} ms)", took.as_millis());
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
