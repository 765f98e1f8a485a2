//! Node- and network-level indicators of a mention graph.
//!
//! All structural metrics run on the unweighted arc set; weights only feed
//! [`intensity_totals`].

mod centrality;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use centrality::{betweenness, closeness, clustering, distances_from, eigenvector};

use crate::domain::Host;
use crate::mentions::DomainGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("host {0} is not in the graph")]
    HostNotInGraph(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeMetrics {
    pub host: Host,
    pub in_degree: usize,
    pub out_degree: usize,
    pub degree: usize,
    /// `in_degree - out_degree`: positive for authorities, negative for hubs.
    pub asymmetry: i64,
    pub betweenness: f64,
    /// Mean distance to the nodes this one reaches; lower is more central.
    /// Missing when the node reaches nothing.
    pub closeness: Option<f64>,
    /// Missing when the graph has no arcs.
    pub eigenvector: Option<f64>,
    /// Missing below two neighbours.
    pub clustering: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkMetrics {
    pub n: usize,
    pub m: usize,
    pub average_degree: f64,
    pub diameter: Option<usize>,
    pub density: f64,
    pub average_clustering: Option<f64>,
    pub average_path_length: Option<f64>,
}

pub fn node_metrics(g: &DomainGraph) -> Vec<NodeMetrics> {
    let out = g.out_adjacency();
    let inn = g.in_adjacency();
    let bet = betweenness(&out);
    let eig = eigenvector(&inn);
    let clu = clustering(&out, &inn);
    g.nodes()
        .iter()
        .enumerate()
        .map(|(v, host)| {
            let (i, o) = (inn[v].len(), out[v].len());
            NodeMetrics {
                host: host.clone(),
                in_degree: i,
                out_degree: o,
                degree: i + o,
                asymmetry: i as i64 - o as i64,
                betweenness: bet[v],
                closeness: closeness(&out, v),
                eigenvector: eig.as_ref().map(|e| e[v]),
                clustering: clu[v],
            }
        })
        .collect()
}

pub fn network_metrics(g: &DomainGraph) -> NetworkMetrics {
    let out = g.out_adjacency();
    let inn = g.in_adjacency();
    let n = g.node_count();
    let m = g.arc_count();
    let mut diameter: Option<usize> = None;
    let mut total = 0usize;
    let mut pairs = 0usize;
    for v in 0..n {
        for d in distances_from(&out, v)
            .into_iter()
            .enumerate()
            .filter_map(|(u, d)| d.filter(|_| u != v))
        {
            diameter = Some(diameter.map_or(d, |x| x.max(d)));
            total += d;
            pairs += 1;
        }
    }
    let clu: Vec<f64> = clustering(&out, &inn).into_iter().flatten().collect();
    NetworkMetrics {
        n,
        m,
        average_degree: if n == 0 { 0.0 } else { m as f64 / n as f64 },
        diameter,
        density: if n < 2 {
            0.0
        } else {
            m as f64 / (n as f64 * (n as f64 - 1.0))
        },
        average_clustering: (!clu.is_empty()).then(|| clu.iter().sum::<f64>() / clu.len() as f64),
        average_path_length: (pairs > 0).then(|| total as f64 / pairs as f64),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymmetryReport {
    pub threshold: i64,
    /// Asymmetry above the threshold, largest first.
    pub authorities: Vec<(Host, i64)>,
    /// Asymmetry below minus the threshold, largest magnitude first.
    pub hubs: Vec<(Host, i64)>,
    /// Share of all nodes whose |asymmetry| exceeds the threshold.
    pub exceedance_fraction: f64,
}

pub fn asymmetry_report(metrics: &[NodeMetrics], threshold: i64) -> AsymmetryReport {
    let t = threshold.max(0);
    let pick = |f: &dyn Fn(i64) -> bool| {
        let mut v: Vec<(Host, i64)> = metrics
            .iter()
            .filter(|m| f(m.asymmetry))
            .map(|m| (m.host.clone(), m.asymmetry))
            .collect();
        v.sort_by(|a, b| b.1.abs().cmp(&a.1.abs()).then_with(|| a.0.cmp(&b.0)));
        v
    };
    let authorities = pick(&|a| a > t);
    let hubs = pick(&|a| a < -t);
    let exceed = metrics.iter().filter(|m| m.asymmetry.abs() > t).count();
    AsymmetryReport {
        threshold: t,
        exceedance_fraction: if metrics.is_empty() {
            0.0
        } else {
            exceed as f64 / metrics.len() as f64
        },
        authorities,
        hubs,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopPair {
    pub target: Host,
    pub source: Host,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntensityTotals {
    pub host: Host,
    /// Sum of reliable arc weights into the host.
    pub as_target_total: u64,
    /// Sum of reliable arc weights out of the host.
    pub as_source_total: u64,
    /// Heaviest reliable arc of the whole graph; ties go to the smallest
    /// (source, target).
    pub top_pair: Option<TopPair>,
}

pub fn intensity_totals(g: &DomainGraph, focus: &Host) -> Result<IntensityTotals, MetricsError> {
    let f = g
        .index_of(focus)
        .ok_or_else(|| MetricsError::HostNotInGraph(focus.to_string()))?;
    let reliable = || g.arcs().iter().filter(|a| a.reliable);
    let nodes = g.nodes();
    let top = reliable().fold(None, |best: Option<&crate::mentions::Arc>, a| match best {
        Some(b) if b.weight > a.weight => Some(b),
        Some(b)
            if b.weight == a.weight
                && (&nodes[b.source], &nodes[b.target]) <= (&nodes[a.source], &nodes[a.target]) =>
        {
            Some(b)
        }
        _ => Some(a),
    });
    Ok(IntensityTotals {
        host: focus.clone(),
        as_target_total: reliable().filter(|a| a.target == f).map(|a| a.weight).sum(),
        as_source_total: reliable().filter(|a| a.source == f).map(|a| a.weight).sum(),
        top_pair: top.map(|a| TopPair {
            target: nodes[a.target].clone(),
            source: nodes[a.source].clone(),
            count: a.weight,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mentions::Collision;

    fn h(s: &str) -> Host {
        Host::parse(s).unwrap()
    }

    fn graph(n: usize, arcs: &[(usize, usize)]) -> DomainGraph {
        let name = |i: usize| h(&format!("n{i}.com"));
        DomainGraph::new(
            (0..n).map(|i| (name(i), None)),
            arcs.iter()
                .map(|&(s, t)| (name(s), name(t), 1, true, Collision::None)),
        )
        .unwrap()
    }

    #[test]
    fn path() {
        let nm = node_metrics(&graph(3, &[(0, 1), (1, 2)]));
        assert_eq!(nm[1].betweenness, 1.0);
        assert_eq!(nm[0].betweenness, 0.0);
        assert_eq!(nm[2].in_degree, 1);
        assert_eq!(nm[0].out_degree, 1);
        assert_eq!(nm[2].closeness, None);
        assert_eq!(nm[0].closeness, Some(1.5));
    }

    #[test]
    fn cycle() {
        let nm = node_metrics(&graph(3, &[(0, 1), (1, 2), (2, 0)]));
        for m in &nm {
            assert_eq!(m.eigenvector, Some(1.0));
            assert_eq!(m.closeness, Some(1.5));
        }
    }

    #[test]
    fn full_triangle() {
        let g = graph(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]);
        for m in node_metrics(&g) {
            assert_eq!(m.clustering, Some(1.0));
        }
    }

    #[test]
    fn complete_four() {
        let arcs: Vec<_> = (0..4)
            .flat_map(|s| (0..4).filter(move |&t| t != s).map(move |t| (s, t)))
            .collect();
        let nw = network_metrics(&graph(4, &arcs));
        assert_eq!(nw.density, 1.0);
        assert_eq!(nw.diameter, Some(1));
        assert_eq!(nw.average_path_length, Some(1.0));
    }

    #[test]
    fn single_node() {
        let nw = network_metrics(&graph(1, &[]));
        assert_eq!((nw.density, nw.diameter), (0.0, None));
        assert_eq!(node_metrics(&graph(1, &[]))[0].eigenvector, None);
    }

    #[test]
    fn asymmetry_partition() {
        let mut nm = node_metrics(&graph(2, &[]));
        nm[0].asymmetry = 14;
        nm[1].asymmetry = -3;
        let r = asymmetry_report(&nm, 10);
        assert_eq!(r.authorities, [(h("n0.com"), 14)]);
        assert!(r.hubs.is_empty());
        assert_eq!(r.exceedance_fraction, 0.5);
        let z = asymmetry_report(&node_metrics(&graph(3, &[])), 10);
        assert!(z.authorities.is_empty() && z.hubs.is_empty());
        assert_eq!(z.exceedance_fraction, 0.0);
    }

    #[test]
    fn intensity() {
        let name = |i: usize| h(&format!("n{i}.com"));
        let g = DomainGraph::new(
            (0..4).map(|i| (name(i), None)),
            [
                (name(1), name(0), 3, true, Collision::None),
                (name(2), name(0), 4, true, Collision::None),
                (name(3), name(0), 50, false, Collision::SelfPrefix),
                (name(2), name(3), 4, true, Collision::None),
            ],
        )
        .unwrap();
        let t = intensity_totals(&g, &name(0)).unwrap();
        assert_eq!((t.as_target_total, t.as_source_total), (7, 0));
        let top = t.top_pair.unwrap();
        assert_eq!((top.source, top.target, top.count), (name(2), name(0), 4));
        let other = intensity_totals(&graph(3, &[(0, 1)]), &name(2)).unwrap();
        assert_eq!((other.as_target_total, other.as_source_total), (0, 0));
        assert!(intensity_totals(&g, &h("zz.com")).is_err());
    }
}
