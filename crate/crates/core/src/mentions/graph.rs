use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::collision::Collision;
use super::edge::MentionEdge;
use crate::domain::{Category, Host};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {from} -> {to} appears twice")]
    DuplicateEdge { from: String, to: String },
    #[error("host {0} is not a node of the graph")]
    UnknownHost(String),
    #[error("self loop on {0}")]
    SelfLoop(String),
    #[error("node {0} listed twice")]
    DuplicateNode(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub source: usize,
    pub target: usize,
    pub weight: u64,
    pub reliable: bool,
    pub collision: Collision,
}

/// Directed mention network. A mention of `target` inside `source` is the
/// arc `source -> target`: the source acts as hub, the target as authority.
///
/// Nodes are kept in lexicographic host order and arcs in (source, target)
/// index order, so numbering is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainGraph {
    nodes: Vec<Host>,
    categories: Vec<Option<Category>>,
    arcs: Vec<Arc>,
}

impl DomainGraph {
    /// Builds a graph from explicit arcs given by host pairs.
    pub fn new(
        nodes: impl IntoIterator<Item = (Host, Option<Category>)>,
        arcs: impl IntoIterator<Item = (Host, Host, u64, bool, Collision)>,
    ) -> Result<Self, GraphError> {
        let mut nodes: Vec<(Host, Option<Category>)> = nodes.into_iter().collect();
        nodes.sort_by(|a, b| a.0.cmp(&b.0));
        for w in nodes.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(GraphError::DuplicateNode(w[0].0.to_string()));
            }
        }
        let index: HashMap<&Host, usize> =
            nodes.iter().enumerate().map(|(i, (h, _))| (h, i)).collect();
        let idx = |h: &Host| {
            index
                .get(h)
                .copied()
                .ok_or_else(|| GraphError::UnknownHost(h.to_string()))
        };
        let mut out = Vec::new();
        for (s, t, weight, reliable, collision) in arcs {
            if s == t {
                return Err(GraphError::SelfLoop(s.to_string()));
            }
            out.push(Arc {
                source: idx(&s)?,
                target: idx(&t)?,
                weight,
                reliable,
                collision,
            });
        }
        out.sort_by_key(|a| (a.source, a.target));
        for w in out.windows(2) {
            if (w[0].source, w[0].target) == (w[1].source, w[1].target) {
                return Err(GraphError::DuplicateEdge {
                    from: nodes[w[0].source].0.to_string(),
                    to: nodes[w[0].target].0.to_string(),
                });
            }
        }
        let (nodes, categories) = nodes.into_iter().unzip();
        Ok(DomainGraph {
            nodes,
            categories,
            arcs: out,
        })
    }

    pub fn nodes(&self) -> &[Host] {
        &self.nodes
    }

    pub fn categories(&self) -> &[Option<Category>] {
        &self.categories
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn index_of(&self, host: &Host) -> Option<usize> {
        self.nodes.binary_search(host).ok()
    }

    /// Out-neighbour lists, each sorted.
    pub fn out_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for a in &self.arcs {
            adj[a.source].push(a.target);
        }
        adj
    }

    /// In-neighbour lists, each sorted.
    pub fn in_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for a in &self.arcs {
            adj[a.target].push(a.source);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }
}

/// Turns one organization's measured edges into its network. Every plan
/// host becomes a node, isolated or not; an arc exists for each edge with a
/// positive corrected count.
pub fn build_domain_graph(
    hosts: impl IntoIterator<Item = (Host, Option<Category>)>,
    edges: &[MentionEdge],
) -> Result<DomainGraph, GraphError> {
    let mut seen = std::collections::HashSet::new();
    for e in edges {
        if !seen.insert((&e.source, &e.target)) {
            return Err(GraphError::DuplicateEdge {
                from: e.source.to_string(),
                to: e.target.to_string(),
            });
        }
    }
    let g = DomainGraph::new(
        hosts,
        edges.iter().filter(|e| e.corrected_hce > 0).map(|e| {
            (
                e.source.clone(),
                e.target.clone(),
                e.corrected_hce,
                e.reliable,
                e.collision,
            )
        }),
    )?;
    // Zero-count edges never become arcs, but their endpoints must still
    // belong to the plan.
    for e in edges {
        for h in [&e.source, &e.target] {
            if g.index_of(h).is_none() {
                return Err(GraphError::UnknownHost(h.to_string()));
            }
        }
    }
    Ok(g)
}
