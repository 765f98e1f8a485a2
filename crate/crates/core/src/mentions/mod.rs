//! URL-mention query plans, collision correction and the mention graph.

mod collision;
mod edge;
mod export;
mod graph;
mod plan;

pub use collision::{colliding_siblings, detect_collision, is_label_prefix, Collision};
pub use edge::{corrected_mention_count, measure_plan, MentionEdge};
pub use export::{
    edges_from_csv, edges_to_csv, export_graph, from_gexf, from_net, import_graph, to_gexf, to_net,
    FormatError, GraphFormat, EDGE_CSV_HEADER,
};
pub use graph::{build_domain_graph, Arc, DomainGraph, GraphError};
pub use plan::{build_query_plan, PlanOutcome, QueryPlan, DEFAULT_MIN_DOMAINS};
