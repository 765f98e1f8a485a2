//! Pajek NET, GEXF 1.2 and edge-list CSV readers and writers.
//!
//! NET carries the arc structure and weights only; GEXF also carries the node
//! category and the per-arc reliability and collision class.

use std::collections::HashMap;
use std::fmt::Write as _;

use quick_xml::escape::escape;
use quick_xml::events::{BytesStart, Event};
use quick_xml::{Reader, XmlVersion};
use thiserror::Error;

use super::collision::Collision;
use super::edge::MentionEdge;
use super::graph::{DomainGraph, GraphError};
use crate::domain::{Category, Host};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Net { line: usize, reason: String },
    #[error("GEXF: {0}")]
    Gexf(String),
    #[error("CSV: {0}")]
    Csv(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Net,
    Gexf,
}

pub fn export_graph(g: &DomainGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Net => to_net(g),
        GraphFormat::Gexf => to_gexf(g),
    }
}

pub fn import_graph(text: &str, format: GraphFormat) -> Result<DomainGraph, FormatError> {
    match format {
        GraphFormat::Net => from_net(text),
        GraphFormat::Gexf => from_gexf(text),
    }
}

pub fn to_net(g: &DomainGraph) -> String {
    let mut out = format!("*Vertices {}\n", g.node_count());
    for (i, h) in g.nodes().iter().enumerate() {
        let _ = writeln!(out, "{} \"{}\"", i + 1, h);
    }
    out.push_str("*Arcs\n");
    for a in g.arcs() {
        let _ = writeln!(out, "{} {} {}", a.source + 1, a.target + 1, a.weight);
    }
    out
}

/// Reads the NET subset written by [`to_net`]. Arcs without a weight get 1;
/// imported arcs are marked reliable with no collision.
pub fn from_net(text: &str) -> Result<DomainGraph, FormatError> {
    let err = |line: usize, reason: String| FormatError::Net { line, reason };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (ln, header) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
    let n: usize = header
        .strip_prefix("*Vertices")
        .or_else(|| header.strip_prefix("*vertices"))
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| err(ln, format!("expected `*Vertices n`, found {header:?}")))?;
    let mut hosts = Vec::with_capacity(n);
    for k in 1..=n {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| err(ln, format!("missing vertex {k}")))?;
        let (id, rest) = l
            .split_once(char::is_whitespace)
            .ok_or_else(|| err(ln, "bad vertex line".into()))?;
        if id.parse::<usize>().ok() != Some(k) {
            return Err(err(ln, format!("expected vertex id {k}, found {id}")));
        }
        let label = rest.trim().trim_matches('"');
        hosts.push(Host::parse(label).map_err(|e| err(ln, e.to_string()))?);
    }
    if n > 0 || text.contains("*Arcs") || text.contains("*arcs") {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| err(ln, "missing *Arcs".into()))?;
        if !l.eq_ignore_ascii_case("*arcs") {
            return Err(err(ln, format!("expected *Arcs, found {l:?}")));
        }
    }
    let mut arcs = Vec::new();
    for (ln, l) in lines {
        let f: Vec<&str> = l.split_whitespace().collect();
        if !(2..=3).contains(&f.len()) {
            return Err(err(ln, format!("bad arc line {l:?}")));
        }
        let node = |s: &str| {
            s.parse::<usize>()
                .ok()
                .filter(|i| (1..=n).contains(i))
                .map(|i| hosts[i - 1].clone())
                .ok_or_else(|| err(ln, format!("bad vertex reference {s}")))
        };
        let weight = match f.get(2) {
            Some(w) => w
                .parse::<u64>()
                .map_err(|_| err(ln, format!("bad weight {w}")))?,
            None => 1,
        };
        arcs.push((node(f[0])?, node(f[1])?, weight, true, Collision::None));
    }
    Ok(DomainGraph::new(
        hosts.into_iter().map(|h| (h, None)),
        arcs,
    )?)
}

const GEXF_NS: &str = "http://www.gexf.net/1.2draft";

pub fn to_gexf(g: &DomainGraph) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(out, "<gexf xmlns=\"{GEXF_NS}\" version=\"1.2\">");
    out.push_str("  <meta>\n    <creator>domainscope</creator>\n  </meta>\n");
    out.push_str("  <graph mode=\"static\" defaultedgetype=\"directed\">\n");
    out.push_str("    <attributes class=\"node\">\n");
    out.push_str("      <attribute id=\"0\" title=\"category\" type=\"string\"/>\n");
    out.push_str("    </attributes>\n");
    out.push_str("    <attributes class=\"edge\">\n");
    out.push_str("      <attribute id=\"0\" title=\"reliable\" type=\"boolean\"/>\n");
    out.push_str("      <attribute id=\"1\" title=\"collision\" type=\"string\"/>\n");
    out.push_str("    </attributes>\n");
    out.push_str("    <nodes>\n");
    for (i, (h, c)) in g.nodes().iter().zip(g.categories()).enumerate() {
        let label = escape(h.as_str());
        match c {
            Some(c) => {
                let _ = writeln!(out, "      <node id=\"{i}\" label=\"{label}\">");
                let _ = writeln!(out, "        <attvalues>\n          <attvalue for=\"0\" value=\"{c}\"/>\n        </attvalues>");
                out.push_str("      </node>\n");
            }
            None => {
                let _ = writeln!(out, "      <node id=\"{i}\" label=\"{label}\"/>");
            }
        }
    }
    out.push_str("    </nodes>\n    <edges>\n");
    for (i, a) in g.arcs().iter().enumerate() {
        let _ = writeln!(
            out,
            "      <edge id=\"{i}\" source=\"{}\" target=\"{}\" weight=\"{}\">",
            a.source, a.target, a.weight
        );
        let _ = writeln!(
            out,
            "        <attvalues>\n          <attvalue for=\"0\" value=\"{}\"/>\n          <attvalue for=\"1\" value=\"{}\"/>\n        </attvalues>",
            a.reliable, a.collision
        );
        out.push_str("      </edge>\n");
    }
    out.push_str("    </edges>\n  </graph>\n</gexf>\n");
    out
}

#[derive(PartialEq)]
enum Scope {
    None,
    Node,
    Edge,
}

fn attrs(e: &BytesStart) -> Result<HashMap<String, String>, FormatError> {
    let mut m = HashMap::new();
    for a in e.attributes() {
        let a = a.map_err(|e| FormatError::Gexf(e.to_string()))?;
        let key = a.key.as_ref().to_owned();
        let value = a
            .normalized_value(XmlVersion::Implicit1_0)
            .map_err(|e| FormatError::Gexf(e.to_string()))?;
        m.insert(key, value.into_owned());
    }
    Ok(m)
}

struct PendingEdge {
    source: String,
    target: String,
    weight: u64,
    reliable: bool,
    collision: Collision,
}

/// Reads GEXF as written by [`to_gexf`]: node ids, labels, the category
/// attribute, and edge weights with the reliable and collision attributes.
pub fn from_gexf(text: &str) -> Result<DomainGraph, FormatError> {
    let gx = |s: String| FormatError::Gexf(s);
    let mut reader = Reader::from_str(text);
    reader.config_mut().trim_text(true);
    let mut node_attr: HashMap<String, String> = HashMap::new();
    let mut edge_attr: HashMap<String, String> = HashMap::new();
    let mut attr_class = String::new();
    let mut scope = Scope::None;
    let mut nodes: Vec<(String, Host, Option<Category>)> = Vec::new();
    let mut edges: Vec<PendingEdge> = Vec::new();
    loop {
        let ev = reader.read_event().map_err(|e| gx(e.to_string()))?;
        let (e, empty) = match &ev {
            Event::Start(e) => (e, false),
            Event::Empty(e) => (e, true),
            Event::End(e) => {
                match e.name().as_ref() {
                    "node" | "edge" => scope = Scope::None,
                    _ => {}
                }
                continue;
            }
            Event::Eof => break,
            _ => continue,
        };
        let a = attrs(e)?;
        let get = |k: &str| {
            a.get(k)
                .cloned()
                .ok_or_else(|| gx(format!("missing attribute {k}")))
        };
        match e.name().as_ref() {
            "attributes" => attr_class = a.get("class").cloned().unwrap_or_default(),
            "attribute" => {
                let (id, title) = (get("id")?, get("title")?);
                if attr_class == "edge" {
                    edge_attr.insert(id, title);
                } else {
                    node_attr.insert(id, title);
                }
            }
            "node" => {
                let label = a.get("label").cloned().unwrap_or(get("id")?);
                let host = Host::parse(&label).map_err(|e| gx(e.to_string()))?;
                nodes.push((get("id")?, host, None));
                if !empty {
                    scope = Scope::Node;
                }
            }
            "edge" => {
                let weight = match a.get("weight") {
                    None => 1,
                    Some(w) => w
                        .parse::<u64>()
                        .or_else(|_| w.parse::<f64>().map(|f| f.round() as u64))
                        .map_err(|_| gx(format!("bad weight {w}")))?,
                };
                edges.push(PendingEdge {
                    source: get("source")?,
                    target: get("target")?,
                    weight,
                    reliable: true,
                    collision: Collision::None,
                });
                if !empty {
                    scope = Scope::Edge;
                }
            }
            "attvalue" => {
                let (key, value) = (get("for")?, get("value")?);
                match scope {
                    Scope::Node => {
                        if node_attr.get(&key).map(String::as_str) == Some("category") {
                            let c = value.parse::<Category>().map_err(|e| gx(e.to_string()))?;
                            nodes.last_mut().expect("inside a node").2 = Some(c);
                        }
                    }
                    Scope::Edge => {
                        let edge = edges.last_mut().expect("inside an edge");
                        match edge_attr.get(&key).map(String::as_str) {
                            Some("reliable") => {
                                edge.reliable = value
                                    .parse()
                                    .map_err(|_| gx(format!("bad boolean {value}")))?
                            }
                            Some("collision") => edge.collision = value.parse().map_err(gx)?,
                            _ => {}
                        }
                    }
                    Scope::None => {}
                }
            }
            _ => {}
        }
    }
    let by_id: HashMap<&str, &Host> = nodes.iter().map(|(id, h, _)| (id.as_str(), h)).collect();
    let lookup = |id: &str| {
        by_id
            .get(id)
            .map(|h| (*h).clone())
            .ok_or_else(|| gx(format!("edge refers to unknown node {id}")))
    };
    let mut arcs = Vec::with_capacity(edges.len());
    for e in &edges {
        arcs.push((
            lookup(&e.source)?,
            lookup(&e.target)?,
            e.weight,
            e.reliable,
            e.collision,
        ));
    }
    let nodes = nodes.iter().map(|(_, h, c)| (h.clone(), *c));
    Ok(DomainGraph::new(nodes, arcs)?)
}

pub const EDGE_CSV_HEADER: [&str; 7] = [
    "source",
    "target",
    "raw_hce",
    "sibling_overcount",
    "corrected_hce",
    "collision",
    "reliable",
];

pub fn edges_to_csv(edges: &[MentionEdge]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(EDGE_CSV_HEADER).expect("in-memory write");
    for e in edges {
        w.write_record([
            e.source.to_string(),
            e.target.to_string(),
            e.raw_hce.to_string(),
            e.sibling_overcount.to_string(),
            e.corrected_hce.to_string(),
            e.collision.to_string(),
            e.reliable.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn edges_from_csv(text: &str) -> Result<Vec<MentionEdge>, FormatError> {
    let c = |e: String| FormatError::Csv(e);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers().map_err(|e| c(e.to_string()))?.clone();
    if headers.iter().ne(EDGE_CSV_HEADER.iter().copied()) {
        return Err(c(format!("unexpected header {headers:?}")));
    }
    let mut out = Vec::new();
    for row in r.records() {
        let row = row.map_err(|e| c(e.to_string()))?;
        let host = |i: usize| Host::parse(&row[i]).map_err(|e| c(e.to_string()));
        let num = |i: usize| {
            row[i]
                .parse::<u64>()
                .map_err(|e| c(format!("{}: {e}", &row[i])))
        };
        out.push(MentionEdge {
            source: host(0)?,
            target: host(1)?,
            raw_hce: num(2)?,
            sibling_overcount: num(3)?,
            corrected_hce: num(4)?,
            collision: row[5].parse().map_err(c)?,
            reliable: row[6]
                .parse()
                .map_err(|_| c(format!("bad boolean {}", &row[6])))?,
        });
    }
    Ok(out)
}
