//! Node and network indicators on a small hand-made mention graph.

use domainscope::domain::{Category, Host};
use domainscope::mentions::{Collision, DomainGraph};
use domainscope::metrics::{asymmetry_report, intensity_totals, network_metrics, node_metrics};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let names = [
        "corp.com",
        "corp.es",
        "brand.com",
        "foundation.org",
        "shop.com",
    ];
    let nodes: Vec<(Host, Option<Category>)> = names
        .iter()
        .zip([
            Category::Corporate,
            Category::Delegation,
            Category::BrandProduct,
            Category::Foundation,
            Category::Service,
        ])
        .map(|(h, c)| (Host::parse(h).expect("valid"), Some(c)))
        .collect();
    // (source, target, corrected mentions)
    let arcs = [
        (1, 0, 420),
        (2, 0, 96),
        (3, 0, 15),
        (4, 0, 8),
        (0, 1, 30),
        (2, 4, 55),
        (4, 2, 61),
        (1, 2, 3),
    ];
    let h = |i: usize| Host::parse(names[i]).expect("valid");
    let graph = DomainGraph::new(
        nodes,
        arcs.iter()
            .map(|&(s, t, w)| (h(s), h(t), w, true, Collision::None)),
    )?;

    let net = network_metrics(&graph);
    println!(
        "n {} m {} average degree {:.3} density {:.3} diameter {:?}",
        net.n, net.m, net.average_degree, net.density, net.diameter
    );
    let nodes = node_metrics(&graph);
    println!(
        "{:16} {:>3} {:>3} {:>4} {:>7} {:>7} {:>7} {:>7}",
        "host", "in", "out", "asym", "betw", "clo", "eig", "cc"
    );
    for m in &nodes {
        let f = |v: Option<f64>| v.map_or("—".to_owned(), |x| format!("{x:.3}"));
        println!(
            "{:16} {:>3} {:>3} {:>4} {:>7.3} {:>7} {:>7} {:>7}",
            m.host.as_str(),
            m.in_degree,
            m.out_degree,
            m.asymmetry,
            m.betweenness,
            f(m.closeness),
            f(m.eigenvector),
            f(m.clustering)
        );
    }
    let asym = asymmetry_report(&nodes, 2);
    println!("authorities {:?} hubs {:?}", asym.authorities, asym.hubs);
    let t = intensity_totals(&graph, &Host::parse("corp.com")?)?;
    println!(
        "corp.com receives {} and sends {} mentions; strongest pair {:?}",
        t.as_target_total, t.as_source_total, t.top_pair
    );
    Ok(())
}
