use domainscope::domain::{Category, Host, OrganizationRecord, WebDomainRecord};
use domainscope::mentions::{
    build_query_plan, colliding_siblings, detect_collision, from_gexf, from_net, is_label_prefix,
    to_gexf, to_net, Collision, DomainGraph, MentionEdge, PlanOutcome,
};
use proptest::prelude::*;

fn h(s: &str) -> Host {
    Host::parse(s).unwrap()
}

fn org(n: usize) -> OrganizationRecord {
    OrganizationRecord {
        id: "T".into(),
        name: "T".into(),
        sector: String::new(),
        domains: (0..n)
            .map(|i| {
                let cat = if i == 0 {
                    Category::Corporate
                } else {
                    Category::Delegation
                };
                WebDomainRecord::new(h(&format!("d{i}.com")), cat)
            })
            .collect(),
    }
}

fn random_graph() -> impl Strategy<Value = DomainGraph> {
    (1usize..9)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(
                    (0..n, 0..n, 1u64..1_000_000, any::<bool>(), 0usize..3),
                    0..30,
                ),
                prop::collection::vec(prop::option::of(0usize..Category::ALL.len()), n),
            )
        })
        .prop_map(|(n, arcs, cats)| {
            let names: Vec<Host> = (0..n).map(|i| h(&format!("n{i}.com"))).collect();
            let mut seen = std::collections::HashSet::new();
            let arcs: Vec<_> = arcs
                .into_iter()
                .filter(|(s, t, ..)| s != t && seen.insert((*s, *t)))
                .map(|(s, t, w, r, c)| {
                    let col = [
                        Collision::None,
                        Collision::SiblingPrefix,
                        Collision::SelfPrefix,
                    ][c];
                    (names[s].clone(), names[t].clone(), w, r, col)
                })
                .collect();
            DomainGraph::new(
                names
                    .into_iter()
                    .zip(cats.into_iter().map(|c| c.map(|i| Category::ALL[i]))),
                arcs,
            )
            .unwrap()
        })
}

proptest! {
    #[test]
    fn plan_has_every_ordered_pair(n in 10usize..30) {
        let PlanOutcome::Planned(plan) = build_query_plan(&org(n), 10) else {
            panic!("eligible organization skipped");
        };
        prop_assert_eq!(plan.pairs.len(), n * (n - 1));
        prop_assert_eq!(plan.total_queries, n * (n - 1));
        let unique: std::collections::HashSet<_> = plan.pairs.iter().collect();
        prop_assert_eq!(unique.len(), plan.pairs.len());
        prop_assert!(plan.pairs.iter().all(|(t, s)| t != s));
    }

    #[test]
    fn small_organizations_are_skipped(n in 1usize..10) {
        let skipped = matches!(build_query_plan(&org(n), 10), PlanOutcome::Skipped { domains, .. } if domains == n);
        prop_assert!(skipped);
    }

    #[test]
    fn collision_iff_label_prefix(
        base in "[a-z]{1,6}",
        tail in prop::collection::vec("[a-z]{1,3}", 0..3),
        other in "zq[a-z]{1,6}\\.(com|es|org)",
    ) {
        let base = format!("zq{base}");
        let target = h(&format!("{base}.com"));
        let mut long = format!("{base}.com");
        for t in &tail {
            long.push('.');
            long.push_str(t);
        }
        let long = match Host::parse(&long) { Ok(x) => x, Err(_) => return Ok(()) };
        let other = h(&other);
        if long != target {
            prop_assert_eq!(detect_collision(&target, &long, []), Collision::SelfPrefix);
        }
        let siblings = [long.clone(), other.clone()];
        let sib = colliding_siblings(&target, &other, &siblings);
        let want = long != target && long != other && is_label_prefix(target.as_str(), long.as_str());
        prop_assert_eq!(sib.contains(&&long), want);
        for s in sib {
            prop_assert!(s.as_str().starts_with(target.as_str()));
            prop_assert_eq!(s.as_str().as_bytes()[target.as_str().len()], b'.');
        }
    }

    #[test]
    fn corrected_count_is_bounded(raw in prop::option::of(0u64..u64::MAX / 2), sibs in prop::collection::vec(prop::option::of(0u64..u64::MAX / 4), 0..8)) {
        let e = MentionEdge::from_counts(h("a.com"), h("b.com"), Collision::SiblingPrefix, raw, sibs.clone());
        prop_assert!(e.corrected_hce <= e.raw_hce);
        let expected = raw.unwrap_or(0).saturating_sub(sibs.iter().flatten().fold(0u64, |a, b| a.saturating_add(*b)));
        prop_assert_eq!(e.corrected_hce, expected);
        prop_assert_eq!(e.reliable, raw.is_some() && sibs.iter().all(Option::is_some));
    }

    #[test]
    fn net_round_trip_keeps_structure(g in random_graph()) {
        let back = from_net(&to_net(&g)).unwrap();
        prop_assert_eq!(back.nodes(), g.nodes());
        let arcs = |x: &DomainGraph| x.arcs().iter().map(|a| (a.source, a.target, a.weight)).collect::<Vec<_>>();
        prop_assert_eq!(arcs(&back), arcs(&g));
    }

    #[test]
    fn gexf_round_trip_is_lossless(g in random_graph()) {
        prop_assert_eq!(from_gexf(&to_gexf(&g)).unwrap(), g);
    }
}
