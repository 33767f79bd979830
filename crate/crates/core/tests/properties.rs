//! Randomised invariants.

use lpack::graph6::{emit_graph6, parse_graph6};
use lpack::solver::{brute_force_max_packing, has_factor, max_packing, PackingConstraints};
use lpack::structure::{block_decomposition, find_claw, is_claw_free, vertex_connectivity};
use lpack::{Edge, Graph};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trips(g in graph(24)) {
        let s = emit_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn solver_equals_brute_force(g in graph(10), pick in 0usize..1000) {
        prop_assert_eq!(max_packing(&g, &PackingConstraints::none()).unwrap().size(),
                        brute_force_max_packing(&g, &PackingConstraints::none()).unwrap().size());
        let edges = g.edges();
        if !edges.is_empty() {
            let e = edges[pick % edges.len()];
            let c = PackingConstraints::none().forbid_edge(e).delete_vertex(pick % g.n());
            prop_assert_eq!(max_packing(&g, &c).unwrap().size(), brute_force_max_packing(&g, &c).unwrap().size());
        }
    }

    #[test]
    fn factor_iff_max_packing_spans(g in graph(11), pick in 0usize..1000) {
        let paths = g.paths3();
        let c = if paths.is_empty() {
            PackingConstraints::none()
        } else {
            PackingConstraints::none().require_path(paths[pick % paths.len()])
        };
        let f = has_factor(&g, &c).unwrap();
        let m = max_packing(&g, &c);
        match f {
            Some(p) => {
                prop_assert!(p.is_factor(&g, &c));
                prop_assert_eq!(m.unwrap().size() * 3, g.n());
            }
            None => prop_assert!(m.map(|m| m.size() * 3 < g.n()).unwrap_or(true)),
        }
    }

    #[test]
    fn deletion_keeps_labels_consistent(g in graph(16), mask in any::<u16>()) {
        let removed: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
        let (h, map) = g.delete_vertices(&removed).unwrap();
        prop_assert_eq!(h.n(), g.n() - removed.len());
        for e in h.edges() {
            prop_assert!(g.contains_edge(Edge::new(map.old_of(e.lo()), map.old_of(e.hi()))));
        }
        let kept = g.edges().into_iter().filter(|e| !removed.contains(&e.lo()) && !removed.contains(&e.hi())).count();
        prop_assert_eq!(h.edge_count(), kept);
    }

    #[test]
    fn structural_invariants(g in graph(12)) {
        prop_assert!(vertex_connectivity(&g) <= g.min_degree());
        prop_assert_eq!(is_claw_free(&g), find_claw(&g).is_none());
        if let Some([c, a, b, d]) = find_claw(&g) {
            prop_assert!(g.has_edge(c, a) && g.has_edge(c, b) && g.has_edge(c, d));
            prop_assert!(!g.has_edge(a, b) && !g.has_edge(a, d) && !g.has_edge(b, d));
        }
        let blocks = block_decomposition(&g);
        let edges: usize = blocks.blocks.iter().map(|b| b.edges.len()).sum();
        prop_assert_eq!(edges, g.edge_count());
        prop_assert!(lpack::solver::lambda(&g).unwrap() <= g.n() / 3);
    }
}
