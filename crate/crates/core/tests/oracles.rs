//! Structural routines against brute-force oracles on the fixture corpus.

mod common;

use common::{clawfree, connected_le7, cubic_le14};
use lpack::graph::bits;
use lpack::solver::{brute_force_max_packing, max_packing, PackingConstraints};
use lpack::structure::{block_decomposition, find_claw, is_claw_free, vertex_connectivity};
use lpack::{emit_graph6, Graph};

fn subsets(n: usize, k: usize) -> Vec<u64> {
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .collect()
}

fn brute_claw_free(g: &Graph) -> bool {
    for s in subsets(g.n(), 4) {
        let vs: Vec<usize> = bits(s).collect();
        for &c in &vs {
            let leaves: Vec<usize> = vs.iter().copied().filter(|&v| v != c).collect();
            let star = leaves.iter().all(|&l| g.has_edge(c, l));
            let independent = !g.has_edge(leaves[0], leaves[1])
                && !g.has_edge(leaves[0], leaves[2])
                && !g.has_edge(leaves[1], leaves[2]);
            if star && independent {
                return false;
            }
        }
    }
    true
}

fn brute_connectivity(g: &Graph) -> usize {
    let n = g.n();
    for k in 0..n.saturating_sub(1) {
        for s in subsets(n, k) {
            let (h, _) = g.induced(g.vertex_mask() & !s);
            if h.n() >= 2 && !h.is_connected() {
                return k;
            }
        }
    }
    n.saturating_sub(1)
}

/// Blocks as maximal vertex sets inducing a connected subgraph without a
/// cut vertex (an edge counts).
fn brute_blocks(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let ok = |s: u64| {
        if s.count_ones() < 2 {
            return false;
        }
        let (h, _) = g.induced(s);
        if !h.is_connected() {
            return false;
        }
        h.n() == 2 || (0..h.n()).all(|v| h.delete_vertices(&[v]).unwrap().0.is_connected())
    };
    let good: Vec<u64> = (1u64..1 << n).filter(|&s| ok(s)).collect();
    let mut blocks: Vec<u64> = good
        .iter()
        .copied()
        .filter(|&s| !good.iter().any(|&t| t != s && t & s == s))
        .collect();
    blocks.sort_unstable();
    blocks
}

fn brute_end_blocks(g: &Graph) -> usize {
    let blocks = brute_blocks(g);
    if g.is_connected() && blocks.len() == 1 && g.n() == 2 {
        return 2;
    }
    blocks
        .iter()
        .filter(|&&b| {
            bits(b)
                .filter(|&v| blocks.iter().filter(|&&c| c >> v & 1 == 1).count() >= 2)
                .count()
                == 1
        })
        .count()
}

#[test]
fn claw_freeness_matches_four_subset_search() {
    let mut claw_free = 0;
    for g in connected_le7().iter().chain(cubic_le14().iter().take(30)) {
        let brute = brute_claw_free(g);
        assert_eq!(is_claw_free(g), brute, "{}", emit_graph6(g).unwrap());
        assert_eq!(find_claw(g).is_none(), brute);
        claw_free += usize::from(brute);
    }
    // connected claw-free graphs on 1..=7 vertices plus the claw-free cubic
    // graphs among the first 30 cubic fixtures, frozen from this oracle
    assert_eq!(claw_free, 264 + claw_free_cubic_prefix());
}

fn claw_free_cubic_prefix() -> usize {
    cubic_le14()
        .iter()
        .take(30)
        .filter(|g| brute_claw_free(g))
        .count()
}

#[test]
fn claw_free_corpus_is_claw_free() {
    for n in 1..=8 {
        for g in clawfree(n) {
            assert!(is_claw_free(&g) && brute_claw_free(&g));
        }
    }
}

#[test]
fn connectivity_matches_subset_search() {
    let small = connected_le7();
    let cubic8: Vec<Graph> = cubic_le14().into_iter().filter(|g| g.n() <= 8).collect();
    for g in small.iter().chain(&cubic8) {
        assert_eq!(
            vertex_connectivity(g),
            brute_connectivity(g),
            "{}",
            emit_graph6(g).unwrap()
        );
    }
    let mut hist = [0usize; 7];
    for g in &small {
        hist[vertex_connectivity(g)] += 1;
    }
    // connected graphs on 1..=7 vertices by connectivity, frozen from
    // networkx.node_connectivity over the same fixture
    assert_eq!(hist, [1, 457, 381, 127, 25, 4, 1]);
}

#[test]
fn blocks_match_maximal_two_connected_sets() {
    for g in connected_le7() {
        let d = block_decomposition(&g);
        let mut mine: Vec<u64> = d
            .blocks
            .iter()
            .map(|b| b.vertices.iter().fold(0, |m, &v| m | 1 << v))
            .collect();
        mine.sort_unstable();
        assert_eq!(mine, brute_blocks(&g), "{}", emit_graph6(&g).unwrap());
        assert_eq!(
            d.end_blocks,
            brute_end_blocks(&g),
            "{}",
            emit_graph6(&g).unwrap()
        );
        let cuts: Vec<usize> = (0..g.n())
            .filter(|&v| g.n() > 2 && !g.delete_vertices(&[v]).unwrap().0.is_connected())
            .collect();
        assert_eq!(d.cut_vertices, cuts);
        // block-cut tree: blocks + cut vertices - 1 edges, one per (cut, block) incidence
        if !d.blocks.is_empty() {
            let incidences: usize = d.blocks.iter().map(|b| b.boundary.len()).sum();
            assert_eq!(incidences, d.blocks.len() + d.cut_vertices.len() - 1);
        }
        // edges partition into blocks
        let edges: usize = d.blocks.iter().map(|b| b.edges.len()).sum();
        assert_eq!(edges, g.edge_count());
    }
}

#[test]
fn end_block_distribution() {
    let mut hist = [0usize; 7];
    for g in connected_le7() {
        hist[block_decomposition(&g).end_blocks] += 1;
    }
    // frozen from networkx biconnected_components / articulation_points over
    // the same fixture (K2 counted as two end-blocks)
    assert_eq!(hist, [539, 0, 357, 76, 19, 4, 1]);
}

#[test]
fn solver_matches_brute_force_with_constraints() {
    for g in connected_le7().iter().filter(|g| g.n() >= 3).step_by(7) {
        let edges = g.edges();
        let cases = [
            PackingConstraints::none().forbid_edge(edges[0]),
            PackingConstraints::none().require_edge(edges[edges.len() / 2]),
            PackingConstraints::none().delete_vertex(g.n() - 1),
            PackingConstraints::none().require_path(g.paths3()[0]),
        ];
        for c in cases {
            let fast = max_packing(g, &c);
            let slow = brute_force_max_packing(g, &c);
            match (fast, slow) {
                (Ok(a), Ok(b)) => {
                    assert_eq!(a.size(), b.size(), "{} {c:?}", emit_graph6(g).unwrap());
                    a.validate(g, &c).unwrap();
                }
                (Err(a), Err(b)) => assert_eq!(a, b),
                (a, b) => panic!("{}: {a:?} vs {b:?}", emit_graph6(g).unwrap()),
            }
        }
    }
}
