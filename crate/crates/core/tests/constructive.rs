mod common;

use common::{cubic_le14, prism};
use lpack::constructive::{shortest_proper_cycle_through, two_factor_containing_path};
use lpack::solver::{has_factor, PackingConstraints};
use lpack::structure::{is_claw_free, is_cubic, triangle_profile, vertex_connectivity};
use lpack::{blowup_factor, triangle_blowup, BlowupMap, BlowupMode, Edge, Graph, VertexPath3};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn two_connected_bases(max_n: usize) -> Vec<Graph> {
    cubic_le14()
        .into_iter()
        .filter(|g| g.n() <= max_n && vertex_connectivity(g) >= 2)
        .collect()
}

#[test]
fn blowups_have_the_expected_shape() {
    for f in cubic_le14().into_iter().filter(|g| g.n() <= 14) {
        let m = triangle_blowup(&f).unwrap();
        m.check_invariants().unwrap();
        assert!(is_cubic(&m.blown));
        assert!(is_claw_free(&m.blown));
        let p = triangle_profile(&m.blown);
        assert_eq!(p.triangles.len(), f.n());
        assert!(p.vertex_counts.iter().all(|&c| c == 1));
        assert_eq!(
            vertex_connectivity(&m.blown),
            vertex_connectivity(&f).min(3)
        );
    }
}

#[test]
fn recognize_recovers_relabelled_blowups() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for f in two_connected_bases(10) {
        let m = triangle_blowup(&f).unwrap();
        let n = m.blown.n();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let edges = m
            .blown
            .edges()
            .into_iter()
            .map(|e| (perm[e.lo()], perm[e.hi()]));
        let shuffled = Graph::from_edges(n, edges).unwrap();
        let r = BlowupMap::recognize(&shuffled).unwrap();
        r.check_invariants().unwrap();
        assert_eq!(r.base.edge_count(), f.edge_count());
        assert_eq!(vertex_connectivity(&r.base), vertex_connectivity(&f));
    }
}

#[test]
fn two_factors_through_every_path() {
    for a in two_connected_bases(12) {
        for j in a.paths3() {
            let cycles = two_factor_containing_path(&a, &j).unwrap();
            let mut deg = vec![0; a.n()];
            let mut used = Vec::new();
            for c in &cycles {
                for i in 0..c.len() {
                    let e = Edge::new(c[i], c[(i + 1) % c.len()]);
                    assert!(a.contains_edge(e));
                    deg[e.lo()] += 1;
                    deg[e.hi()] += 1;
                    used.push(e);
                }
            }
            assert!(deg.iter().all(|&d| d == 2));
            assert!(j.edges().iter().all(|e| used.contains(e)));
        }
    }
}

#[test]
fn every_mode_on_small_bases_agrees_with_solver() {
    for f in two_connected_bases(8) {
        let m = triangle_blowup(&f).unwrap();
        for l in m.blown.paths3() {
            let tri = l.induces_triangle(&m.blown);
            for &mode in BlowupMode::for_path(tri) {
                let p = blowup_factor(&m, &l, mode).unwrap_or_else(|e| panic!("{l} {mode:?}: {e}"));
                let c = PackingConstraints::none().require_path(l);
                assert!(p.is_factor(&m.blown, &c));
                assert_eq!(p.size(), m.blown.n() / 3);
                assert!(has_factor(&m.blown, &c).unwrap().is_some());
            }
        }
    }
}

#[test]
fn k4_modes_match_the_worked_examples() {
    let m = triangle_blowup(&Graph::complete(4).unwrap()).unwrap();
    let t = m.triangles[0];
    let tri = VertexPath3::new(t[0], t[1], t[2]);
    let p = blowup_factor(&m, &tri, BlowupMode::AllTriangles).unwrap();
    let expect: Vec<VertexPath3> = m
        .triangles
        .iter()
        .map(|t| VertexPath3::new(t[1], t[0], t[2]))
        .collect();
    let mut want = expect.clone();
    want[0] = tri;
    assert_eq!(p, lpack::LambdaPacking::new(want));

    let x = m.outside_neighbor(0);
    let l = VertexPath3::new(1, 0, x);
    let p = blowup_factor(&m, &l, BlowupMode::NoTriangles).unwrap();
    assert_eq!(p.size(), 4);
    assert_eq!(p.triangle_components(&m.blown), 0);
}

#[test]
fn some_triangle_mode_on_prism() {
    let m = triangle_blowup(&prism()).unwrap();
    for l in m
        .blown
        .paths3()
        .into_iter()
        .filter(|l| !l.induces_triangle(&m.blown))
    {
        let p = blowup_factor(&m, &l, BlowupMode::SomeTriangle).unwrap();
        assert!(p.paths.contains(&l));
        assert!(p.triangle_components(&m.blown) >= 1);
    }
}

#[test]
fn proper_cycles_miss_a_vertex() {
    for a in two_connected_bases(10) {
        for j in a.paths3() {
            let (p, q) = j.ends();
            let c = shortest_proper_cycle_through(&a, p, j.center(), q).unwrap();
            assert!(c.len() < a.n());
            assert_eq!(c[0], j.center());
            for i in 0..c.len() {
                assert!(a.has_edge(c[i], c[(i + 1) % c.len()]));
            }
        }
    }
}

#[test]
fn bridged_base_is_rejected() {
    let f = cubic_le14()
        .into_iter()
        .find(|g| vertex_connectivity(g) == 1)
        .unwrap();
    let m = triangle_blowup(&f).unwrap();
    let l = m.blown.paths3()[0];
    assert_eq!(
        blowup_factor(
            &m,
            &l,
            BlowupMode::for_path(l.induces_triangle(&m.blown))[0]
        ),
        Err(lpack::ConstructionError::NotTwoConnected)
    );
}
