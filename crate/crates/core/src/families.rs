//! Generators and recognizers for the example and obstruction families: the
//! net, class 𝒜, the graph H and its extensions, the graphs R and Q, triangle
//! blow-ups, and random cubic graphs.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructive::triangle_blowup;
use crate::error::{FamilyError, GraphError};
use crate::graph::{Edge, Graph, Vertex, MAX_VERTICES};
use crate::structure::{is_cubic, triangle_profile};

/// Triangle `0 1 2` with leaves `3`, `4`, `5` attached to `0`, `1`, `2`.
pub fn gen_net() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
        .expect("net is a simple graph")
}

/// Connected, maximum degree at most 3, every vertex of degree 2 or 3 in
/// exactly one triangle, and exactly three vertices of degree 1.
pub fn is_class_a(g: &Graph) -> bool {
    if !g.is_connected() || g.max_degree() > 3 {
        return false;
    }
    let degrees = g.degrees();
    if degrees.iter().filter(|&&d| d == 1).count() != 3 {
        return false;
    }
    let profile = triangle_profile(g);
    degrees
        .iter()
        .zip(&profile.vertex_counts)
        .all(|(&d, &t)| d < 2 || t == 1)
}

/// The three leaves of a class-𝒜 graph, in increasing order.
pub fn leaves(g: &Graph) -> Vec<Vertex> {
    (0..g.n()).filter(|&v| g.degree(v) == 1).collect()
}

/// A member of class 𝒜 on `6 + 3 * steps` vertices. Starting from the net,
/// each step takes the oldest leaf `v` (neighbour `x`), turns it into a
/// triangle `v v2 v3` hanging from `x`, and hangs a new leaf from `v2`.
pub fn gen_class_a(steps: usize) -> Result<Graph, FamilyError> {
    let n = 6 + 3 * steps;
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    let mut edges: Vec<(Vertex, Vertex)> =
        gen_net().edges().into_iter().map(Edge::endpoints).collect();
    let mut queue: VecDeque<Vertex> = VecDeque::from([3, 4, 5]);
    let mut next = 6;
    for _ in 0..steps {
        let v = queue.pop_front().unwrap();
        let (v2, v3, leaf) = (next, next + 1, next + 2);
        edges.extend([(v, v2), (v, v3), (v2, v3), (v2, leaf)]);
        queue.push_back(leaf);
        next += 3;
    }
    let g = Graph::from_edges(n, edges)?;
    if !is_class_a(&g) {
        return Err(FamilyError::Parameters(format!(
            "expansion {steps} left class 𝒜"
        )));
    }
    Ok(g)
}

/// A class-𝒜 graph with three leaves joined to a new triangle
/// `t1 t2 t3` (the last three vertices) by the edges `v_i t_j`, `i != j`.
/// Returns the graph and the triangle.
pub fn gen_h_from_class_a(a: &Graph) -> Result<(Graph, [Vertex; 3]), FamilyError> {
    if !is_class_a(a) {
        return Err(FamilyError::Parameters(
            "base graph is not in class 𝒜".into(),
        ));
    }
    let n = a.n() + 3;
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    let v = leaves(a);
    let t = [a.n(), a.n() + 1, a.n() + 2];
    let mut edges: Vec<(Vertex, Vertex)> = a.edges().into_iter().map(Edge::endpoints).collect();
    edges.extend([(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]);
    for (i, &vi) in v.iter().enumerate() {
        for (j, &tj) in t.iter().enumerate() {
            if i != j {
                edges.push((vi, tj));
            }
        }
    }
    Ok((Graph::from_edges(n, edges)?, t))
}

/// The 9-vertex graph H: the net plus the triangle `6 7 8`.
pub fn gen_h() -> (Graph, [Vertex; 3]) {
    gen_h_from_class_a(&gen_net()).expect("the net is in class 𝒜")
}

/// H with the net replaced by `gen_class_a(steps)`.
pub fn gen_h_extended(steps: usize) -> Result<(Graph, [Vertex; 3]), FamilyError> {
    gen_h_from_class_a(&gen_class_a(steps)?)
}

/// The blow-up of K4 with the edges of one triangle removed: a 9-vertex
/// class-𝒜 graph whose H-extension is 3-connected.
pub fn gen_k4_blowup_minus_triangle() -> Graph {
    let m = triangle_blowup(&Graph::complete(4).unwrap()).expect("K4 is cubic");
    let [a, b, c] = m.triangles[0];
    m.blown
        .delete_edges(&[Edge::new(a, b), Edge::new(a, c), Edge::new(b, c)])
        .expect("triangle edges exist")
}

fn check_cycle_lengths(la: usize, lb: usize, extra: usize) -> Result<(), FamilyError> {
    if la < 3 || lb < 3 {
        return Err(FamilyError::Parameters(format!(
            "cycle lengths must be at least 3, got {la} and {lb}"
        )));
    }
    if la + lb + extra > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(la + lb + extra).into());
    }
    Ok(())
}

fn two_cycles(la: usize, lb: usize) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::with_capacity(la + lb + 5);
    edges.extend((0..la).map(|i| (i, (i + 1) % la)));
    edges.extend((0..lb).map(|i| (la + i, la + (i + 1) % lb)));
    edges
}

/// Cycles `A = 0..la` and `B = la..la+lb` and an apex `z` (the last vertex)
/// joined to both ends of `a = {0, 1}` and `b = {la, la + 1}`. Returns the
/// graph with `a` and `b`.
pub fn gen_r(la: usize, lb: usize) -> Result<(Graph, Edge, Edge), FamilyError> {
    check_cycle_lengths(la, lb, 1)?;
    let z = la + lb;
    let mut edges = two_cycles(la, lb);
    edges.extend([(0, z), (1, z), (la, z), (la + 1, z)]);
    Ok((
        Graph::from_edges(z + 1, edges)?,
        Edge::new(0, 1),
        Edge::new(la, la + 1),
    ))
}

/// Cycles as in [`gen_r`] and two adjacent apexes `z1`, `z2` (the last two
/// vertices), each joined to both ends of `{0, 1}` and `{la, la + 1}`.
/// Returns the graph with `e = z1 z2`.
pub fn gen_q(la: usize, lb: usize) -> Result<(Graph, Edge), FamilyError> {
    check_cycle_lengths(la, lb, 2)?;
    let (z1, z2) = (la + lb, la + lb + 1);
    let mut edges = two_cycles(la, lb);
    for z in [z1, z2] {
        edges.extend([(0, z), (1, z), (la, z), (la + 1, z)]);
    }
    edges.push((z1, z2));
    Ok((Graph::from_edges(z2 + 1, edges)?, Edge::new(z1, z2)))
}

/// A uniformly paired configuration-model cubic graph on `n` vertices,
/// resampled until it has no loops or parallel edges. Deterministic in
/// `seed`.
pub fn random_cubic(n: usize, seed: u64) -> Result<Graph, FamilyError> {
    if n < 4 || n % 2 == 1 {
        return Err(FamilyError::Parameters(format!(
            "a cubic graph needs an even order of at least 4, got {n}"
        )));
    }
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vertex> = (0..3 * n).map(|p| p / 3).collect();
    'retry: loop {
        points.shuffle(&mut rng);
        let mut adj = vec![0u64; n];
        for pair in points.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || adj[u] >> v & 1 == 1 {
                continue 'retry;
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let g = Graph::from_masks(adj)?;
        debug_assert!(is_cubic(&g));
        return Ok(g);
    }
}

/// Family selector with size parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilySpec {
    Net,
    ClassA { steps: usize },
    HGraph,
    HExtended { steps: usize },
    RGraph { la: usize, lb: usize },
    QGraph { la: usize, lb: usize },
    Blowup { base: String },
    RandomCubic { n: usize, seed: u64 },
}

/// A generated graph with its named vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub graph: Graph,
    pub triangle: Option<[Vertex; 3]>,
    pub marked_edges: Vec<(&'static str, Edge)>,
}

impl FamilySpec {
    pub fn build(&self) -> Result<FamilyInstance, FamilyError> {
        let plain = |graph| FamilyInstance {
            graph,
            triangle: None,
            marked_edges: Vec::new(),
        };
        Ok(match self {
            FamilySpec::Net => plain(gen_net()),
            FamilySpec::ClassA { steps } => plain(gen_class_a(*steps)?),
            FamilySpec::HGraph => {
                let (graph, t) = gen_h();
                FamilyInstance {
                    graph,
                    triangle: Some(t),
                    marked_edges: Vec::new(),
                }
            }
            FamilySpec::HExtended { steps } => {
                let (graph, t) = gen_h_extended(*steps)?;
                FamilyInstance {
                    graph,
                    triangle: Some(t),
                    marked_edges: Vec::new(),
                }
            }
            FamilySpec::RGraph { la, lb } => {
                let (graph, a, b) = gen_r(*la, *lb)?;
                FamilyInstance {
                    graph,
                    triangle: None,
                    marked_edges: vec![("a", a), ("b", b)],
                }
            }
            FamilySpec::QGraph { la, lb } => {
                let (graph, e) = gen_q(*la, *lb)?;
                FamilyInstance {
                    graph,
                    triangle: None,
                    marked_edges: vec![("e", e)],
                }
            }
            FamilySpec::Blowup { base } => {
                let f = crate::graph6::parse_graph6(base)
                    .map_err(|e| FamilyError::Parameters(format!("base graph: {e}")))?;
                plain(triangle_blowup(&f)?.blown)
            }
            FamilySpec::RandomCubic { n, seed } => plain(random_cubic(*n, *seed)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexPath3;
    use crate::solver::{has_factor, PackingConstraints};
    use crate::structure::{is_claw_free, vertex_connectivity};

    #[test]
    fn net_shape() {
        let g = gen_net();
        let mut d = g.degrees();
        d.sort();
        assert_eq!(d, vec![1, 1, 1, 3, 3, 3]);
        assert!(is_claw_free(&g));
        assert!(is_class_a(&g));
        assert_eq!(has_factor(&g, &PackingConstraints::none()), Ok(None));
    }

    #[test]
    fn class_a_recognizer_rejects() {
        assert!(!is_class_a(&Graph::complete(3).unwrap()));
        assert!(!is_class_a(
            &Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
        ));
        assert!(!is_class_a(&Graph::path(3).unwrap()));
    }

    #[test]
    fn class_a_expansion_steps() {
        for k in 0..=10 {
            let g = gen_class_a(k).unwrap();
            assert_eq!(g.n(), 6 + 3 * k);
            assert!(is_class_a(&g));
            assert!(is_claw_free(&g));
        }
        assert_eq!(gen_class_a(0).unwrap(), gen_net());
        assert!(gen_class_a(20).is_err());
    }

    #[test]
    fn h_shape() {
        let (h, t) = gen_h();
        assert_eq!(h.n(), 9);
        assert_eq!(t, [6, 7, 8]);
        for v in 0..9 {
            assert_eq!(h.degree(v), if t.contains(&v) { 4 } else { 3 });
        }
        assert!(is_claw_free(&h));
        assert_eq!(vertex_connectivity(&h), 3);
        let (rest, _) = h.delete_vertices(&t).unwrap();
        assert_eq!(rest, gen_net());
        let l = VertexPath3::new(6, 7, 8);
        let c = PackingConstraints::none().delete_vertices(l.vertices());
        assert_eq!(has_factor(&h, &c), Ok(None));
    }

    #[test]
    fn k4_blowup_minus_triangle_h_is_three_connected() {
        let a = gen_k4_blowup_minus_triangle();
        assert_eq!(a.n(), 12);
        assert!(is_class_a(&a));
        let (h, _) = gen_h_from_class_a(&a).unwrap();
        assert!(is_claw_free(&h));
        assert_eq!(vertex_connectivity(&h), 3);
    }

    #[test]
    fn r_and_q_shape() {
        let (r, a, b) = gen_r(4, 4).unwrap();
        assert_eq!(r.n(), 9);
        assert_eq!((a, b), (Edge::new(0, 1), Edge::new(4, 5)));
        assert!(is_claw_free(&r));
        assert_eq!(vertex_connectivity(&r), 1);
        let (q, e) = gen_q(5, 5).unwrap();
        assert_eq!(q.n(), 12);
        assert_eq!(e, Edge::new(10, 11));
        assert!(is_claw_free(&q));
        assert_eq!(vertex_connectivity(&q), 2);
        assert!(gen_r(2, 4).is_err());
        assert!(gen_q(5, 2).is_err());
    }

    #[test]
    fn random_cubic_is_seeded() {
        let a = random_cubic(20, 7).unwrap();
        assert!(is_cubic(&a));
        assert_eq!(a, random_cubic(20, 7).unwrap());
        assert!(random_cubic(7, 0).is_err());
        assert!(is_cubic(&random_cubic(64, 1).unwrap()));
    }

    #[test]
    fn spec_build() {
        let q = FamilySpec::QGraph { la: 5, lb: 5 }.build().unwrap();
        assert_eq!(q.marked_edges, vec![("e", Edge::new(10, 11))]);
        let b = FamilySpec::Blowup { base: "C~".into() }.build().unwrap();
        assert_eq!(b.graph.n(), 12);
        assert!(FamilySpec::Blowup { base: "C^".into() }.build().is_err());
    }
}
