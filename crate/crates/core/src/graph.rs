//! Simple undirected graphs on at most 64 vertices, stored as adjacency
//! bitsets, plus the 3-vertex path type everything else is built on.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::GraphError;

/// Vertices are labelled `0..n`.
pub type Vertex = usize;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

/// Bitset over vertex labels.
pub type VertexMask = u64;

/// Mask with the low `n` bits set.
pub fn full_mask(n: usize) -> VertexMask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Vertices with label strictly greater than `v`.
pub fn mask_above(v: Vertex) -> VertexMask {
    u64::MAX.checked_shl(v as u32 + 1).unwrap_or(0)
}

/// Iterate over the set bits of a mask in increasing order.
pub fn bits(mut mask: VertexMask) -> impl Iterator<Item = Vertex> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// An undirected edge with endpoints stored in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Panics on a loop.
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert_ne!(u, v, "loops are not edges");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(self) -> Vertex {
        self.0
    }

    pub fn hi(self) -> Vertex {
        self.1
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.0, self.1)
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`; `None` if `v` is not an endpoint.
    pub fn other(self, v: Vertex) -> Option<Vertex> {
        if self.0 == v {
            Some(self.1)
        } else if self.1 == v {
            Some(self.0)
        } else {
            None
        }
    }

    pub fn mask(self) -> VertexMask {
        (1 << self.0) | (1 << self.1)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0, self.1].serialize(s)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// A 3-vertex path, kept as its center plus an unordered endpoint pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexPath3 {
    center: Vertex,
    ends: (Vertex, Vertex),
}

impl VertexPath3 {
    /// The path `a - center - b`. Panics unless the three vertices are distinct.
    pub fn new(a: Vertex, center: Vertex, b: Vertex) -> Self {
        assert!(
            a != b && a != center && b != center,
            "path vertices must be distinct: {a} {center} {b}"
        );
        let ends = if a < b { (a, b) } else { (b, a) };
        VertexPath3 { center, ends }
    }

    pub fn center(&self) -> Vertex {
        self.center
    }

    pub fn ends(&self) -> (Vertex, Vertex) {
        self.ends
    }

    /// Vertices in path order: end, center, end.
    pub fn vertices(&self) -> [Vertex; 3] {
        [self.ends.0, self.center, self.ends.1]
    }

    pub fn mask(&self) -> VertexMask {
        (1 << self.ends.0) | (1 << self.center) | (1 << self.ends.1)
    }

    pub fn edges(&self) -> [Edge; 2] {
        [
            Edge::new(self.ends.0, self.center),
            Edge::new(self.center, self.ends.1),
        ]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.center == v || self.ends.0 == v || self.ends.1 == v
    }

    pub fn uses_edge(&self, e: Edge) -> bool {
        self.edges().contains(&e)
    }

    /// Both path edges exist in `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.vertices().iter().all(|&v| v < g.n())
            && g.has_edge(self.ends.0, self.center)
            && g.has_edge(self.center, self.ends.1)
    }

    /// The three vertices are pairwise adjacent in `g`.
    pub fn induces_triangle(&self, g: &Graph) -> bool {
        self.is_valid_in(g) && g.has_edge(self.ends.0, self.ends.1)
    }

    /// Relabel through an old-to-new map; `None` if a vertex was removed.
    pub fn relabel(&self, map: &LabelMap) -> Option<VertexPath3> {
        let [a, c, b] = self.vertices();
        Some(VertexPath3::new(
            map.new_of(a)?,
            map.new_of(c)?,
            map.new_of(b)?,
        ))
    }
}

/// Serialized in path order: `[end, center, end]`.
impl Serialize for VertexPath3 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.vertices().serialize(s)
    }
}

impl fmt::Display for VertexPath3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}-{}", self.ends.0, self.center, self.ends.1)
    }
}

/// Label correspondence between a graph and one derived from it by vertex
/// deletion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMap {
    old_to_new: Vec<Option<Vertex>>,
    new_to_old: Vec<Vertex>,
}

impl LabelMap {
    pub fn identity(n: usize) -> Self {
        LabelMap {
            old_to_new: (0..n).map(Some).collect(),
            new_to_old: (0..n).collect(),
        }
    }

    pub fn new_of(&self, old: Vertex) -> Option<Vertex> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn old_of(&self, new: Vertex) -> Vertex {
        self.new_to_old[new]
    }

    pub fn kept(&self) -> &[Vertex] {
        &self.new_to_old
    }
}

/// Immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexMask>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Build from an edge list. Loops, repeated edges and out-of-range
    /// endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u.max(v), n));
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::ParallelEdge(u, v));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Build from adjacency masks, which must be symmetric and loop-free.
    pub fn from_masks(adj: Vec<VertexMask>) -> Result<Self, GraphError> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let all = full_mask(n);
        for (v, &m) in adj.iter().enumerate() {
            if m & !all != 0 {
                return Err(GraphError::VertexOutOfRange(
                    (m & !all).trailing_zeros() as usize,
                    n,
                ));
            }
            if m >> v & 1 == 1 {
                return Err(GraphError::Loop(v));
            }
            for u in bits(m) {
                if adj[u] >> v & 1 == 0 {
                    return Err(GraphError::Asymmetric(v, u));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let all = full_mask(n);
        Graph::from_masks((0..n).map(|v| all & !(1 << v)).collect())
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_mask(&self) -> VertexMask {
        full_mask(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.lo(), e.hi())
    }

    pub fn neighbor_mask(&self, v: Vertex) -> VertexMask {
        self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> {
        bits(self.adj[v])
    }

    /// Panics when `v` is out of range.
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.adj[u] & mask_above(u)) {
                out.push(Edge(u, v));
            }
        }
        out
    }

    /// Every 3-vertex path, ordered by center then endpoints.
    pub fn paths3(&self) -> Vec<VertexPath3> {
        let mut out = Vec::new();
        for c in 0..self.n {
            let nb: Vec<_> = self.neighbors(c).collect();
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    out.push(VertexPath3 {
                        center: c,
                        ends: (a, b),
                    });
                }
            }
        }
        out
    }

    /// Induced subgraph on the complement of `removed`, relabelled densely in
    /// increasing order of old label.
    pub fn delete_vertices(&self, removed: &[Vertex]) -> Result<(Graph, LabelMap), GraphError> {
        let mut drop: VertexMask = 0;
        for &v in removed {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange(v, self.n));
            }
            drop |= 1 << v;
        }
        Ok(self.induced(self.vertex_mask() & !drop))
    }

    /// Induced subgraph on `keep`, relabelled densely.
    pub fn induced(&self, keep: VertexMask) -> (Graph, LabelMap) {
        let keep = keep & self.vertex_mask();
        let new_to_old: Vec<Vertex> = bits(keep).collect();
        let mut old_to_new = vec![None; self.n];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let adj = new_to_old
            .iter()
            .map(|&old| {
                bits(self.adj[old] & keep)
                    .map(|u| 1u64 << old_to_new[u].unwrap())
                    .fold(0, |a, b| a | b)
            })
            .collect();
        (
            Graph {
                n: new_to_old.len(),
                adj,
            },
            LabelMap {
                old_to_new,
                new_to_old,
            },
        )
    }

    /// Same vertex set with the listed edges removed.
    pub fn delete_edges(&self, removed: &[Edge]) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        for &e in removed {
            if !g.contains_edge(e) {
                return Err(GraphError::NotAnEdge(e.lo(), e.hi()));
            }
            g.adj[e.lo()] &= !(1 << e.hi());
            g.adj[e.hi()] &= !(1 << e.lo());
        }
        Ok(g)
    }

    /// Remove the three vertices of `path`.
    pub fn delete_path(&self, path: &VertexPath3) -> Result<(Graph, LabelMap), GraphError> {
        if !path.is_valid_in(self) {
            return Err(GraphError::NotAPath(path.to_string()));
        }
        self.delete_vertices(&path.vertices())
    }

    /// Same graph plus the given edges.
    pub fn with_edges(&self, added: &[Edge]) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        for &e in added {
            if e.hi() >= g.n {
                return Err(GraphError::VertexOutOfRange(e.hi(), g.n));
            }
            if g.contains_edge(e) {
                return Err(GraphError::ParallelEdge(e.lo(), e.hi()));
            }
            g.adj[e.lo()] |= 1 << e.hi();
            g.adj[e.hi()] |= 1 << e.lo();
        }
        Ok(g)
    }

    /// Disjoint union, with `other` relabelled to follow `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|m| m << self.n));
        Ok(Graph { n, adj })
    }

    /// Vertex masks of the connected components, ordered by least vertex.
    pub fn components(&self) -> Vec<VertexMask> {
        self.components_within(self.vertex_mask())
    }

    /// Components of the subgraph induced by `within`.
    pub fn components_within(&self, within: VertexMask) -> Vec<VertexMask> {
        let mut left = within;
        let mut out = Vec::new();
        while left != 0 {
            let comp = self.reach(left.trailing_zeros() as usize, within);
            out.push(comp);
            left &= !comp;
        }
        out
    }

    /// Vertices reachable from `start` inside `within` (which must contain it).
    pub fn reach(&self, start: Vertex, within: VertexMask) -> VertexMask {
        let mut seen: VertexMask = 1 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & within & !seen;
            seen |= frontier;
        }
        seen
    }

    /// Connected; the null graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_minus_vertex_is_triangle() {
        let k4 = Graph::complete(4).unwrap();
        let (g, map) = k4.delete_vertices(&[2]).unwrap();
        assert_eq!(g, Graph::complete(3).unwrap());
        assert_eq!(map.new_of(3), Some(2));
        assert_eq!(map.new_of(2), None);
        assert_eq!(map.old_of(2), 3);
    }

    #[test]
    fn delete_nothing_is_identity() {
        let g = Graph::cycle(6).unwrap();
        let (h, map) = g.delete_vertices(&[]).unwrap();
        assert_eq!(g, h);
        assert_eq!(map, LabelMap::identity(6));
        assert_eq!(g.delete_edges(&[]).unwrap(), g);
    }

    #[test]
    fn c6_minus_edge_is_path() {
        let g = Graph::cycle(6).unwrap();
        let h = g.delete_edges(&[Edge::new(5, 0)]).unwrap();
        assert_eq!(h, Graph::path(6).unwrap());
    }

    #[test]
    fn k4_minus_perfect_matching_is_c4() {
        let k4 = Graph::complete(4).unwrap();
        let h = k4
            .delete_edges(&[Edge::new(0, 2), Edge::new(1, 3)])
            .unwrap();
        assert_eq!(h, Graph::cycle(4).unwrap());
    }

    #[test]
    fn c6_minus_subpath_is_p3() {
        let g = Graph::cycle(6).unwrap();
        for c in 0..6 {
            let p = VertexPath3::new((c + 5) % 6, c, (c + 1) % 6);
            let (h, _) = g.delete_path(&p).unwrap();
            assert_eq!(h.n(), 3, "center {c}");
            assert_eq!(h.edge_count(), 2);
            assert!(h.is_connected());
        }
    }

    #[test]
    fn triangle_minus_spanning_path_is_null() {
        let g = Graph::complete(3).unwrap();
        let (h, _) = g.delete_path(&VertexPath3::new(0, 1, 2)).unwrap();
        assert_eq!(h.n(), 0);
    }

    #[test]
    fn errors() {
        let g = Graph::cycle(5).unwrap();
        assert_eq!(
            g.delete_vertices(&[5]),
            Err(GraphError::VertexOutOfRange(5, 5))
        );
        assert_eq!(
            g.delete_edges(&[Edge::new(0, 2)]),
            Err(GraphError::NotAnEdge(0, 2))
        );
        assert!(matches!(
            g.delete_path(&VertexPath3::new(0, 2, 4)),
            Err(GraphError::NotAPath(_))
        ));
        assert_eq!(Graph::from_edges(3, [(0, 0)]), Err(GraphError::Loop(0)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::ParallelEdge(1, 0))
        );
        assert_eq!(Graph::empty(65), Err(GraphError::TooManyVertices(65)));
    }

    #[test]
    fn path3_identity_ignores_endpoint_order() {
        assert_eq!(VertexPath3::new(3, 1, 0), VertexPath3::new(0, 1, 3));
        assert_ne!(VertexPath3::new(0, 1, 3), VertexPath3::new(1, 0, 3));
    }

    #[test]
    fn paths3_count() {
        // sum over centers of C(deg, 2)
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.paths3().len(), 12);
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(c6.paths3().len(), 6);
    }

    #[test]
    fn components_in_order() {
        let g = Graph::from_edges(6, [(0, 3), (1, 2), (4, 5)]).unwrap();
        assert_eq!(g.components(), vec![0b001001, 0b000110, 0b110000]);
        assert!(!g.is_connected());
    }
}
