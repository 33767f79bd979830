//! Structural predicates and decompositions: claws, vertex connectivity,
//! blocks and end-blocks, triangles, and the obstruction classes for
//! three-edge deletions from a triangle blow-up.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{GraphError, StructureError};
use crate::graph::{bits, mask_above, Edge, Graph, Vertex, VertexMask};

pub fn degree(g: &Graph, v: Vertex) -> Result<usize, GraphError> {
    if v >= g.n() {
        return Err(GraphError::VertexOutOfRange(v, g.n()));
    }
    Ok(g.degree(v))
}

/// Every vertex has degree 3. The null graph is not cubic.
pub fn is_cubic(g: &Graph) -> bool {
    g.n() > 0 && (0..g.n()).all(|v| g.degree(v) == 3)
}

/// Some induced claw `[center, a, b, c]`, if one exists.
pub fn find_claw(g: &Graph) -> Option<[Vertex; 4]> {
    for v in 0..g.n() {
        let nb = g.neighbor_mask(v);
        if nb.count_ones() < 3 {
            continue;
        }
        for a in bits(nb) {
            let after_a = nb & !g.neighbor_mask(a) & mask_above(a);
            for b in bits(after_a) {
                let rest = after_a & !g.neighbor_mask(b) & mask_above(b);
                if rest != 0 {
                    return Some([v, a, b, rest.trailing_zeros() as usize]);
                }
            }
        }
    }
    None
}

pub fn is_claw_free(g: &Graph) -> bool {
    find_claw(g).is_none()
}

/// Size of a minimum vertex cut; `n - 1` for complete graphs and 0 for
/// disconnected graphs or graphs with fewer than two vertices.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    if !g.is_connected() {
        return 0;
    }
    let mut best = g.min_degree();
    let mut flow = SplitFlow::new(g);
    // Some vertex among the first best+1 survives any minimum cut.
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                best = best.min(flow.local_connectivity(i, j, best));
            }
        }
        i += 1;
    }
    best
}

/// Unit-capacity vertex-split network for counting internally disjoint
/// paths.
struct SplitFlow<'a> {
    g: &'a Graph,
    residual: Vec<Vec<i32>>,
}

impl<'a> SplitFlow<'a> {
    const INF: i32 = 1 << 20;

    fn new(g: &'a Graph) -> Self {
        SplitFlow {
            g,
            residual: vec![vec![0; 2 * g.n()]; 2 * g.n()],
        }
    }

    fn reset(&mut self, s: Vertex, t: Vertex) {
        for row in &mut self.residual {
            row.iter_mut().for_each(|c| *c = 0);
        }
        for v in 0..self.g.n() {
            let cap = if v == s || v == t { Self::INF } else { 1 };
            self.residual[2 * v][2 * v + 1] = cap;
            for u in self.g.neighbors(v) {
                self.residual[2 * v + 1][2 * u] = Self::INF;
            }
        }
    }

    /// Number of internally disjoint s-t paths, stopping early at `limit`.
    fn local_connectivity(&mut self, s: Vertex, t: Vertex, limit: usize) -> usize {
        self.reset(s, t);
        let (src, sink) = (2 * s + 1, 2 * t);
        let nodes = 2 * self.g.n();
        let mut flow = 0;
        let mut parent = vec![usize::MAX; nodes];
        let mut queue = Vec::with_capacity(nodes);
        while flow < limit {
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            parent[src] = src;
            queue.clear();
            queue.push(src);
            let mut head = 0;
            while head < queue.len() && parent[sink] == usize::MAX {
                let u = queue[head];
                head += 1;
                for (v, p) in parent.iter_mut().enumerate() {
                    if *p == usize::MAX && self.residual[u][v] > 0 {
                        *p = u;
                        queue.push(v);
                    }
                }
            }
            if parent[sink] == usize::MAX {
                break;
            }
            let mut v = sink;
            while v != src {
                let u = parent[v];
                self.residual[u][v] -= 1;
                self.residual[v][u] += 1;
                v = u;
            }
            flow += 1;
        }
        flow
    }
}

/// One block: a maximal 2-connected subgraph or a bridge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// Vertices also lying in another block.
    pub boundary: Vec<Vertex>,
}

impl Block {
    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }

    pub fn inner(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices
            .iter()
            .copied()
            .filter(|v| !self.boundary.contains(v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Sorted by vertex list.
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
    /// Number of end-blocks (exactly one boundary vertex). A component that
    /// is a single bridge contributes 2.
    pub end_blocks: usize,
}

impl BlockDecomposition {
    pub fn end_block_indices(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.boundary.len() == 1)
            .map(|(i, _)| i)
            .collect()
    }
}

pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut st = Tarjan {
        g,
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 0..n {
        if st.disc[v] == usize::MAX {
            st.dfs(v, usize::MAX);
        }
    }

    let mut membership = vec![0usize; n];
    let mut raw: Vec<(VertexMask, Vec<Edge>)> = st
        .blocks
        .into_iter()
        .map(|mut edges| {
            edges.sort();
            let mask = edges.iter().fold(0, |m, e| m | e.mask());
            (mask, edges)
        })
        .collect();
    raw.sort_by_key(|(mask, _)| bits(*mask).collect::<Vec<_>>());
    for (mask, _) in &raw {
        for v in bits(*mask) {
            membership[v] += 1;
        }
    }
    let cut_vertices: Vec<Vertex> = (0..n).filter(|&v| membership[v] > 1).collect();
    let blocks: Vec<Block> = raw
        .into_iter()
        .map(|(mask, edges)| Block {
            vertices: bits(mask).collect(),
            boundary: bits(mask).filter(|&v| membership[v] > 1).collect(),
            edges,
        })
        .collect();

    let mut end_blocks = blocks.iter().filter(|b| b.boundary.len() == 1).count();
    for comp in g.components() {
        let inside: Vec<&Block> = blocks
            .iter()
            .filter(|b| comp >> b.vertices[0] & 1 == 1)
            .collect();
        if inside.len() == 1 && inside[0].is_bridge() {
            end_blocks += 2;
        }
    }
    BlockDecomposition {
        blocks,
        cut_vertices,
        end_blocks,
    }
}

struct Tarjan<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<Edge>,
    blocks: Vec<Vec<Edge>>,
}

impl Tarjan<'_> {
    fn dfs(&mut self, v: Vertex, parent: Vertex) {
        self.disc[v] = self.time;
        self.low[v] = self.time;
        self.time += 1;
        for u in self.g.neighbors(v) {
            if self.disc[u] == usize::MAX {
                self.stack.push(Edge::new(v, u));
                self.dfs(u, v);
                self.low[v] = self.low[v].min(self.low[u]);
                if self.low[u] >= self.disc[v] {
                    let top = Edge::new(v, u);
                    let mut block = Vec::new();
                    while let Some(e) = self.stack.pop() {
                        block.push(e);
                        if e == top {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if u != parent && self.disc[u] < self.disc[v] {
                self.stack.push(Edge::new(v, u));
                self.low[v] = self.low[v].min(self.disc[u]);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleProfile {
    /// Sorted vertex triples in lexicographic order.
    pub triangles: Vec<[Vertex; 3]>,
    pub vertex_counts: Vec<usize>,
    /// Only edges lying in at least one triangle appear.
    pub edge_counts: BTreeMap<Edge, usize>,
}

impl TriangleProfile {
    pub fn edge_count(&self, e: Edge) -> usize {
        self.edge_counts.get(&e).copied().unwrap_or(0)
    }

    /// The unique triangle containing `v`, if `v` lies in exactly one.
    pub fn triangle_of(&self, v: Vertex) -> Option<[Vertex; 3]> {
        let mut found = self.triangles.iter().filter(|t| t.contains(&v));
        let first = found.next()?;
        found.next().is_none().then_some(*first)
    }
}

pub fn triangle_profile(g: &Graph) -> TriangleProfile {
    let mut triangles = Vec::new();
    let mut vertex_counts = vec![0; g.n()];
    let mut edge_counts = BTreeMap::new();
    for a in 0..g.n() {
        let up_a = g.neighbor_mask(a) & mask_above(a);
        for b in bits(up_a) {
            let common = up_a & g.neighbor_mask(b) & mask_above(b);
            for c in bits(common) {
                triangles.push([a, b, c]);
                for v in [a, b, c] {
                    vertex_counts[v] += 1;
                }
                for e in [Edge::new(a, b), Edge::new(a, c), Edge::new(b, c)] {
                    *edge_counts.entry(e).or_insert(0) += 1;
                }
            }
        }
    }
    TriangleProfile {
        triangles,
        vertex_counts,
        edge_counts,
    }
}

/// Every vertex lies in exactly one triangle and the graph is cubic: the
/// shape of a triangle blow-up of a cubic graph.
pub fn check_blowup_shape(g: &Graph) -> Result<TriangleProfile, StructureError> {
    if !is_cubic(g) {
        return Err(StructureError::NotBlowup("graph is not cubic".into()));
    }
    let profile = triangle_profile(g);
    if let Some(v) = (0..g.n()).find(|&v| profile.vertex_counts[v] != 1) {
        return Err(StructureError::NotBlowup(format!(
            "vertex {v} lies in {} triangles",
            profile.vertex_counts[v]
        )));
    }
    Ok(profile)
}

/// Obstruction classes for deleting three edges from a triangle blow-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeTripleClass {
    /// The three edges share a vertex.
    #[serde(rename = "E1_CLAW")]
    Claw,
    /// The three edges form a triangle.
    #[serde(rename = "E2_TRIANGLE")]
    Triangle,
    /// Two edges of a triangle plus a disjoint triangle-free edge whose
    /// removal together with them disconnects the graph.
    #[serde(rename = "E3")]
    CutPendant,
    /// Two edges of a triangle `T` plus an edge of another triangle `D`,
    /// separated once the edge `d` leaving `D` and the edge `t` left at the
    /// isolated vertex of `T` are removed.
    #[serde(rename = "E4")]
    SplitTriangles,
    #[serde(rename = "NONE")]
    Unobstructed,
}

impl EdgeTripleClass {
    pub fn is_obstruction(self) -> bool {
        self != EdgeTripleClass::Unobstructed
    }

    pub fn tag(self) -> &'static str {
        match self {
            EdgeTripleClass::Claw => "E1_CLAW",
            EdgeTripleClass::Triangle => "E2_TRIANGLE",
            EdgeTripleClass::CutPendant => "E3",
            EdgeTripleClass::SplitTriangles => "E4",
            EdgeTripleClass::Unobstructed => "NONE",
        }
    }
}

impl fmt::Display for EdgeTripleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Classify a set of three edges of a triangle blow-up `g`. Conditions are
/// tested in the order claw, triangle, cut-pendant, split-triangles.
pub fn classify_edge_triple(
    g: &Graph,
    edges: [Edge; 3],
) -> Result<EdgeTripleClass, StructureError> {
    let [a, b, c] = edges;
    if a == b || a == c || b == c {
        return Err(StructureError::NotThreeEdges);
    }
    for e in edges {
        if !g.contains_edge(e) {
            return Err(GraphError::NotAnEdge(e.lo(), e.hi()).into());
        }
    }
    let profile = check_blowup_shape(g)?;
    Ok(classify_with_profile(g, &profile, edges))
}

/// As [`classify_edge_triple`] with the blow-up shape already verified.
pub fn classify_with_profile(
    g: &Graph,
    profile: &TriangleProfile,
    edges: [Edge; 3],
) -> EdgeTripleClass {
    let [a, b, c] = edges;
    let span = a.mask() | b.mask() | c.mask();
    let common = a.mask() & b.mask() & c.mask();
    if common != 0 {
        return EdgeTripleClass::Claw;
    }
    if span.count_ones() == 3 {
        return EdgeTripleClass::Triangle;
    }

    // Exactly two components: a 2-edge path and a disjoint edge.
    let (pair, single) = if a.mask() & b.mask() != 0 && c.mask() & (a.mask() | b.mask()) == 0 {
        ([a, b], c)
    } else if a.mask() & c.mask() != 0 && b.mask() & (a.mask() | c.mask()) == 0 {
        ([a, c], b)
    } else if b.mask() & c.mask() != 0 && a.mask() & (b.mask() | c.mask()) == 0 {
        ([b, c], a)
    } else {
        return EdgeTripleClass::Unobstructed;
    };
    let pair_span = pair[0].mask() | pair[1].mask();
    let [p, q, r] = {
        let v: Vec<_> = bits(pair_span).collect();
        [v[0], v[1], v[2]]
    };
    let pair_in_triangle = g.has_edge(p, q) && g.has_edge(p, r) && g.has_edge(q, r);
    if !pair_in_triangle {
        return EdgeTripleClass::Unobstructed;
    }
    // isolated vertex of T - E: the shared vertex of the pair
    let apex = (pair[0].mask() & pair[1].mask()).trailing_zeros() as usize;
    let outside = |v: Vertex| -> Edge {
        let tri = profile.triangle_of(v).expect("blow-up shape checked");
        let other = g
            .neighbors(v)
            .find(|u| !tri.contains(u))
            .expect("cubic vertex has an edge leaving its triangle");
        Edge::new(v, other)
    };
    let removed = g.delete_edges(&edges).expect("edges belong to g");

    if profile.edge_count(single) == 0 {
        if !removed.is_connected() {
            return EdgeTripleClass::CutPendant;
        }
        return EdgeTripleClass::Unobstructed;
    }

    let d_triangle = profile
        .triangle_of(single.lo())
        .expect("blow-up shape checked");
    let w = *d_triangle
        .iter()
        .find(|&&v| !single.contains(v))
        .expect("triangle has a vertex off the edge");
    let d = outside(w);
    let t = outside(apex);
    let mut cut = vec![d];
    if t != d {
        cut.push(t);
    }
    let split = g.delete_edges(&cut).expect("d and t are edges");
    let from_single = split.reach(single.lo(), split.vertex_mask());
    if from_single >> p & 1 == 0 {
        EdgeTripleClass::SplitTriangles
    } else {
        EdgeTripleClass::Unobstructed
    }
}
