//! Triangle blow-ups of cubic graphs and the explicit Λ-factor constructions
//! on them.
//!
//! Replacing every vertex `v` of a cubic graph `F` by a triangle `Δ_v` gives
//! a claw-free cubic graph `F^Δ` in which every vertex lies in exactly one
//! triangle. The non-triangle edges of `F^Δ` correspond one-to-one with the
//! edges of `F`. For a 2-connected `F`, every 3-vertex path `L` of `F^Δ`
//! extends to a Λ-factor, and the factor can be chosen with all, none, or
//! (for non-triangle `L`) some of its components inducing triangles. The
//! constructions below lift a cycle structure of `F` into `F^Δ`: a cycle
//! `c_0 .. c_{k-1}` of `F` becomes a Hamiltonian cycle of the lifted
//! subgraph that enters `Δ_{c_i}`, visits its third vertex and leaves, and
//! that cycle of length `3k` is cut into `k` paths.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{ConstructionError, GraphError, StructureError};
use crate::graph::{bits, Edge, Graph, Vertex, VertexPath3, MAX_VERTICES};
use crate::matching::perfect_matching;
use crate::solver::{LambdaPacking, PackingConstraints};
use crate::structure::{check_blowup_shape, is_cubic, vertex_connectivity};

/// A cubic base graph together with its triangle blow-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupMap {
    pub base: Graph,
    pub blown: Graph,
    /// `triangles[v]` is `Δ_v`, sorted.
    pub triangles: Vec<[Vertex; 3]>,
    /// Base vertex whose triangle contains each blown vertex.
    pub owner: Vec<Vertex>,
    /// Base edge to the non-triangle blown edge joining the two triangles.
    pub alpha: BTreeMap<Edge, Edge>,
}

impl BlowupMap {
    /// The vertex of `Δ_v` joined to `Δ_u`; `u` must be a base neighbour of
    /// `v`.
    pub fn port(&self, v: Vertex, u: Vertex) -> Vertex {
        let e = self.alpha[&Edge::new(v, u)];
        if self.owner[e.lo()] == v {
            e.lo()
        } else {
            e.hi()
        }
    }

    /// Base edge of a non-triangle blown edge.
    pub fn alpha_inverse(&self, e: Edge) -> Option<Edge> {
        let (a, b) = (self.owner[e.lo()], self.owner[e.hi()]);
        (a != b && self.alpha.get(&Edge::new(a, b)) == Some(&e)).then(|| Edge::new(a, b))
    }

    /// The blown vertex joined to `x` by its non-triangle edge.
    pub fn outside_neighbor(&self, x: Vertex) -> Vertex {
        let v = self.owner[x];
        self.blown
            .neighbors(x)
            .find(|&y| self.owner[y] != v)
            .expect("every blown vertex has one edge leaving its triangle")
    }

    /// Infer the base graph of an arbitrarily labelled blow-up. Base vertex
    /// `i` is the `i`-th triangle in lexicographic order.
    pub fn recognize(g: &Graph) -> Result<BlowupMap, StructureError> {
        let profile = check_blowup_shape(g)?;
        let triangles = profile.triangles;
        let mut owner = vec![0; g.n()];
        for (i, t) in triangles.iter().enumerate() {
            for &x in t {
                owner[x] = i;
            }
        }
        let mut alpha = BTreeMap::new();
        let mut base_edges = Vec::new();
        for e in g.edges() {
            let (a, b) = (owner[e.lo()], owner[e.hi()]);
            if a == b {
                continue;
            }
            if alpha.insert(Edge::new(a, b), e).is_some() {
                return Err(StructureError::NotBlowup(format!(
                    "triangles {a} and {b} are joined by two edges"
                )));
            }
            base_edges.push((a, b));
        }
        let base = Graph::from_edges(triangles.len(), base_edges)?;
        Ok(BlowupMap {
            base,
            blown: g.clone(),
            triangles,
            owner,
            alpha,
        })
    }

    /// Check the structural invariants of the map.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.blown.n() != 3 * self.base.n() {
            return Err("blown graph must have three vertices per base vertex".into());
        }
        let mut seen = 0u64;
        for (v, t) in self.triangles.iter().enumerate() {
            let p = VertexPath3::new(t[1], t[0], t[2]);
            if !p.induces_triangle(&self.blown) {
                return Err(format!("Δ_{v} does not induce a triangle"));
            }
            for &x in t {
                if seen >> x & 1 == 1 || self.owner[x] != v {
                    return Err(format!("triangles do not partition the vertices at {x}"));
                }
                seen |= 1 << x;
            }
        }
        if seen != self.blown.vertex_mask() {
            return Err("triangles do not cover the blown graph".into());
        }
        let non_triangle: Vec<Edge> = self
            .blown
            .edges()
            .into_iter()
            .filter(|e| self.owner[e.lo()] != self.owner[e.hi()])
            .collect();
        if non_triangle.len() != self.alpha.len() || self.alpha.len() != self.base.edge_count() {
            return Err("alpha is not a bijection onto the non-triangle edges".into());
        }
        for (b, e) in &self.alpha {
            if !self.base.contains_edge(*b) || !self.blown.contains_edge(*e) {
                return Err(format!("alpha maps {b} to a non-edge {e}"));
            }
            let (x, y) = (self.owner[e.lo()], self.owner[e.hi()]);
            if Edge::new(x, y) != *b {
                return Err(format!("alpha({b}) = {e} joins the wrong triangles"));
            }
        }
        Ok(())
    }
}

/// Replace every vertex of the cubic graph `f` by a triangle. Blown vertex
/// `3v + i` is the port of `Δ_v` towards the `i`-th neighbour of `v`.
pub fn triangle_blowup(f: &Graph) -> Result<BlowupMap, ConstructionError> {
    if !is_cubic(f) {
        return Err(ConstructionError::NotCubic);
    }
    let n = 3 * f.n();
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    let slot = |v: Vertex, u: Vertex| 3 * v + f.neighbors(v).position(|w| w == u).unwrap();
    let mut edges = Vec::with_capacity(3 * f.n() + f.edge_count());
    let mut triangles = Vec::with_capacity(f.n());
    for v in 0..f.n() {
        let t = [3 * v, 3 * v + 1, 3 * v + 2];
        edges.extend([(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]);
        triangles.push(t);
    }
    let mut alpha = BTreeMap::new();
    for e in f.edges() {
        let (v, u) = e.endpoints();
        let (a, b) = (slot(v, u), slot(u, v));
        edges.push((a, b));
        alpha.insert(e, Edge::new(a, b));
    }
    let blown = Graph::from_edges(n, edges)?;
    Ok(BlowupMap {
        base: f.clone(),
        blown,
        triangles,
        owner: (0..n).map(|x| x / 3).collect(),
        alpha,
    })
}

/// Spanning disjoint cycles of the cubic 2-connected graph `a` whose edges
/// include both edges of `j`: the complement of a perfect matching of
/// `a - E(j)`. Each cycle starts at its least vertex and continues towards
/// its smaller neighbour.
pub fn two_factor_containing_path(
    a: &Graph,
    j: &VertexPath3,
) -> Result<Vec<Vec<Vertex>>, ConstructionError> {
    if !is_cubic(a) {
        return Err(ConstructionError::NotCubic);
    }
    if vertex_connectivity(a) < 2 {
        return Err(ConstructionError::NotTwoConnected);
    }
    if !j.is_valid_in(a) {
        return Err(GraphError::NotAPath(j.to_string()).into());
    }
    let reduced = a.delete_edges(&j.edges())?;
    let matching = perfect_matching(&reduced).ok_or_else(|| {
        ConstructionError::Failed(format!(
            "no perfect matching of the graph minus the edges of {j}"
        ))
    })?;
    let factor = a.delete_edges(&matching)?;
    let cycles = cycles_of_two_regular(&factor)?;
    if j.edges().iter().any(|e| !factor.contains_edge(*e)) {
        return Err(ConstructionError::Failed(format!(
            "2-factor misses an edge of {j}"
        )));
    }
    Ok(cycles)
}

fn cycles_of_two_regular(f: &Graph) -> Result<Vec<Vec<Vertex>>, ConstructionError> {
    if (0..f.n()).any(|v| f.degree(v) != 2) {
        return Err(ConstructionError::Failed(
            "complement of the matching is not 2-regular".into(),
        ));
    }
    let mut left = f.vertex_mask();
    let mut cycles = Vec::new();
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut cycle = vec![start];
        let mut prev = start;
        let mut cur = f.neighbors(start).next().unwrap();
        while cur != start {
            cycle.push(cur);
            let next = f.neighbors(cur).find(|&w| w != prev).unwrap();
            prev = cur;
            cur = next;
        }
        for &v in &cycle {
            left &= !(1 << v);
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Triangle structure demanded of a blow-up factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BlowupMode {
    /// `L` induces a triangle; every component induces a triangle.
    AllTriangles,
    /// `L` does not induce a triangle; no component induces a triangle.
    NoTriangles,
    /// `L` does not induce a triangle; some component induces a triangle.
    SomeTriangle,
}

impl BlowupMode {
    pub const ALL: [BlowupMode; 3] = [
        BlowupMode::AllTriangles,
        BlowupMode::NoTriangles,
        BlowupMode::SomeTriangle,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            BlowupMode::AllTriangles => "a1",
            BlowupMode::NoTriangles => "a2",
            BlowupMode::SomeTriangle => "a3",
        }
    }

    /// Modes applicable to a path, by whether it induces a triangle.
    pub fn for_path(induces_triangle: bool) -> &'static [BlowupMode] {
        if induces_triangle {
            &[BlowupMode::AllTriangles]
        } else {
            &[BlowupMode::NoTriangles, BlowupMode::SomeTriangle]
        }
    }
}

/// A Λ-factor of `m.blown` containing `l`, built explicitly for `mode`.
pub fn blowup_factor(
    m: &BlowupMap,
    l: &VertexPath3,
    mode: BlowupMode,
) -> Result<LambdaPacking, ConstructionError> {
    if vertex_connectivity(&m.base) < 2 {
        return Err(ConstructionError::NotTwoConnected);
    }
    if !l.is_valid_in(&m.blown) {
        return Err(GraphError::NotAPath(l.to_string()).into());
    }
    let triangle = l.induces_triangle(&m.blown);
    if BlowupMode::for_path(triangle).iter().all(|&md| md != mode) {
        return Err(ConstructionError::ModeMismatch {
            mode: mode.tag().into(),
            path: l.to_string(),
            reason: if triangle {
                "path induces a triangle".into()
            } else {
                "path does not induce a triangle".into()
            },
        });
    }

    let paths = match mode {
        BlowupMode::AllTriangles => m
            .triangles
            .iter()
            .map(|t| {
                if l.mask() == (1 << t[0]) | (1 << t[1]) | (1 << t[2]) {
                    *l
                } else {
                    VertexPath3::new(t[1], t[0], t[2])
                }
            })
            .collect(),
        BlowupMode::NoTriangles => {
            let anchor = Anchor::of(m, l);
            let cycles = two_factor_containing_path(&m.base, &anchor.base_path())?;
            let mut paths = Vec::new();
            for cycle in cycles {
                let cycle = if cycle.contains(&anchor.hub) {
                    anchor.orient(&cycle)?
                } else {
                    cycle
                };
                paths.extend(lift_cycle(m, &cycle)?);
            }
            paths
        }
        BlowupMode::SomeTriangle => {
            let anchor = Anchor::of(m, l);
            let cycle = shortest_proper_cycle_through(&m.base, anchor.from, anchor.hub, anchor.to)
                .ok_or_else(|| {
                    ConstructionError::Failed(format!(
                        "no non-spanning cycle through {}",
                        anchor.base_path()
                    ))
                })?;
            let mut paths = lift_cycle(m, &cycle)?;
            for v in (0..m.base.n()).filter(|v| !cycle.contains(v)) {
                let t = m.triangles[v];
                paths.push(VertexPath3::new(t[1], t[0], t[2]));
            }
            paths
        }
    };

    let packing = LambdaPacking::new(paths);
    let c = PackingConstraints::none().require_path(*l);
    if !packing.is_factor(&m.blown, &c) {
        let why = packing
            .validate(&m.blown, &c)
            .err()
            .unwrap_or_else(|| "not spanning".into());
        return Err(ConstructionError::Failed(format!(
            "construction is not a factor containing {l}: {why}"
        )));
    }
    let tri = packing.triangle_components(&m.blown);
    let ok = match mode {
        BlowupMode::AllTriangles => tri == packing.size(),
        BlowupMode::NoTriangles => tri == 0,
        BlowupMode::SomeTriangle => tri >= 1,
    };
    if !ok {
        return Err(ConstructionError::Failed(format!(
            "mode {} violated: {tri} of {} components induce triangles",
            mode.tag(),
            packing.size()
        )));
    }
    Ok(packing)
}

/// The base path `from - hub - to` that a non-triangle path `x z z1` of the
/// blow-up projects to: `z` lies in `Δ_hub`, `z1` in `Δ_to`, and the third
/// vertex `s` of `Δ_hub` leads to `Δ_from`.
struct Anchor {
    from: Vertex,
    hub: Vertex,
    to: Vertex,
}

impl Anchor {
    fn of(m: &BlowupMap, l: &VertexPath3) -> Anchor {
        let z = l.center();
        let (a, b) = l.ends();
        let z1 = if m.owner[a] == m.owner[z] { b } else { a };
        let x = if z1 == a { b } else { a };
        let hub = m.owner[z];
        let s = *m.triangles[hub]
            .iter()
            .find(|&&w| w != x && w != z)
            .expect("triangle has a third vertex");
        Anchor {
            from: m.owner[m.outside_neighbor(s)],
            hub,
            to: m.owner[z1],
        }
    }

    fn base_path(&self) -> VertexPath3 {
        VertexPath3::new(self.from, self.hub, self.to)
    }

    /// Rotate and orient `cycle` to read `hub, to, ..., from`.
    fn orient(&self, cycle: &[Vertex]) -> Result<Vec<Vertex>, ConstructionError> {
        let k = cycle.len();
        let i = cycle.iter().position(|&v| v == self.hub).unwrap();
        let fwd: Vec<Vertex> = (0..k).map(|d| cycle[(i + d) % k]).collect();
        if fwd[1] == self.to && fwd[k - 1] == self.from {
            return Ok(fwd);
        }
        let back: Vec<Vertex> = (0..k).map(|d| cycle[(i + k - d) % k]).collect();
        if back[1] == self.to && back[k - 1] == self.from {
            return Ok(back);
        }
        Err(ConstructionError::Failed(format!(
            "cycle {cycle:?} does not pass through {}",
            self.base_path()
        )))
    }
}

/// Lift a base cycle to the Hamiltonian cycle of its blown subgraph and cut
/// it into paths `(mid_i, exit_i, enter_{i+1})`, none of which induces a
/// triangle.
fn lift_cycle(m: &BlowupMap, cycle: &[Vertex]) -> Result<Vec<VertexPath3>, ConstructionError> {
    let k = cycle.len();
    if k < 3 {
        return Err(ConstructionError::Failed(format!(
            "degenerate cycle {cycle:?}"
        )));
    }
    let mut ham = Vec::with_capacity(3 * k);
    for i in 0..k {
        let v = cycle[i];
        let enter = m.port(v, cycle[(i + k - 1) % k]);
        let exit = m.port(v, cycle[(i + 1) % k]);
        let mid = *m.triangles[v]
            .iter()
            .find(|&&x| x != enter && x != exit)
            .ok_or_else(|| ConstructionError::Failed(format!("ports of Δ_{v} coincide")))?;
        ham.extend([enter, mid, exit]);
    }
    let len = ham.len();
    let lifted_edges = (0..len).all(|i| m.blown.has_edge(ham[i], ham[(i + 1) % len]));
    let spans = ham.iter().fold(0u64, |acc, &x| acc | 1 << x).count_ones() as usize == len;
    if len % 3 != 0 || !lifted_edges || !spans {
        return Err(ConstructionError::Failed(format!(
            "lift of cycle {cycle:?} is not a Hamiltonian cycle of length divisible by 3"
        )));
    }
    Ok((0..k)
        .map(|i| VertexPath3::new(ham[3 * i + 1], ham[3 * i + 2], ham[(3 * i + 3) % len]))
        .collect())
}

/// Shortest cycle through the path `from - hub - to` that misses at least
/// one vertex, as `hub, to, ..., from`. Ties go to the lexicographically
/// first sequence.
pub fn shortest_proper_cycle_through(
    g: &Graph,
    from: Vertex,
    hub: Vertex,
    to: Vertex,
) -> Option<Vec<Vertex>> {
    fn dfs(
        g: &Graph,
        cur: Vertex,
        target: Vertex,
        avoid: u64,
        left: usize,
        path: &mut Vec<Vertex>,
    ) -> bool {
        if cur == target {
            return true;
        }
        if left == 0 {
            return false;
        }
        for next in bits(g.neighbor_mask(cur) & !avoid) {
            path.push(next);
            if dfs(g, next, target, avoid | 1 << next, left - 1, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    if !(g.has_edge(from, hub) && g.has_edge(hub, to)) || from == to {
        return None;
    }
    let n = g.n();
    // a path to..from with `len` edges gives a cycle on len + 2 vertices
    for len in 1..n.saturating_sub(2) {
        let mut path = vec![to];
        if dfs(g, to, from, 1 << hub | 1 << to, len, &mut path) {
            let mut cycle = vec![hub];
            cycle.extend(path);
            if cycle.len() < n {
                return Some(cycle);
            }
        }
    }
    None
}
