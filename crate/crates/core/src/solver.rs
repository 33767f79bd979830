//! Exact maximum Λ-packing (vertex-disjoint 3-vertex paths) and constrained
//! Λ-factor search.
//!
//! The search branches on the lowest-index uncovered vertex `v`, trying every
//! allowed 3-vertex path through `v` in `(center, endpoints)` order and, when
//! maximising, finally leaving `v` uncovered. The surviving vertex set is
//! split into connected components which are solved independently and
//! memoised by vertex mask. In factor mode any component whose order is not
//! divisible by 3 fails immediately; when maximising, components with fewer
//! than three vertices are dropped and a component stops as soon as it reaches
//! `floor(|C| / 3)` paths.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::SolverError;
use crate::graph::{bits, mask_above, Edge, Graph, Vertex, VertexMask, VertexPath3};

/// Node budget used by the free functions in this module.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Restrictions on a packing query.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PackingConstraints {
    /// Must appear as a component of the packing.
    pub required_path: Option<VertexPath3>,
    /// Must lie inside some component of the packing.
    pub required_edge: Option<Edge>,
    /// May not be used by any component.
    pub forbidden_edges: Vec<Edge>,
    /// Removed before packing.
    pub deleted_vertices: Vec<Vertex>,
}

impl PackingConstraints {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn require_path(mut self, p: VertexPath3) -> Self {
        self.required_path = Some(p);
        self
    }

    pub fn require_edge(mut self, e: Edge) -> Self {
        self.required_edge = Some(e);
        self
    }

    pub fn forbid_edge(mut self, e: Edge) -> Self {
        self.forbidden_edges.push(e);
        self
    }

    pub fn forbid_edges(mut self, es: impl IntoIterator<Item = Edge>) -> Self {
        self.forbidden_edges.extend(es);
        self
    }

    pub fn delete_vertex(mut self, v: Vertex) -> Self {
        self.deleted_vertices.push(v);
        self
    }

    pub fn delete_vertices(mut self, vs: impl IntoIterator<Item = Vertex>) -> Self {
        self.deleted_vertices.extend(vs);
        self
    }

    pub fn deleted_mask(&self) -> VertexMask {
        self.deleted_vertices.iter().fold(0, |m, &v| m | 1 << v)
    }

    /// Check the constraints against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), SolverError> {
        let bad = |msg: String| Err(SolverError::Constraint(msg));
        if self.required_path.is_some() && self.required_edge.is_some() {
            return bad("required path and required edge are mutually exclusive".into());
        }
        for &v in &self.deleted_vertices {
            if v >= g.n() {
                return bad(format!("deleted vertex {v} out of range"));
            }
        }
        for &e in &self.forbidden_edges {
            if !g.contains_edge(e) {
                return bad(format!("forbidden edge {e} is not an edge"));
            }
        }
        let deleted = self.deleted_mask();
        if let Some(p) = self.required_path {
            if !p.is_valid_in(g) {
                return bad(format!("required path {p} is not a path of the graph"));
            }
            if p.mask() & deleted != 0 {
                return bad(format!("required path {p} uses a deleted vertex"));
            }
            if let Some(e) = p
                .edges()
                .into_iter()
                .find(|e| self.forbidden_edges.contains(e))
            {
                return bad(format!("required path {p} uses forbidden edge {e}"));
            }
        }
        if let Some(e) = self.required_edge {
            if !g.contains_edge(e) {
                return bad(format!("required edge {e} is not an edge"));
            }
            if e.mask() & deleted != 0 {
                return bad(format!("required edge {e} has a deleted endpoint"));
            }
            if self.forbidden_edges.contains(&e) {
                return bad(format!("required edge {e} is also forbidden"));
            }
        }
        Ok(())
    }
}

/// A set of vertex-disjoint 3-vertex paths, sorted by `(center, endpoints)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct LambdaPacking {
    pub paths: Vec<VertexPath3>,
}

impl LambdaPacking {
    pub fn new(mut paths: Vec<VertexPath3>) -> Self {
        paths.sort();
        LambdaPacking { paths }
    }

    pub fn size(&self) -> usize {
        self.paths.len()
    }

    pub fn covered(&self) -> VertexMask {
        self.paths.iter().fold(0, |m, p| m | p.mask())
    }

    /// Number of components whose vertices induce a triangle in `g`.
    pub fn triangle_components(&self, g: &Graph) -> usize {
        self.paths.iter().filter(|p| p.induces_triangle(g)).count()
    }

    /// Re-check every packing invariant against `g` and `c`.
    pub fn validate(&self, g: &Graph, c: &PackingConstraints) -> Result<(), String> {
        let deleted = c.deleted_mask();
        let mut used: VertexMask = 0;
        for p in &self.paths {
            if !p.is_valid_in(g) {
                return Err(format!("{p} is not a path of the graph"));
            }
            if p.mask() & used != 0 {
                return Err(format!("{p} overlaps another component"));
            }
            if p.mask() & deleted != 0 {
                return Err(format!("{p} uses a deleted vertex"));
            }
            if let Some(e) = p
                .edges()
                .into_iter()
                .find(|e| c.forbidden_edges.contains(e))
            {
                return Err(format!("{p} uses forbidden edge {e}"));
            }
            used |= p.mask();
        }
        let alive = (g.vertex_mask() & !deleted).count_ones() as usize;
        if self.size() > alive / 3 {
            return Err(format!("{} paths on {alive} vertices", self.size()));
        }
        if let Some(rp) = c.required_path {
            if !self.paths.contains(&rp) {
                return Err(format!("required path {rp} missing"));
            }
        }
        if let Some(e) = c.required_edge {
            if !self.paths.iter().any(|p| p.uses_edge(e)) {
                return Err(format!("required edge {e} not used"));
            }
        }
        Ok(())
    }

    /// Valid and covering every non-deleted vertex.
    pub fn is_factor(&self, g: &Graph, c: &PackingConstraints) -> bool {
        self.validate(g, c).is_ok() && self.covered() == g.vertex_mask() & !c.deleted_mask()
    }
}

/// Triangle requirement for every component of a factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TriangleMode {
    /// Every component induces a triangle.
    AllTriangle,
    /// No component induces a triangle.
    NoTriangle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PathFilter {
    Any,
    TriangleOnly,
    NonTriangleOnly,
}

/// Exact search with a per-query node budget. Single-threaded; create one
/// per worker.
#[derive(Debug, Clone)]
pub struct Solver {
    budget: u64,
    total_nodes: u64,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new(DEFAULT_BUDGET)
    }
}

impl Solver {
    pub fn new(budget: u64) -> Self {
        assert!(budget > 0, "budget must be positive");
        Solver {
            budget,
            total_nodes: 0,
        }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Search nodes expanded over the lifetime of this solver.
    pub fn total_nodes(&self) -> u64 {
        self.total_nodes
    }

    /// A maximum packing of `g` minus deleted vertices and forbidden edges,
    /// subject to the required path or edge.
    pub fn max_packing(
        &mut self,
        g: &Graph,
        c: &PackingConstraints,
    ) -> Result<LambdaPacking, SolverError> {
        c.validate(g)?;
        let mut s = Search::new(g, c, PathFilter::Any, self.budget);
        let res = s.max_with_constraints(c);
        self.total_nodes += s.nodes;
        let paths = res?.ok_or_else(|| {
            SolverError::NoPathThroughEdge(
                c.required_edge.map(|e| e.to_string()).unwrap_or_default(),
            )
        })?;
        Ok(LambdaPacking::new(paths))
    }

    /// A Λ-factor of the surviving graph satisfying `c`, or `None` when none
    /// exists.
    pub fn has_factor(
        &mut self,
        g: &Graph,
        c: &PackingConstraints,
    ) -> Result<Option<LambdaPacking>, SolverError> {
        self.factor_filtered(g, c, PathFilter::Any)
    }

    /// A Λ-factor in which every component (or no component) induces a
    /// triangle of `g`.
    pub fn factor_respecting_triangles(
        &mut self,
        g: &Graph,
        mode: TriangleMode,
        c: &PackingConstraints,
    ) -> Result<Option<LambdaPacking>, SolverError> {
        let filter = match mode {
            TriangleMode::AllTriangle => PathFilter::TriangleOnly,
            TriangleMode::NoTriangle => PathFilter::NonTriangleOnly,
        };
        self.factor_filtered(g, c, filter)
    }

    fn factor_filtered(
        &mut self,
        g: &Graph,
        c: &PackingConstraints,
        filter: PathFilter,
    ) -> Result<Option<LambdaPacking>, SolverError> {
        c.validate(g)?;
        let mut s = Search::new(g, c, filter, self.budget);
        let res = s.factor_with_constraints(c);
        self.total_nodes += s.nodes;
        Ok(res?.map(LambdaPacking::new))
    }
}

/// Maximum packing with the default budget.
pub fn max_packing(g: &Graph, c: &PackingConstraints) -> Result<LambdaPacking, SolverError> {
    Solver::default().max_packing(g, c)
}

/// Factor search with the default budget.
pub fn has_factor(g: &Graph, c: &PackingConstraints) -> Result<Option<LambdaPacking>, SolverError> {
    Solver::default().has_factor(g, c)
}

pub fn factor_respecting_triangles(
    g: &Graph,
    mode: TriangleMode,
    c: &PackingConstraints,
) -> Result<Option<LambdaPacking>, SolverError> {
    Solver::default().factor_respecting_triangles(g, mode, c)
}

/// λ(G): the size of a maximum packing with no constraints.
pub fn lambda(g: &Graph) -> Result<usize, SolverError> {
    Ok(max_packing(g, &PackingConstraints::none())?.size())
}

struct Search<'a> {
    host: &'a Graph,
    adj: Vec<VertexMask>,
    alive: VertexMask,
    filter: PathFilter,
    budget: u64,
    nodes: u64,
    failed: HashSet<VertexMask>,
    best: HashMap<VertexMask, u8>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, c: &PackingConstraints, filter: PathFilter, budget: u64) -> Self {
        let alive = g.vertex_mask() & !c.deleted_mask();
        let mut adj: Vec<VertexMask> = (0..g.n()).map(|v| g.neighbor_mask(v) & alive).collect();
        for e in &c.forbidden_edges {
            adj[e.lo()] &= !(1 << e.hi());
            adj[e.hi()] &= !(1 << e.lo());
        }
        Search {
            host: g,
            adj,
            alive,
            filter,
            budget,
            nodes: 0,
            failed: HashSet::new(),
            best: HashMap::new(),
        }
    }

    fn tick(&mut self) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(SolverError::ResourceExhausted {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    fn allowed(&self, p: &VertexPath3) -> bool {
        match self.filter {
            PathFilter::Any => true,
            PathFilter::TriangleOnly => p.induces_triangle(self.host),
            PathFilter::NonTriangleOnly => !p.induces_triangle(self.host),
        }
    }

    fn path_allowed_in(&self, p: &VertexPath3, mask: VertexMask) -> bool {
        let (a, b) = p.ends();
        let c = p.center();
        p.mask() & !mask == 0
            && self.adj[c] >> a & 1 == 1
            && self.adj[c] >> b & 1 == 1
            && self.allowed(p)
    }

    /// Allowed paths through `v` inside `mask`, in tie-break order.
    fn paths_through(&self, v: Vertex, mask: VertexMask) -> Vec<VertexPath3> {
        let mut out = Vec::new();
        let nb = self.adj[v] & mask;
        for a in bits(nb) {
            for b in bits(nb & mask_above(a)) {
                out.push(VertexPath3::new(a, v, b));
            }
            for b in bits(self.adj[a] & mask & !(1 << v)) {
                out.push(VertexPath3::new(v, a, b));
            }
        }
        out.retain(|p| self.allowed(p));
        out.sort();
        out
    }

    /// Allowed paths containing edge `e` inside the alive set.
    fn paths_with_edge(&self, e: Edge) -> Vec<VertexPath3> {
        let (u, v) = e.endpoints();
        if self.adj[u] >> v & 1 == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for w in bits(self.adj[u] & !(1 << v)) {
            out.push(VertexPath3::new(v, u, w));
        }
        for w in bits(self.adj[v] & !(1 << u)) {
            out.push(VertexPath3::new(u, v, w));
        }
        out.retain(|p| self.allowed(p));
        out.sort();
        out
    }

    fn components(&self, mask: VertexMask) -> Vec<VertexMask> {
        let mut left = mask;
        let mut out = Vec::new();
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let mut seen: VertexMask = 1 << start;
            let mut frontier = seen;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & mask & !seen;
                seen |= frontier;
            }
            out.push(seen);
            left &= !seen;
        }
        out
    }

    fn factor_with_constraints(
        &mut self,
        c: &PackingConstraints,
    ) -> Result<Option<Vec<VertexPath3>>, SolverError> {
        if let Some(p) = c.required_path {
            if !self.path_allowed_in(&p, self.alive) {
                return Ok(None);
            }
            return Ok(self.factor(self.alive & !p.mask())?.map(|mut rest| {
                rest.push(p);
                rest
            }));
        }
        if let Some(e) = c.required_edge {
            for p in self.paths_with_edge(e) {
                if let Some(mut rest) = self.factor(self.alive & !p.mask())? {
                    rest.push(p);
                    return Ok(Some(rest));
                }
            }
            return Ok(None);
        }
        self.factor(self.alive)
    }

    fn factor(&mut self, mask: VertexMask) -> Result<Option<Vec<VertexPath3>>, SolverError> {
        self.tick()?;
        if mask == 0 {
            return Ok(Some(Vec::new()));
        }
        if self.failed.contains(&mask) {
            return Ok(None);
        }
        let comps = self.components(mask);
        if comps.iter().any(|c| c.count_ones() % 3 != 0) {
            self.failed.insert(mask);
            return Ok(None);
        }
        if comps.len() > 1 {
            let mut all = Vec::new();
            for comp in comps {
                match self.factor(comp)? {
                    Some(paths) => all.extend(paths),
                    None => {
                        self.failed.insert(mask);
                        return Ok(None);
                    }
                }
            }
            return Ok(Some(all));
        }
        let v = mask.trailing_zeros() as usize;
        for p in self.paths_through(v, mask) {
            if let Some(mut rest) = self.factor(mask & !p.mask())? {
                rest.push(p);
                return Ok(Some(rest));
            }
        }
        self.failed.insert(mask);
        Ok(None)
    }

    fn max_with_constraints(
        &mut self,
        c: &PackingConstraints,
    ) -> Result<Option<Vec<VertexPath3>>, SolverError> {
        if let Some(p) = c.required_path {
            let mut rest = self.reconstruct(self.alive & !p.mask())?;
            rest.push(p);
            return Ok(Some(rest));
        }
        if let Some(e) = c.required_edge {
            let mut chosen: Option<(usize, VertexPath3)> = None;
            for p in self.paths_with_edge(e) {
                let value = 1 + self.best(self.alive & !p.mask())? as usize;
                if chosen.is_none_or(|(v, _)| value > v) {
                    chosen = Some((value, p));
                }
            }
            let Some((_, p)) = chosen else {
                return Ok(None);
            };
            let mut rest = self.reconstruct(self.alive & !p.mask())?;
            rest.push(p);
            return Ok(Some(rest));
        }
        Ok(Some(self.reconstruct(self.alive)?))
    }

    /// Drop components too small to hold a path.
    fn coverable(&self, mask: VertexMask) -> (VertexMask, Vec<VertexMask>) {
        let comps: Vec<_> = self
            .components(mask)
            .into_iter()
            .filter(|c| c.count_ones() >= 3)
            .collect();
        (comps.iter().fold(0, |m, c| m | c), comps)
    }

    fn best(&mut self, mask: VertexMask) -> Result<u8, SolverError> {
        self.tick()?;
        let (mask, comps) = self.coverable(mask);
        if mask == 0 {
            return Ok(0);
        }
        if let Some(&v) = self.best.get(&mask) {
            return Ok(v);
        }
        let value = if comps.len() > 1 {
            let mut sum = 0;
            for comp in comps {
                sum += self.best(comp)?;
            }
            sum
        } else {
            let upper = (mask.count_ones() / 3) as u8;
            let v = mask.trailing_zeros() as usize;
            let mut value = 0;
            for p in self.paths_through(v, mask) {
                let r = 1 + self.best(mask & !p.mask())?;
                if r > value {
                    value = r;
                    if value == upper {
                        break;
                    }
                }
            }
            if value < upper {
                value = value.max(self.best(mask & !(1 << v))?);
            }
            value
        };
        self.best.insert(mask, value);
        Ok(value)
    }

    /// Replay the choices of `best` to recover the first optimal packing.
    fn reconstruct(&mut self, mask: VertexMask) -> Result<Vec<VertexPath3>, SolverError> {
        let target = self.best(mask)?;
        let (mask, comps) = self.coverable(mask);
        if target == 0 {
            return Ok(Vec::new());
        }
        if comps.len() > 1 {
            let mut all = Vec::new();
            for comp in comps {
                all.extend(self.reconstruct(comp)?);
            }
            return Ok(all);
        }
        let v = mask.trailing_zeros() as usize;
        for p in self.paths_through(v, mask) {
            if 1 + self.best(mask & !p.mask())? == target {
                let mut rest = self.reconstruct(mask & !p.mask())?;
                rest.push(p);
                return Ok(rest);
            }
        }
        self.reconstruct(mask & !(1 << v))
    }
}

/// Exhaustive enumeration of every family of disjoint allowed paths, kept
/// free of the pruning and memoisation used by [`Solver`]. Limited to 12
/// vertices.
pub fn brute_force_max_packing(
    g: &Graph,
    c: &PackingConstraints,
) -> Result<LambdaPacking, SolverError> {
    let n = g.n();
    if n > 12 {
        return Err(SolverError::TooLarge(n));
    }
    c.validate(g)?;
    let deleted: Vec<bool> = (0..n).map(|v| c.deleted_vertices.contains(&v)).collect();
    let edge_ok = |u: usize, v: usize| {
        g.has_edge(u, v)
            && !deleted[u]
            && !deleted[v]
            && !c.forbidden_edges.contains(&Edge::new(u, v))
    };
    let mut candidates = Vec::new();
    for center in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if a != center && b != center && edge_ok(a, center) && edge_ok(center, b) {
                    candidates.push([a, center, b]);
                }
            }
        }
    }

    struct Enum<'c> {
        candidates: &'c [[usize; 3]],
        used: Vec<bool>,
        chosen: Vec<usize>,
        best: Option<Vec<usize>>,
        accept: &'c dyn Fn(&[[usize; 3]]) -> bool,
    }
    impl Enum<'_> {
        fn go(&mut self, i: usize) {
            if i == self.candidates.len() {
                let family: Vec<[usize; 3]> =
                    self.chosen.iter().map(|&k| self.candidates[k]).collect();
                let better = match &self.best {
                    None => true,
                    Some(b) => family.len() > b.len(),
                };
                if better && (self.accept)(&family) {
                    self.best = Some(self.chosen.clone());
                }
                return;
            }
            let [a, c, b] = self.candidates[i];
            if !self.used[a] && !self.used[b] && !self.used[c] {
                self.used[a] = true;
                self.used[b] = true;
                self.used[c] = true;
                self.chosen.push(i);
                self.go(i + 1);
                self.chosen.pop();
                self.used[a] = false;
                self.used[b] = false;
                self.used[c] = false;
            }
            self.go(i + 1);
        }
    }

    let accept = |family: &[[usize; 3]]| {
        let has = |a: usize, c0: usize, b: usize| {
            family
                .iter()
                .any(|p| p[1] == c0 && ((p[0] == a && p[2] == b) || (p[0] == b && p[2] == a)))
        };
        if let Some(rp) = c.required_path {
            let [a, c0, b] = rp.vertices();
            if !has(a, c0, b) {
                return false;
            }
        }
        if let Some(e) = c.required_edge {
            let (u, v) = e.endpoints();
            let uses = family.iter().any(|p| {
                let on = |x: usize, y: usize| (x == u && y == v) || (x == v && y == u);
                on(p[0], p[1]) || on(p[1], p[2])
            });
            if !uses {
                return false;
            }
        }
        true
    };
    let mut e = Enum {
        candidates: &candidates,
        used: vec![false; n],
        chosen: Vec::new(),
        best: None,
        accept: &accept,
    };
    e.go(0);
    match e.best {
        Some(idx) => Ok(LambdaPacking::new(
            idx.into_iter()
                .map(|k| {
                    let [a, c0, b] = candidates[k];
                    VertexPath3::new(a, c0, b)
                })
                .collect(),
        )),
        None => Err(SolverError::NoPathThroughEdge(
            c.required_edge.map(|e| e.to_string()).unwrap_or_default(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net() -> Graph {
        Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap()
    }

    fn none() -> PackingConstraints {
        PackingConstraints::none()
    }

    #[test]
    fn c6_has_factor() {
        let g = Graph::cycle(6).unwrap();
        let p = max_packing(&g, &none()).unwrap();
        assert_eq!(p.size(), 2);
        assert!(p.is_factor(&g, &none()));
    }

    #[test]
    fn net_packs_one_path() {
        let g = net();
        assert_eq!(max_packing(&g, &none()).unwrap().size(), 1);
        assert_eq!(has_factor(&g, &none()).unwrap(), None);
    }

    #[test]
    fn k4_without_matching() {
        let g = Graph::complete(4).unwrap();
        let c = none().forbid_edges([Edge::new(0, 2), Edge::new(1, 3)]);
        let p = max_packing(&g, &c).unwrap();
        assert_eq!(p.size(), 1);
        p.validate(&g, &c).unwrap();
    }

    #[test]
    fn triangle_factor() {
        let g = Graph::complete(3).unwrap();
        let f = has_factor(&g, &none()).unwrap().unwrap();
        assert_eq!(f.paths, vec![VertexPath3::new(1, 0, 2)]);
    }

    #[test]
    fn tie_break_picks_least_center_first() {
        let g = Graph::cycle(6).unwrap();
        let f = has_factor(&g, &none()).unwrap().unwrap();
        assert_eq!(
            f.paths,
            vec![VertexPath3::new(1, 0, 5), VertexPath3::new(2, 3, 4)]
        );
    }

    #[test]
    fn empty_and_tiny_graphs() {
        let g = Graph::empty(0).unwrap();
        assert_eq!(max_packing(&g, &none()).unwrap().size(), 0);
        assert_eq!(has_factor(&g, &none()).unwrap().unwrap().size(), 0);
        assert_eq!(brute_force_max_packing(&g, &none()).unwrap().size(), 0);
        let g = Graph::empty(5).unwrap();
        assert_eq!(max_packing(&g, &none()).unwrap().size(), 0);
        assert_eq!(brute_force_max_packing(&g, &none()).unwrap().size(), 0);
    }

    #[test]
    fn k33_brute_force() {
        let g = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        assert_eq!(brute_force_max_packing(&g, &none()).unwrap().size(), 2);
        assert_eq!(max_packing(&g, &none()).unwrap().size(), 2);
    }

    #[test]
    fn brute_force_size_limit() {
        let g = Graph::empty(13).unwrap();
        assert_eq!(
            brute_force_max_packing(&g, &none()),
            Err(SolverError::TooLarge(13))
        );
    }

    #[test]
    fn required_edge_and_path() {
        // path 0-1-2-3-4-5: the edge 2-3 can be in a factor only as 1-2-3
        // or 2-3-4, neither of which leaves a coverable remainder.
        let g = Graph::path(6).unwrap();
        let c = none().require_edge(Edge::new(2, 3));
        assert_eq!(has_factor(&g, &c).unwrap(), None);
        let p = max_packing(&g, &c).unwrap();
        assert_eq!(p.size(), 1);
        p.validate(&g, &c).unwrap();

        let c = none().require_path(VertexPath3::new(3, 4, 5));
        let f = has_factor(&g, &c).unwrap().unwrap();
        assert!(f.paths.contains(&VertexPath3::new(3, 4, 5)));
        assert!(f.is_factor(&g, &c));
    }

    #[test]
    fn deleted_vertices_shrink_the_graph() {
        let g = Graph::cycle(7).unwrap();
        let c = none().delete_vertex(3);
        let f = has_factor(&g, &c).unwrap().unwrap();
        assert_eq!(f.size(), 2);
        assert!(f.is_factor(&g, &c));
        assert_eq!(f.covered() & 1 << 3, 0);
    }

    #[test]
    fn inconsistent_constraints() {
        let g = Graph::cycle(6).unwrap();
        let e = Edge::new(0, 1);
        let c = none().require_edge(e).forbid_edge(e);
        assert!(matches!(
            max_packing(&g, &c),
            Err(SolverError::Constraint(_))
        ));
        let c = none().require_edge(e).delete_vertex(1);
        assert!(matches!(
            has_factor(&g, &c),
            Err(SolverError::Constraint(_))
        ));
        let c = none()
            .require_edge(e)
            .require_path(VertexPath3::new(0, 1, 2));
        assert!(matches!(
            has_factor(&g, &c),
            Err(SolverError::Constraint(_))
        ));
        let c = none().forbid_edge(Edge::new(0, 3));
        assert!(matches!(
            has_factor(&g, &c),
            Err(SolverError::Constraint(_))
        ));
    }

    #[test]
    fn isolated_required_edge() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let c = none().require_edge(Edge::new(0, 1));
        assert!(matches!(
            max_packing(&g, &c),
            Err(SolverError::NoPathThroughEdge(_))
        ));
        assert_eq!(has_factor(&g, &c).unwrap(), None);
    }

    #[test]
    fn triangle_modes() {
        let two_triangles = Graph::complete(3)
            .unwrap()
            .disjoint_union(&Graph::complete(3).unwrap())
            .unwrap();
        assert!(
            factor_respecting_triangles(&two_triangles, TriangleMode::AllTriangle, &none())
                .unwrap()
                .is_some()
        );
        let c6 = Graph::cycle(6).unwrap();
        assert!(
            factor_respecting_triangles(&c6, TriangleMode::NoTriangle, &none())
                .unwrap()
                .is_some()
        );
        assert!(
            factor_respecting_triangles(&c6, TriangleMode::AllTriangle, &none())
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = Graph::cycle(30)
            .unwrap()
            .delete_edges(&[Edge::new(0, 29)])
            .unwrap();
        let mut s = Solver::new(5);
        assert_eq!(
            s.has_factor(&g, &none()),
            Err(SolverError::ResourceExhausted { budget: 5 })
        );
        assert_eq!(
            s.max_packing(&g, &none()),
            Err(SolverError::ResourceExhausted { budget: 5 })
        );
    }

    #[test]
    fn validation_catches_bad_packings() {
        let g = Graph::cycle(6).unwrap();
        let overlapping =
            LambdaPacking::new(vec![VertexPath3::new(0, 1, 2), VertexPath3::new(2, 3, 4)]);
        assert!(overlapping.validate(&g, &none()).is_err());
        let not_path = LambdaPacking::new(vec![VertexPath3::new(0, 2, 4)]);
        assert!(not_path.validate(&g, &none()).is_err());
        let ok = LambdaPacking::new(vec![VertexPath3::new(0, 1, 2)]);
        assert!(ok
            .validate(&g, &none().forbid_edge(Edge::new(0, 1)))
            .is_err());
        assert!(ok.validate(&g, &none().delete_vertex(2)).is_err());
        assert!(ok.validate(&g, &none()).is_ok());
        assert!(!ok.is_factor(&g, &none()));
    }
}
