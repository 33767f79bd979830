//! wasm-bindgen bindings for the browser page in `www/`.
//!
//! Every export takes and returns JSON strings. Failures come back as
//! `{"error": "..."}` so the page never has to catch exceptions.

use lpack::constructive::{blowup_factor as construct, triangle_blowup, BlowupMode};
use lpack::families::FamilySpec;
use lpack::structure::{is_claw_free, vertex_connectivity};
use lpack::{
    emit_graph6, parse_graph6, Edge, Graph, PackingConstraints, Solver, Vertex, VertexPath3,
};
use serde::{Deserialize, Serialize};
use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

const BUDGET: u64 = 5_000_000;

#[derive(Serialize)]
struct GraphView {
    graph6: String,
    n: usize,
    edges: Vec<Edge>,
    connectivity: usize,
    claw_free: bool,
}

impl GraphView {
    fn of(g: &Graph) -> Result<Self, String> {
        Ok(GraphView {
            graph6: emit_graph6(g).map_err(|e| e.to_string())?,
            n: g.n(),
            edges: g.edges(),
            connectivity: vertex_connectivity(g),
            claw_free: is_claw_free(g),
        })
    }
}

fn paths(ps: &[VertexPath3]) -> Vec<[Vertex; 3]> {
    ps.iter().map(|p| p.vertices()).collect()
}

fn respond(r: Result<serde_json::Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// `spec` is a family selector such as `{"family":"Q_GRAPH","la":5,"lb":5}`.
#[wasm_bindgen]
pub fn generate(spec: &str) -> String {
    respond((|| {
        let spec: FamilySpec = serde_json::from_str(spec).map_err(|e| e.to_string())?;
        let inst = spec.build().map_err(|e| e.to_string())?;
        let marked: Vec<_> = inst
            .marked_edges
            .iter()
            .map(|(k, e)| json!({ "name": k, "edge": e }))
            .collect();
        Ok(json!({
            "graph": GraphView::of(&inst.graph)?,
            "triangle": inst.triangle,
            "marked": marked,
        }))
    })())
}

#[derive(Deserialize, Default)]
#[serde(default)]
struct SolveRequest {
    require_edges: Vec<[Vertex; 2]>,
    forbid_edges: Vec<[Vertex; 2]>,
    delete_vertices: Vec<Vertex>,
}

/// Find a Λ-factor under the constraints in `request`; when none exists,
/// report a maximum packing instead.
#[wasm_bindgen]
pub fn solve(graph6: &str, request: &str) -> String {
    respond((|| {
        let g = parse_graph6(graph6.trim()).map_err(|e| e.to_string())?;
        let req: SolveRequest = if request.trim().is_empty() {
            SolveRequest::default()
        } else {
            serde_json::from_str(request).map_err(|e| e.to_string())?
        };
        let mut c = PackingConstraints::none().delete_vertices(req.delete_vertices);
        for [u, v] in req.require_edges {
            c = c.require_edge(Edge::new(u, v));
        }
        c = c.forbid_edges(req.forbid_edges.into_iter().map(|[u, v]| Edge::new(u, v)));
        c.validate(&g).map_err(|e| e.to_string())?;
        let mut solver = Solver::new(BUDGET);
        let factor = solver.has_factor(&g, &c).map_err(|e| e.to_string())?;
        let best = match &factor {
            Some(p) => p.clone(),
            None => solver.max_packing(&g, &c).map_err(|e| e.to_string())?,
        };
        Ok(json!({
            "factor": factor.is_some(),
            "paths": paths(&best.paths),
            "nodes": solver.total_nodes(),
        }))
    })())
}

/// Blow up the cubic graph `base` and build a factor of the blow-up
/// containing the path `path` (blown labels). `mode` is `a1`, `a2`, `a3`
/// or empty for the first mode that applies.
#[wasm_bindgen]
pub fn blowup_factor(base: &str, path: &str, mode: &str) -> String {
    respond((|| {
        let f = parse_graph6(base.trim()).map_err(|e| e.to_string())?;
        let m = triangle_blowup(&f).map_err(|e| e.to_string())?;
        let mut view = json!({
            "graph": GraphView::of(&m.blown)?,
            "triangles": m.triangles,
        });
        if path.trim().is_empty() {
            return Ok(view);
        }
        let vs: Vec<Vertex> = path
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<Vertex>()
                    .map_err(|_| format!("bad vertex {s:?}"))
            })
            .collect::<Result<_, _>>()?;
        let [a, b, c] = vs[..] else {
            return Err("a path needs three vertices".into());
        };
        let l = VertexPath3::new(a, b, c);
        if !l.is_valid_in(&m.blown) {
            return Err(format!("{l} is not a path of the blow-up"));
        }
        let modes: Vec<BlowupMode> = match mode.trim() {
            "" => BlowupMode::for_path(l.induces_triangle(&m.blown)).to_vec(),
            t => vec![BlowupMode::ALL
                .into_iter()
                .find(|md| md.tag() == t)
                .ok_or_else(|| format!("unknown mode {t:?}"))?],
        };
        let mut last = String::new();
        for md in modes {
            match construct(&m, &l, md) {
                Ok(p) => {
                    view["mode"] = json!(md.tag());
                    view["paths"] = json!(paths(&p.paths));
                    return Ok(view);
                }
                Err(e) => last = format!("{}: {e}", md.tag()),
            }
        }
        Err(last)
    })())
}
