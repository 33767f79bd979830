//! Theorem checks on single graphs and deterministic sweeps over corpora.
//!
//! Every check reduces a theorem to a list of claims about one graph. A claim
//! is a set of alternative factor queries together with what is expected of
//! them (at least `k` feasible, or none feasible), or a lower bound on λ.
//! Claims are evaluated in a fixed order with a fresh solver per check, so a
//! verdict depends only on the graph, the theorem and the configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::constructive::{blowup_factor, triangle_blowup, BlowupMap, BlowupMode};
use crate::error::{FamilyError, Graph6Error, SolverError};
use crate::families::{is_class_a, random_cubic};
use crate::graph::{Edge, Graph, Vertex};
use crate::graph6::{emit_graph6, parse_graph6};
use crate::solver::{LambdaPacking, PackingConstraints, Solver, TriangleMode, DEFAULT_BUDGET};
use crate::structure::{
    block_decomposition, classify_with_profile, is_claw_free, is_cubic, triangle_profile,
    vertex_connectivity,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error("{theorem} {case}: solver returned an invalid certificate: {reason}")]
    InvalidCertificate {
        theorem: TheoremId,
        case: String,
        reason: String,
    },
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("bad filter {0:?}")]
    BadFilter(String),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

/// Checked statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    T2_1,
    T2_2,
    T2_3,
    T2_4,
    T2_5,
    T2_6,
    T2_7,
    T2_8,
    T2_9,
    T2_10,
    T2_11,
    T2_12,
    T2_13,
    T2_14,
    B1_1,
    B1_9,
    B1_10,
}

impl TheoremId {
    pub const ALL: [TheoremId; 17] = [
        TheoremId::T2_1,
        TheoremId::T2_2,
        TheoremId::T2_3,
        TheoremId::T2_4,
        TheoremId::T2_5,
        TheoremId::T2_6,
        TheoremId::T2_7,
        TheoremId::T2_8,
        TheoremId::T2_9,
        TheoremId::T2_10,
        TheoremId::T2_11,
        TheoremId::T2_12,
        TheoremId::T2_13,
        TheoremId::T2_14,
        TheoremId::B1_1,
        TheoremId::B1_9,
        TheoremId::B1_10,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T2_1 => "T2_1",
            TheoremId::T2_2 => "T2_2",
            TheoremId::T2_3 => "T2_3",
            TheoremId::T2_4 => "T2_4",
            TheoremId::T2_5 => "T2_5",
            TheoremId::T2_6 => "T2_6",
            TheoremId::T2_7 => "T2_7",
            TheoremId::T2_8 => "T2_8",
            TheoremId::T2_9 => "T2_9",
            TheoremId::T2_10 => "T2_10",
            TheoremId::T2_11 => "T2_11",
            TheoremId::T2_12 => "T2_12",
            TheoremId::T2_13 => "T2_13",
            TheoremId::T2_14 => "T2_14",
            TheoremId::B1_1 => "B1_1",
            TheoremId::B1_9 => "B1_9",
            TheoremId::B1_10 => "B1_10",
        }
    }

    /// One-line statement of what is checked.
    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::T2_1 => "blow-up of a 2-connected cubic graph: G-L has a factor, and a factor containing L exists in each triangle mode",
            TheoremId::T2_2 => "2-connected claw-free, n = 2 mod 3: every x has two neighbours z with G-{x,z} connected and factorable",
            TheoremId::T2_3 => "3-connected claw-free, n = 2 mod 3: G-{x,y} has a factor for every edge xy",
            TheoremId::T2_4 => "3-connected claw-free, n = 0 mod 3: every edge xy lies in two paths L centred at y with G-L connected and factorable",
            TheoremId::T2_5 => "3-connected claw-free, n = 0 mod 3: G-L is connected and factorable when the centre of L has degree 3",
            TheoremId::T2_6 => "4-connected claw-free, n = 0 mod 3: G-L is connected and factorable for every L",
            TheoremId::T2_7 => "3-connected claw-free, n = 0 mod 3: every edge is in some factor and avoided by some factor",
            TheoremId::T2_8 => "2-connected claw-free, n = 0 mod 3: G-e has a factor for every edge e",
            TheoremId::T2_9 => "class A graphs have no factor",
            TheoremId::T2_10 => "blow-up of a 2-connected cubic graph, |E| = 3: G-E has no factor iff E is of type e1..e4",
            TheoremId::T2_11 => "blow-up of a 2-connected cubic graph, |E| = 2: G-E has a factor",
            TheoremId::T2_12 => "cubic 3-connected claw-free, n >= 6, |E| = 3: G-E has a factor iff E is neither a claw nor a triangle",
            TheoremId::T2_13 => "2-connected claw-free, n = 1 mod 3: G-x has a factor for every vertex x",
            TheoremId::T2_14 => "3-connected claw-free, n = 1 mod 3: G-x-e has a factor for every vertex x and edge e",
            TheoremId::B1_1 => "cubic: lambda >= ceil(n/4)",
            TheoremId::B1_9 => "claw-free, 2-connected or connected with two end-blocks: lambda = floor(n/3)",
            TheoremId::B1_10 => "connected claw-free with eb >= 2: lambda >= floor((n - eb + 2)/3)",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace('.', "_");
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == norm)
            .ok_or_else(|| HarnessError::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    NotApplicable,
    Holds,
    Counterexample,
    ResourceExhausted,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::NotApplicable => "NOT_APPLICABLE",
            Outcome::Holds => "HOLDS",
            Outcome::Counterexample => "COUNTEREXAMPLE",
            Outcome::ResourceExhausted => "RESOURCE_EXHAUSTED",
        }
    }
}

/// One factor question about the host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Query {
    #[serde(flatten)]
    pub constraints: PackingConstraints,
    /// Every component (or none) must induce a triangle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangle_mode: Option<TriangleMode>,
    /// Answer with the blow-up construction instead of the solver.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<BlowupMode>,
    /// The graph left after the deletions must also be connected.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub connected: bool,
}

impl Query {
    fn new(constraints: PackingConstraints) -> Self {
        Query {
            constraints,
            triangle_mode: None,
            construction: None,
            connected: false,
        }
    }

    fn connected(mut self) -> Self {
        self.connected = true;
        self
    }

    fn remainder_connected(&self, g: &Graph) -> bool {
        let c = &self.constraints;
        let g = g
            .delete_edges(&c.forbidden_edges)
            .expect("forbidden edges were validated");
        g.induced(g.vertex_mask() & !c.deleted_mask())
            .0
            .is_connected()
    }

    /// Evaluate against `g`. `Ok(Err(reason))` is a failed query.
    fn run(
        &self,
        g: &Graph,
        solver: &mut Solver,
    ) -> Result<Result<LambdaPacking, String>, HarnessError> {
        let c = &self.constraints;
        c.validate(g)?;
        if self.connected && !self.remainder_connected(g) {
            return Ok(Err("remainder is disconnected".into()));
        }
        if let Some(mode) = self.construction {
            let path = c.required_path.expect("construction queries name a path");
            let built = BlowupMap::recognize(g)
                .map_err(|e| e.to_string())
                .and_then(|m| blowup_factor(&m, &path, mode).map_err(|e| e.to_string()));
            return Ok(built);
        }
        let found = match self.triangle_mode {
            None => solver.has_factor(g, c)?,
            Some(mode) => solver.factor_respecting_triangles(g, mode, c)?,
        };
        Ok(found.ok_or_else(|| "no factor".into()))
    }

    fn check_certificate(&self, g: &Graph, p: &LambdaPacking) -> Result<(), String> {
        p.validate(g, &self.constraints)?;
        if !p.is_factor(g, &self.constraints) {
            return Err("packing does not cover every remaining vertex".into());
        }
        let tri = p.triangle_components(g);
        match self.triangle_mode {
            Some(TriangleMode::AllTriangle) if tri != p.size() => {
                Err("a component is not a triangle".into())
            }
            Some(TriangleMode::NoTriangle) if tri != 0 => {
                Err("a component induces a triangle".into())
            }
            _ => Ok(()),
        }
    }
}

/// What a claim asserts about its queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Expect {
    /// At least this many of the alternatives are feasible.
    Feasible { at_least: usize },
    /// No alternative is feasible.
    Infeasible,
    /// λ(G) is at least the bound; there are no queries.
    LambdaAtLeast { bound: usize },
}

/// One universally quantified instance of a theorem on a fixed graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub case: String,
    pub expect: Expect,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub queries: Vec<Query>,
}

impl Claim {
    fn feasible(case: String, at_least: usize, queries: Vec<Query>) -> Self {
        Claim {
            case,
            expect: Expect::Feasible { at_least },
            queries,
        }
    }

    fn single(case: String, q: Query) -> Self {
        Claim::feasible(case, 1, vec![q])
    }

    fn kind(&self) -> &'static str {
        if self.queries.iter().any(|q| q.construction.is_some()) {
            "construction"
        } else if matches!(self.expect, Expect::LambdaAtLeast { .. }) {
            "bound"
        } else {
            "solver"
        }
    }
}

enum ClaimResult {
    Holds(Vec<LambdaPacking>),
    Fails {
        observed: String,
        witness: Option<LambdaPacking>,
    },
    Exhausted(String),
}

fn evaluate(
    theorem: TheoremId,
    g: &Graph,
    claim: &Claim,
    solver: &mut Solver,
) -> Result<ClaimResult, HarnessError> {
    let certify = |q: &Query, p: &LambdaPacking| {
        q.check_certificate(g, p)
            .map_err(|reason| HarnessError::InvalidCertificate {
                theorem,
                case: claim.case.clone(),
                reason,
            })
    };
    match claim.expect {
        Expect::LambdaAtLeast { bound } => {
            match solver.max_packing(g, &PackingConstraints::none()) {
                Ok(p) => {
                    p.validate(g, &PackingConstraints::none())
                        .map_err(|reason| HarnessError::InvalidCertificate {
                            theorem,
                            case: claim.case.clone(),
                            reason,
                        })?;
                    if p.size() >= bound {
                        Ok(ClaimResult::Holds(vec![p]))
                    } else {
                        Ok(ClaimResult::Fails {
                            observed: format!("lambda = {} < {bound}", p.size()),
                            witness: Some(p),
                        })
                    }
                }
                Err(SolverError::ResourceExhausted { budget }) => Ok(ClaimResult::Exhausted(
                    format!("{}: budget of {budget} nodes exhausted", claim.case),
                )),
                Err(e) => Err(e.into()),
            }
        }
        Expect::Feasible { at_least } => {
            let mut found = Vec::new();
            let mut failures = Vec::new();
            let mut exhausted = None;
            for q in &claim.queries {
                match q.run(g, solver) {
                    Ok(Ok(p)) => {
                        certify(q, &p)?;
                        found.push(p);
                        if found.len() >= at_least {
                            return Ok(ClaimResult::Holds(found));
                        }
                    }
                    Ok(Err(reason)) => failures.push(reason),
                    Err(HarnessError::Solver(SolverError::ResourceExhausted { budget })) => {
                        exhausted = Some(budget);
                    }
                    Err(e) => return Err(e),
                }
            }
            if let Some(budget) = exhausted {
                return Ok(ClaimResult::Exhausted(format!(
                    "{}: budget of {budget} nodes exhausted",
                    claim.case
                )));
            }
            let mut observed = format!(
                "{} of {} alternatives feasible, need {at_least}",
                found.len(),
                claim.queries.len()
            );
            if let Some(first) = failures.first() {
                observed.push_str(&format!(" ({first})"));
            }
            Ok(ClaimResult::Fails {
                observed,
                witness: None,
            })
        }
        Expect::Infeasible => {
            let mut exhausted = None;
            for q in &claim.queries {
                match q.run(g, solver) {
                    Ok(Ok(p)) => {
                        certify(q, &p)?;
                        return Ok(ClaimResult::Fails {
                            observed: "a factor exists".into(),
                            witness: Some(p),
                        });
                    }
                    Ok(Err(_)) => {}
                    Err(HarnessError::Solver(SolverError::ResourceExhausted { budget })) => {
                        exhausted = Some(budget);
                    }
                    Err(e) => return Err(e),
                }
            }
            match exhausted {
                Some(budget) => Ok(ClaimResult::Exhausted(format!(
                    "{}: budget of {budget} nodes exhausted",
                    claim.case
                ))),
                None => Ok(ClaimResult::Holds(Vec::new())),
            }
        }
    }
}

/// A failed claim with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub theorem: TheoremId,
    pub graph6: String,
    /// `solver`, `construction` or `bound`.
    pub kind: &'static str,
    pub claim: Claim,
    pub observed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<LambdaPacking>,
}

impl Counterexample {
    /// Re-run the claim from scratch; `true` when it still fails.
    pub fn replay(&self, budget: u64) -> Result<bool, HarnessError> {
        let g = parse_graph6(&self.graph6)?;
        let mut solver = Solver::new(budget);
        Ok(matches!(
            evaluate(self.theorem, &g, &self.claim, &mut solver)?,
            ClaimResult::Fails { .. }
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub case: String,
    pub packing: LambdaPacking,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Claims whose witnesses were re-validated.
    pub validated: usize,
    /// The first witness, or all of them with full certificates.
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subcases {
    pub total: usize,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_seed: Option<u64>,
}

/// Outcome of one theorem on one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub theorem: TheoremId,
    pub graph: String,
    pub graph6: String,
    pub n: usize,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcases: Option<Subcases>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub solver_nodes: u64,
}

impl TheoremVerdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdicts serialize")
    }
}

/// Per-check settings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    pub budget: u64,
    pub seed: u64,
    /// Graphs up to this order are always checked exhaustively.
    pub exhaustive_up_to: usize,
    /// Above `exhaustive_up_to`, sample this many claims when there are more.
    pub max_subcases: usize,
    /// Keep every witness instead of the first.
    pub full_certificates: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            budget: DEFAULT_BUDGET,
            seed: 0,
            exhaustive_up_to: 15,
            max_subcases: 20_000,
            full_certificates: false,
        }
    }
}

/// Structural facts used by hypotheses and filters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphFacts {
    pub n: usize,
    pub edges: usize,
    pub connected: bool,
    pub connectivity: usize,
    pub claw_free: bool,
    pub cubic: bool,
    pub end_blocks: usize,
    pub class_a: bool,
    /// Cubic, every vertex in exactly one triangle, triangles joined by at
    /// most one edge.
    pub blowup: bool,
}

impl GraphFacts {
    pub fn of(g: &Graph) -> Self {
        let cubic = is_cubic(g);
        GraphFacts {
            n: g.n(),
            edges: g.edge_count(),
            connected: g.is_connected(),
            connectivity: vertex_connectivity(g),
            claw_free: is_claw_free(g),
            cubic,
            end_blocks: block_decomposition(g).end_blocks,
            class_a: is_class_a(g),
            blowup: cubic && BlowupMap::recognize(g).is_ok(),
        }
    }
}

fn hypotheses(id: TheoremId, f: &GraphFacts) -> Result<(), String> {
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(format!("not {what}"))
        }
    };
    let conn = |k: usize| need(f.connectivity >= k, &format!("{k}-connected"));
    let residue = |r: usize| need(f.n % 3 == r, &format!("n = {r} mod 3"));
    let claw = || need(f.claw_free, "claw-free");
    let blowup = || {
        need(f.blowup, "a triangle blow-up of a cubic graph")?;
        conn(2)
    };
    match id {
        TheoremId::T2_1 | TheoremId::T2_10 | TheoremId::T2_11 => blowup(),
        TheoremId::T2_2 => {
            conn(2)?;
            claw()?;
            residue(2)
        }
        TheoremId::T2_3 => {
            conn(3)?;
            claw()?;
            residue(2)
        }
        TheoremId::T2_4 | TheoremId::T2_5 | TheoremId::T2_7 => {
            conn(3)?;
            claw()?;
            residue(0)
        }
        TheoremId::T2_6 => {
            conn(4)?;
            claw()?;
            residue(0)
        }
        TheoremId::T2_8 => {
            conn(2)?;
            claw()?;
            residue(0)
        }
        TheoremId::T2_9 => need(f.class_a, "in class A"),
        TheoremId::T2_12 => {
            need(f.cubic, "cubic")?;
            conn(3)?;
            claw()?;
            need(f.n >= 6, "of order at least 6")
        }
        TheoremId::T2_13 => {
            conn(2)?;
            claw()?;
            residue(1)
        }
        TheoremId::T2_14 => {
            conn(3)?;
            claw()?;
            residue(1)
        }
        TheoremId::B1_1 => need(f.cubic, "cubic"),
        TheoremId::B1_9 => {
            claw()?;
            need(
                f.connectivity >= 2 || (f.connected && f.end_blocks == 2),
                "2-connected or connected with exactly two end-blocks",
            )
        }
        TheoremId::B1_10 => {
            need(f.connected, "connected")?;
            claw()?;
            need(f.end_blocks >= 2, "with at least two end-blocks")
        }
    }
}

fn edge_list(es: &[Edge]) -> String {
    let parts: Vec<String> = es.iter().map(Edge::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn delete(vs: impl IntoIterator<Item = Vertex>) -> PackingConstraints {
    PackingConstraints::none().delete_vertices(vs)
}

fn triples(edges: &[Edge]) -> Vec<[Edge; 3]> {
    let m = edges.len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                out.push([edges[i], edges[j], edges[k]]);
            }
        }
    }
    out
}

fn t2_1_claims(g: &Graph) -> Vec<Claim> {
    let triangles = triangle_profile(g).triangles;
    let mut out = Vec::new();
    for l in g.paths3() {
        out.push(Claim::single(
            format!("(a) L={l}"),
            Query::new(delete(l.vertices())),
        ));
        let with_l = PackingConstraints::none().require_path(l);
        for &mode in BlowupMode::for_path(l.induces_triangle(g)) {
            let tag = mode.tag();
            let solver_claim = match mode {
                BlowupMode::AllTriangles | BlowupMode::NoTriangles => {
                    let mut q = Query::new(with_l.clone());
                    q.triangle_mode = Some(if mode == BlowupMode::AllTriangles {
                        TriangleMode::AllTriangle
                    } else {
                        TriangleMode::NoTriangle
                    });
                    Claim::single(format!("({tag}) L={l} solver"), q)
                }
                BlowupMode::SomeTriangle => {
                    let queries = triangles
                        .iter()
                        .filter(|t| t.iter().all(|&v| !l.contains(v)))
                        .map(|t| Query::new(with_l.clone().delete_vertices(*t)))
                        .collect();
                    Claim::feasible(format!("({tag}) L={l} solver"), 1, queries)
                }
            };
            out.push(solver_claim);
            let mut q = Query::new(with_l.clone());
            q.construction = Some(mode);
            out.push(Claim::single(format!("({tag}) L={l} construction"), q));
        }
    }
    out
}

/// All claims of `id` on `g`, in a fixed order.
pub fn claims(id: TheoremId, g: &Graph) -> Vec<Claim> {
    let n = g.n();
    let edges = g.edges();
    match id {
        TheoremId::T2_1 => t2_1_claims(g),
        TheoremId::T2_2 => (0..n)
            .map(|x| {
                let qs = g
                    .neighbors(x)
                    .map(|z| Query::new(delete([x, z])).connected())
                    .collect();
                Claim::feasible(format!("x={x}"), 2, qs)
            })
            .collect(),
        TheoremId::T2_3 => edges
            .iter()
            .map(|e| Claim::single(format!("xy={e}"), Query::new(delete([e.lo(), e.hi()]))))
            .collect(),
        TheoremId::T2_4 => edges
            .iter()
            .flat_map(|e| [(e.lo(), e.hi()), (e.hi(), e.lo())])
            .map(|(x, y)| {
                let qs = g
                    .neighbors(y)
                    .filter(|&w| w != x)
                    .map(|w| Query::new(delete([x, y, w])).connected())
                    .collect();
                Claim::feasible(format!("x={x} y={y}"), 2, qs)
            })
            .collect(),
        TheoremId::T2_5 | TheoremId::T2_6 => g
            .paths3()
            .into_iter()
            .filter(|l| id == TheoremId::T2_6 || g.degree(l.center()) == 3)
            .map(|l| {
                Claim::single(
                    format!("L={l}"),
                    Query::new(delete(l.vertices())).connected(),
                )
            })
            .collect(),
        TheoremId::T2_7 => edges
            .iter()
            .flat_map(|&e| {
                [
                    Claim::single(
                        format!("(a1) e={e}"),
                        Query::new(PackingConstraints::none().require_edge(e)),
                    ),
                    Claim::single(
                        format!("(a2) e={e}"),
                        Query::new(PackingConstraints::none().forbid_edge(e)),
                    ),
                ]
            })
            .collect(),
        TheoremId::T2_8 => edges
            .iter()
            .map(|&e| {
                Claim::single(
                    format!("e={e}"),
                    Query::new(PackingConstraints::none().forbid_edge(e)),
                )
            })
            .collect(),
        TheoremId::T2_9 => vec![Claim {
            case: "G".into(),
            expect: Expect::Infeasible,
            queries: vec![Query::new(PackingConstraints::none())],
        }],
        TheoremId::T2_10 => {
            let profile = triangle_profile(g);
            triples(&edges)
                .into_iter()
                .map(|es| {
                    let class = classify_with_profile(g, &profile, es);
                    let q = Query::new(PackingConstraints::none().forbid_edges(es));
                    let case = format!("E={} class={class}", edge_list(&es));
                    if class.is_obstruction() {
                        Claim {
                            case,
                            expect: Expect::Infeasible,
                            queries: vec![q],
                        }
                    } else {
                        Claim::single(case, q)
                    }
                })
                .collect()
        }
        TheoremId::T2_11 => {
            let mut out = Vec::new();
            for i in 0..edges.len() {
                for j in i + 1..edges.len() {
                    let es = [edges[i], edges[j]];
                    out.push(Claim::single(
                        format!("E={}", edge_list(&es)),
                        Query::new(PackingConstraints::none().forbid_edges(es)),
                    ));
                }
            }
            out
        }
        TheoremId::T2_12 => triples(&edges)
            .into_iter()
            .map(|es| {
                let [a, b, c] = es;
                let claw = a.mask() & b.mask() & c.mask() != 0;
                let triangle = (a.mask() | b.mask() | c.mask()).count_ones() == 3;
                let shape = if claw {
                    "claw"
                } else if triangle {
                    "triangle"
                } else {
                    "other"
                };
                let q = Query::new(PackingConstraints::none().forbid_edges(es));
                let case = format!("E={} shape={shape}", edge_list(&es));
                if claw || triangle {
                    Claim {
                        case,
                        expect: Expect::Infeasible,
                        queries: vec![q],
                    }
                } else {
                    Claim::single(case, q)
                }
            })
            .collect(),
        TheoremId::T2_13 => (0..n)
            .map(|x| Claim::single(format!("x={x}"), Query::new(delete([x]))))
            .collect(),
        TheoremId::T2_14 => (0..n)
            .flat_map(|x| {
                edges.iter().map(move |&e| {
                    let mut c = delete([x]);
                    if !e.contains(x) {
                        c = c.forbid_edge(e);
                    }
                    Claim::single(format!("x={x} e={e}"), Query::new(c))
                })
            })
            .collect(),
        TheoremId::B1_1 | TheoremId::B1_9 | TheoremId::B1_10 => {
            let bound = match id {
                TheoremId::B1_1 => n.div_ceil(4),
                TheoremId::B1_9 => n / 3,
                _ => (n + 2).saturating_sub(block_decomposition(g).end_blocks) / 3,
            };
            vec![Claim {
                case: "lambda".into(),
                expect: Expect::LambdaAtLeast { bound },
                queries: Vec::new(),
            }]
        }
    }
}

fn sample_seed(base: u64, id: TheoremId, graph6: &str) -> u64 {
    let h = graph6.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    });
    base ^ h ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Check one theorem on one graph.
pub fn check_theorem(
    id: TheoremId,
    g: &Graph,
    cfg: &CheckConfig,
) -> Result<TheoremVerdict, HarnessError> {
    check_with_facts(id, g, &GraphFacts::of(g), "graph", cfg)
}

/// As [`check_theorem`] with precomputed facts and a graph id.
pub fn check_with_facts(
    id: TheoremId,
    g: &Graph,
    facts: &GraphFacts,
    graph_id: &str,
    cfg: &CheckConfig,
) -> Result<TheoremVerdict, HarnessError> {
    let graph6 = emit_graph6(g)?;
    let mut verdict = TheoremVerdict {
        theorem: id,
        graph: graph_id.to_string(),
        graph6: graph6.clone(),
        n: g.n(),
        outcome: Outcome::NotApplicable,
        reason: None,
        subcases: None,
        certificate: None,
        counterexample: None,
        solver_nodes: 0,
    };
    if let Err(reason) = hypotheses(id, facts) {
        verdict.reason = Some(reason);
        return Ok(verdict);
    }

    let mut all = claims(id, g);
    let total = all.len();
    let mut seed_used = None;
    if g.n() > cfg.exhaustive_up_to && total > cfg.max_subcases {
        let seed = sample_seed(cfg.seed, id, &graph6);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut keep = sample(&mut rng, total, cfg.max_subcases).into_vec();
        keep.sort_unstable();
        all = keep.into_iter().map(|i| all[i].clone()).collect();
        seed_used = Some(seed);
    }

    let mut solver = Solver::new(cfg.budget);
    let mut witnesses = Vec::new();
    let mut validated = 0;
    let mut exhausted = None;
    let mut checked = 0;
    for claim in &all {
        checked += 1;
        match evaluate(id, g, claim, &mut solver)? {
            ClaimResult::Holds(ps) => {
                validated += ps.len();
                if cfg.full_certificates || witnesses.is_empty() {
                    witnesses.extend(ps.into_iter().map(|packing| Witness {
                        case: claim.case.clone(),
                        packing,
                    }));
                }
            }
            ClaimResult::Exhausted(msg) => {
                exhausted.get_or_insert(msg);
            }
            ClaimResult::Fails { observed, witness } => {
                verdict.outcome = Outcome::Counterexample;
                verdict.counterexample = Some(Counterexample {
                    theorem: id,
                    graph6: graph6.clone(),
                    kind: claim.kind(),
                    claim: claim.clone(),
                    observed,
                    witness,
                });
                break;
            }
        }
    }
    verdict.solver_nodes = solver.total_nodes();
    verdict.subcases = Some(Subcases {
        total,
        checked,
        sample_seed: seed_used,
    });
    if verdict.outcome == Outcome::Counterexample {
        return Ok(verdict);
    }
    if let Some(msg) = exhausted {
        verdict.outcome = Outcome::ResourceExhausted;
        verdict.reason = Some(msg);
        return Ok(verdict);
    }
    verdict.outcome = Outcome::Holds;
    verdict.certificate = Some(Certificate {
        validated,
        witnesses,
    });
    Ok(verdict)
}

/// A graph of a corpus with a stable identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRecord {
    pub id: String,
    pub graph: Graph,
}

/// A corpus line that could not be used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusIssue {
    pub id: String,
    pub message: String,
}

/// Parse graph6 text, one record per line; ids are `source:line`. Blank
/// lines are skipped and malformed ones reported.
pub fn read_corpus(source: &str, text: &str) -> (Vec<CorpusRecord>, Vec<CorpusIssue>) {
    let mut records = Vec::new();
    let mut issues = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let id = format!("{source}:{}", i + 1);
        match parse_graph6(line) {
            Ok(graph) => records.push(CorpusRecord { id, graph }),
            Err(e) => issues.push(CorpusIssue {
                id,
                message: e.to_string(),
            }),
        }
    }
    (records, issues)
}

/// `count` random cubic graphs on `n` vertices with seeds `seed, seed+1, ..`.
pub fn random_cubic_corpus(
    n: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<CorpusRecord>, FamilyError> {
    (0..count as u64)
        .map(|i| {
            let s = seed.wrapping_add(i);
            Ok(CorpusRecord {
                id: format!("random-cubic:n={n}:seed={s}"),
                graph: random_cubic(n, s)?,
            })
        })
        .collect()
}

/// Triangle blow-ups of the cubic records that fit; ids get a `:blowup`
/// suffix.
pub fn blowup_corpus(records: &[CorpusRecord]) -> Vec<CorpusRecord> {
    records
        .iter()
        .filter_map(|r| {
            let m = triangle_blowup(&r.graph).ok()?;
            Some(CorpusRecord {
                id: format!("{}:blowup", r.id),
                graph: m.blown,
            })
        })
        .collect()
}

/// Hypothesis filters applied before any theorem runs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Filters {
    pub min_connectivity: Option<usize>,
    pub claw_free: Option<bool>,
    pub cubic: Option<bool>,
    pub connected: Option<bool>,
    pub n_mod3: Option<usize>,
    pub min_n: Option<usize>,
    pub max_n: Option<usize>,
    pub min_end_blocks: Option<usize>,
}

impl Filters {
    pub fn accepts(&self, f: &GraphFacts) -> bool {
        self.min_connectivity.is_none_or(|k| f.connectivity >= k)
            && self.claw_free.is_none_or(|b| f.claw_free == b)
            && self.cubic.is_none_or(|b| f.cubic == b)
            && self.connected.is_none_or(|b| f.connected == b)
            && self.n_mod3.is_none_or(|r| f.n % 3 == r)
            && self.min_n.is_none_or(|m| f.n >= m)
            && self.max_n.is_none_or(|m| f.n <= m)
            && self.min_end_blocks.is_none_or(|m| f.end_blocks >= m)
    }
}

/// Comma-separated terms: `kappa>=K`, `claw_free`, `cubic`, `connected`
/// (each negatable with `!`), `n%3=R`, `n>=N`, `n<=N`, `eb>=K`.
impl FromStr for Filters {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut f = Filters::default();
        for term in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || HarnessError::BadFilter(term.to_string());
            let num = |v: &str| v.trim().parse::<usize>().map_err(|_| bad());
            let (neg, word) = match term.strip_prefix('!') {
                Some(w) => (true, w),
                None => (false, term),
            };
            match word {
                "claw_free" | "clawfree" => f.claw_free = Some(!neg),
                "cubic" => f.cubic = Some(!neg),
                "connected" => f.connected = Some(!neg),
                _ if neg => return Err(bad()),
                _ => {
                    if let Some(v) = term
                        .strip_prefix("kappa>=")
                        .or_else(|| term.strip_prefix("connectivity>="))
                    {
                        f.min_connectivity = Some(num(v)?);
                    } else if let Some(v) = term.strip_prefix("n%3=") {
                        let r = num(v)?;
                        if r > 2 {
                            return Err(bad());
                        }
                        f.n_mod3 = Some(r);
                    } else if let Some(v) = term.strip_prefix("n>=") {
                        f.min_n = Some(num(v)?);
                    } else if let Some(v) = term.strip_prefix("n<=") {
                        f.max_n = Some(num(v)?);
                    } else if let Some(v) = term.strip_prefix("eb>=") {
                        f.min_end_blocks = Some(num(v)?);
                    } else {
                        return Err(bad());
                    }
                }
            }
        }
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub theorems: Vec<TheoremId>,
    pub filters: Filters,
    pub check: CheckConfig,
    /// Worker threads; verdict order does not depend on it.
    pub jobs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            theorems: TheoremId::ALL.to_vec(),
            filters: Filters::default(),
            check: CheckConfig::default(),
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OutcomeCounts {
    pub not_applicable: usize,
    pub holds: usize,
    pub counterexample: usize,
    pub resource_exhausted: usize,
}

impl OutcomeCounts {
    fn add(&mut self, o: Outcome) {
        match o {
            Outcome::NotApplicable => self.not_applicable += 1,
            Outcome::Holds => self.holds += 1,
            Outcome::Counterexample => self.counterexample += 1,
            Outcome::ResourceExhausted => self.resource_exhausted += 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub graphs: usize,
    pub filtered_out: usize,
    pub errors: usize,
    pub total: OutcomeCounts,
    pub by_theorem: BTreeMap<TheoremId, OutcomeCounts>,
}

impl SweepSummary {
    pub fn has_counterexample(&self) -> bool {
        self.total.counterexample > 0
    }
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "graphs: {} ({} filtered out), errors: {}",
            self.graphs, self.filtered_out, self.errors
        )?;
        writeln!(
            f,
            "{:<8} {:>8} {:>8} {:>8} {:>8}",
            "theorem", "n/a", "holds", "counter", "budget"
        )?;
        for (t, c) in &self.by_theorem {
            writeln!(
                f,
                "{:<8} {:>8} {:>8} {:>8} {:>8}",
                t.as_str(),
                c.not_applicable,
                c.holds,
                c.counterexample,
                c.resource_exhausted
            )?;
        }
        let c = &self.total;
        write!(
            f,
            "{:<8} {:>8} {:>8} {:>8} {:>8}",
            "total", c.not_applicable, c.holds, c.counterexample, c.resource_exhausted
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    /// Corpus order, then theorem order.
    pub verdicts: Vec<TheoremVerdict>,
    pub issues: Vec<CorpusIssue>,
    pub summary: SweepSummary,
}

impl SweepReport {
    /// One JSON object per line.
    pub fn verdict_lines(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            out.push_str(&v.to_json());
            out.push('\n');
        }
        out
    }
}

/// Check every selected theorem on every record passing the filters.
pub fn sweep(records: &[CorpusRecord], cfg: &SweepConfig) -> Result<SweepReport, HarnessError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    type Checked = (usize, TheoremId, Result<TheoremVerdict, HarnessError>);
    let (facts, results): (Vec<GraphFacts>, Vec<Checked>) = pool.install(|| {
        let facts: Vec<GraphFacts> = records
            .par_iter()
            .map(|r| GraphFacts::of(&r.graph))
            .collect();
        let pairs: Vec<(usize, TheoremId)> = (0..records.len())
            .filter(|&i| cfg.filters.accepts(&facts[i]))
            .flat_map(|i| cfg.theorems.iter().map(move |&t| (i, t)))
            .collect();
        let results = pairs
            .par_iter()
            .map(|&(i, t)| {
                let r = &records[i];
                (
                    i,
                    t,
                    check_with_facts(t, &r.graph, &facts[i], &r.id, &cfg.check),
                )
            })
            .collect();
        (facts, results)
    });

    let mut summary = SweepSummary {
        graphs: records.len(),
        filtered_out: facts.iter().filter(|f| !cfg.filters.accepts(f)).count(),
        ..SweepSummary::default()
    };
    for &t in &cfg.theorems {
        summary.by_theorem.entry(t).or_default();
    }
    let mut verdicts = Vec::with_capacity(results.len());
    let mut issues = Vec::new();
    for (i, t, res) in results {
        match res {
            Ok(v) => {
                summary.total.add(v.outcome);
                summary.by_theorem.entry(t).or_default().add(v.outcome);
                verdicts.push(v);
            }
            Err(e) => {
                summary.errors += 1;
                issues.push(CorpusIssue {
                    id: records[i].id.clone(),
                    message: format!("{t}: {e}"),
                });
            }
        }
    }
    Ok(SweepReport {
        verdicts,
        issues,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_class_a, gen_net};

    #[test]
    fn theorem_ids_parse() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert_eq!("t2.10".parse::<TheoremId>().unwrap(), TheoremId::T2_10);
        assert!("T3_1".parse::<TheoremId>().is_err());
    }

    #[test]
    fn k4_not_applicable_for_t2_3() {
        let v = check_theorem(
            TheoremId::T2_3,
            &Graph::complete(4).unwrap(),
            &CheckConfig::default(),
        )
        .unwrap();
        assert_eq!(v.outcome, Outcome::NotApplicable);
        assert_eq!(v.reason.as_deref(), Some("not n = 2 mod 3"));
    }

    #[test]
    fn class_a_holds() {
        let v = check_theorem(
            TheoremId::T2_9,
            &gen_class_a(4).unwrap(),
            &CheckConfig::default(),
        )
        .unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
    }

    #[test]
    fn t2_10_k4_blowup_is_exhaustive() {
        let m = triangle_blowup(&Graph::complete(4).unwrap()).unwrap();
        let v = check_theorem(TheoremId::T2_10, &m.blown, &CheckConfig::default()).unwrap();
        assert_eq!(v.outcome, Outcome::Holds, "{:?}", v.counterexample);
        let s = v.subcases.unwrap();
        assert_eq!((s.total, s.checked, s.sample_seed), (816, 816, None));
    }

    #[test]
    fn counterexample_replays() {
        // claim that the net has a factor: false, so it must replay as a failure
        let g = gen_net();
        let cx = Counterexample {
            theorem: TheoremId::T2_13,
            graph6: emit_graph6(&g).unwrap(),
            kind: "solver",
            claim: Claim::single("G".into(), Query::new(PackingConstraints::none())),
            observed: String::new(),
            witness: None,
        };
        assert!(cx.replay(DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn filters_parse() {
        let f: Filters = "kappa>=2, claw_free, !cubic, n%3=0, n<=11".parse().unwrap();
        assert_eq!(f.min_connectivity, Some(2));
        assert_eq!(f.claw_free, Some(true));
        assert_eq!(f.cubic, Some(false));
        assert_eq!(f.n_mod3, Some(0));
        assert_eq!(f.max_n, Some(11));
        assert!("n%3=4".parse::<Filters>().is_err());
        assert!("!n<=3".parse::<Filters>().is_err());
        assert!("bogus".parse::<Filters>().is_err());
    }

    #[test]
    fn empty_sweep() {
        let r = sweep(&[], &SweepConfig::default()).unwrap();
        assert!(r.verdicts.is_empty());
        assert_eq!(r.summary.total, OutcomeCounts::default());
    }

    #[test]
    fn sampling_is_recorded() {
        let prism = Graph::from_edges(
            6,
            [
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap();
        let m = triangle_blowup(&prism).unwrap();
        let cfg = CheckConfig {
            max_subcases: 50,
            ..CheckConfig::default()
        };
        let v = check_theorem(TheoremId::T2_11, &m.blown, &cfg).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        let s = v.subcases.unwrap();
        assert_eq!((s.total, s.checked), (351, 50));
        assert!(s.sample_seed.is_some());
        assert_eq!(
            check_theorem(TheoremId::T2_11, &m.blown, &cfg)
                .unwrap()
                .subcases
                .unwrap(),
            s
        );
    }
}
