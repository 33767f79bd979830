//! Λ-packings: families of vertex-disjoint 3-vertex paths.
//!
//! The crate provides an exact solver for maximum packings and constrained
//! factors, the triangle blow-up constructions for cubic graphs, generators
//! for the standard obstruction families, and a harness that checks packing
//! theorems for claw-free and cubic graphs over graph corpora.

pub mod constructive;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod matching;
pub mod solver;
pub mod structure;

pub use constructive::{blowup_factor, triangle_blowup, BlowupMap, BlowupMode};
pub use error::{
    ConstructionError, FamilyError, Graph6Error, GraphError, SolverError, StructureError,
};
pub use families::{FamilyInstance, FamilySpec};
pub use graph::{Edge, Graph, LabelMap, Vertex, VertexPath3};
pub use graph6::{emit_graph6, parse_graph6};
pub use harness::{check_theorem, sweep, Outcome, SweepConfig, TheoremId, TheoremVerdict};
pub use solver::{LambdaPacking, PackingConstraints, Solver, TriangleMode};
