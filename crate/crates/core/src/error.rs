use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, at most 64 are supported")]
    TooManyVertices(usize),
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(Vertex, usize),
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("repeated edge {0}-{1}")]
    ParallelEdge(Vertex, Vertex),
    #[error("adjacency is not symmetric between {0} and {1}")]
    Asymmetric(Vertex, Vertex),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("{0} is not a 3-vertex path of the graph")]
    NotAPath(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("byte {offset}: empty record")]
    Empty { offset: usize },
    #[error("byte {offset}: character {byte:#04x} outside the graph6 range 63..=126")]
    BadCharacter { offset: usize, byte: u8 },
    #[error("byte {offset}: long-form size header (more than 62 vertices) is not supported")]
    LongForm { offset: usize },
    #[error(
        "byte {offset}: adjacency field truncated, expected {expected} bytes after the header"
    )]
    Truncated { offset: usize, expected: usize },
    #[error("byte {offset}: {extra} unexpected trailing bytes")]
    Trailing { offset: usize, extra: usize },
    #[error("byte {offset}: nonzero padding bits")]
    Padding { offset: usize },
    #[error("graph has {0} vertices; only the short form (n <= 62) can be written")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("expected three distinct edges")]
    NotThreeEdges,
    #[error("graph is not a triangle blow-up: {0}")]
    NotBlowup(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("inconsistent constraints: {0}")]
    Constraint(String),
    #[error("no 3-vertex path through required edge {0}")]
    NoPathThroughEdge(String),
    #[error("search budget of {budget} nodes exhausted")]
    ResourceExhausted { budget: u64 },
    #[error("brute force is limited to 12 vertices, got {0}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("base graph is not cubic")]
    NotCubic,
    #[error("base graph is not 2-connected")]
    NotTwoConnected,
    #[error("mode {mode} does not match the path {path}: {reason}")]
    ModeMismatch {
        mode: String,
        path: String,
        reason: String,
    },
    #[error("construction failed: {0}")]
    Failed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("invalid family parameters: {0}")]
    Parameters(String),
}
