#![allow(dead_code)]

use lpack::graph6::parse_graph6;
use lpack::Graph;

pub const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");

pub fn fixture(name: &str) -> Vec<Graph> {
    let text = std::fs::read_to_string(format!("{FIXTURES}/{name}"))
        .unwrap_or_else(|e| panic!("{name}: {e}"));
    text.lines()
        .filter(|l| !l.is_empty())
        .map(|l| parse_graph6(l).unwrap_or_else(|e| panic!("{name}: {l}: {e}")))
        .collect()
}

pub fn connected_le7() -> Vec<Graph> {
    fixture("connected_le7.g6")
}

pub fn cubic_le14() -> Vec<Graph> {
    fixture("cubic_le14.g6")
}

pub fn clawfree(n: usize) -> Vec<Graph> {
    fixture(&format!("clawfree_n{n:02}.g6"))
}

pub fn prism() -> Graph {
    Graph::from_edges(
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
    .unwrap()
}
