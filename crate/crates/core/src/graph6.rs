//! graph6 records, short form only (at most 62 vertices).
//!
//! The size byte is `n + 63`; the upper triangle of the adjacency matrix
//! follows column by column (`(0,1), (0,2), (1,2), (0,3), ...`), six bits per
//! byte, most significant first, zero padded, each byte offset by 63.

use crate::error::Graph6Error;
use crate::graph::{Graph, VertexMask};

const HEADER: &str = ">>graph6<<";
const SHORT_MAX: usize = 62;

/// Decode one record. A leading `>>graph6<<` header and trailing line-end
/// whitespace are accepted.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let line = line.trim_end_matches(['\n', '\r', ' ', '\t']);
    let (body, base) = match line.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => (line.as_bytes(), 0),
    };
    let Some(&first) = body.first() else {
        return Err(Graph6Error::Empty { offset: base });
    };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadCharacter {
                offset: base + i,
                byte: b,
            });
        }
    }
    if first == 126 {
        return Err(Graph6Error::LongForm { offset: base });
    }
    let n = (first - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    let data = &body[1..];
    if data.len() < expected {
        return Err(Graph6Error::Truncated {
            offset: base + body.len(),
            expected,
        });
    }
    if data.len() > expected {
        return Err(Graph6Error::Trailing {
            offset: base + 1 + expected,
            extra: data.len() - expected,
        });
    }

    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if !nbits.is_multiple_of(6) {
        let last = data[expected - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::Padding {
                offset: base + expected,
            });
        }
    }

    let mut adj: Vec<VertexMask> = vec![0; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_masks(adj).expect("decoded adjacency is symmetric and loop-free"))
}

/// Encode `g` under its current labelling.
pub fn emit_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > SHORT_MAX {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// One parsed line of a graph6 corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    /// 1-based line number in the source.
    pub line: usize,
    pub graph: Result<Graph, Graph6Error>,
}

/// Parse every non-blank line of a corpus, keeping malformed lines as errors
/// so that callers can report them and continue.
pub fn parse_corpus(text: &str) -> Vec<CorpusEntry> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| CorpusEntry {
            line: i + 1,
            graph: parse_graph6(l),
        })
        .collect()
}
