//! graph6 and plain edge-list formats.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("graph6: empty input")]
    Empty,
    #[error("graph6: byte {0:#x} outside the printable range 63..=126")]
    BadByte(u8),
    #[error("graph6: expected {expected} data bytes, found {found}")]
    Length { expected: usize, found: usize },
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

const HEADER: &str = ">>graph6<<";

/// Encodes a graph in graph6 (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    if n < 63 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.adjacent(i, j) as u8;
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
    out
}

/// Decodes one graph6 string; an optional `>>graph6<<` header and
/// surrounding whitespace are ignored.
pub fn from_graph6(s: &str) -> Result<Graph, ParseError> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::Empty);
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(ParseError::BadByte(b));
    }
    let (n, data) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(ParseError::Length {
                expected: 4,
                found: bytes.len(),
            });
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, &bytes[4..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if data.len() != expected {
        return Err(ParseError::Length {
            expected,
            found: data.len(),
        });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, edges)?)
}

/// Writes `n=<k>` followed by one `u v` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "n={}", g.n()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses the edge-list format: `u v` per line, `#` comments, blank lines
/// ignored. The vertex count is `max id + 1` unless the first content line
/// is `n=<k>`.
pub fn from_edge_list(s: &str) -> Result<Graph, ParseError> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut seen_content = false;
    for (idx, raw) in s.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| ParseError::Line { line: line_no, msg };
        if let Some(rest) = line.strip_prefix("n=") {
            if seen_content {
                return Err(err("`n=` must be the first content line".into()));
            }
            declared = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| err(format!("bad vertex count `{rest}`")))?,
            );
            seen_content = true;
            continue;
        }
        seen_content = true;
        let mut parts = line.split_whitespace();
        let mut next_id = || -> Result<Vertex, ParseError> {
            let tok = parts
                .next()
                .ok_or_else(|| err("expected two vertex ids".into()))?;
            tok.parse()
                .map_err(|_| err(format!("bad vertex id `{tok}`")))
        };
        let u = next_id()?;
        let v = next_id()?;
        if parts.next().is_some() {
            return Err(err("trailing tokens after edge".into()));
        }
        edges.push((u, v));
    }
    let n = declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Ok(Graph::new(n, edges)?)
}
