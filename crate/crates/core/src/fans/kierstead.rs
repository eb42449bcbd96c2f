use serde::{Deserialize, Serialize};

use super::{FanError, Multifan};
use crate::coloring::Color;
use crate::graph::{Bits, Vertex};
use crate::kempe::PartialEdgeColoring;

/// `K = (v_0, v_0 v_1, v_1, ..., v_p)` with `v_0 v_1` uncolored.
/// `colors[i]` is `φ(v_i v_{i+1})`; the first entry is `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KiersteadPath {
    pub vertices: Vec<Vertex>,
    pub colors: Vec<Option<Color>>,
}

impl KiersteadPath {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// A path on at most three vertices read as a multifan centered at `v_1`.
    pub fn as_multifan(&self) -> Option<Multifan> {
        match self.vertices[..] {
            [a, b] => Some(Multifan {
                center: b,
                leaves: vec![a],
                colors: vec![None],
            }),
            [a, b, c] => Some(Multifan {
                center: b,
                leaves: vec![a, c],
                colors: vec![None, self.colors[1]],
            }),
            _ => None,
        }
    }
}

/// (K1) plus distinctness and recorded colors.
pub fn is_kierstead(pc: &PartialEdgeColoring, path: &KiersteadPath) -> bool {
    let g = pc.graph();
    let vs = &path.vertices;
    if vs.len() < 2 || path.colors.len() + 1 != vs.len() {
        return false;
    }
    let mut seen = 0u64;
    for &v in vs {
        if v >= g.n() || seen >> v & 1 == 1 {
            return false;
        }
        seen |= 1 << v;
    }
    let mut missing = 0u64;
    for i in 0..vs.len() - 1 {
        let Some(e) = g.edge_id(vs[i], vs[i + 1]) else {
            return false;
        };
        if pc.color(e) != path.colors[i] {
            return false;
        }
        match (i, pc.color(e)) {
            (0, None) => {}
            (0, Some(_)) | (_, None) => return false,
            (_, Some(c)) => {
                // colors missing at v_0..v_{i-1}
                if missing >> c & 1 == 0 {
                    return false;
                }
            }
        }
        missing |= pc.missing(vs[i]);
    }
    true
}

/// Greedy path from the uncolored edge `v_0 v_1` with at most `max_vertices`
/// vertices: each step follows the lowest admissible color.
pub fn grow_kierstead(
    pc: &PartialEdgeColoring,
    v0: Vertex,
    v1: Vertex,
    max_vertices: usize,
) -> Result<KiersteadPath, FanError> {
    start(pc, v0, v1)?;
    let mut path = KiersteadPath {
        vertices: vec![v0, v1],
        colors: vec![None],
    };
    let mut on = 1u64 << v0 | 1u64 << v1;
    let mut missing = pc.missing(v0);
    while path.len() < max_vertices {
        let last = *path.vertices.last().unwrap();
        let next = Bits(missing).find_map(|c| {
            let w = pc.neighbor_at(last, c as Color)?;
            (on >> w & 1 == 0).then_some((c as Color, w))
        });
        let Some((c, w)) = next else { break };
        missing |= pc.missing(last);
        on |= 1 << w;
        path.vertices.push(w);
        path.colors.push(Some(c));
    }
    Ok(path)
}

/// Every Kierstead path with exactly `vertices` vertices starting with the
/// uncolored edge `v_0 v_1`.
pub fn enumerate_kierstead(
    pc: &PartialEdgeColoring,
    v0: Vertex,
    v1: Vertex,
    vertices: usize,
) -> Result<Vec<KiersteadPath>, FanError> {
    start(pc, v0, v1)?;
    let mut out = Vec::new();
    let mut path = KiersteadPath {
        vertices: vec![v0, v1],
        colors: vec![None],
    };
    extend(pc, &mut path, pc.missing(v0), vertices, &mut out);
    Ok(out)
}

fn start(pc: &PartialEdgeColoring, v0: Vertex, v1: Vertex) -> Result<(), FanError> {
    match pc.graph().edge_id(v0, v1) {
        Some(e) if pc.color(e).is_none() => Ok(()),
        _ => Err(FanError::NotUncolored(v0, v1)),
    }
}

/// `missing` holds the colors missing at all vertices but the last.
fn extend(
    pc: &PartialEdgeColoring,
    path: &mut KiersteadPath,
    missing: u64,
    target: usize,
    out: &mut Vec<KiersteadPath>,
) {
    if path.len() == target {
        out.push(path.clone());
        return;
    }
    let last = *path.vertices.last().unwrap();
    for c in Bits(missing) {
        let Some(w) = pc.neighbor_at(last, c as Color) else {
            continue;
        };
        if path.vertices.contains(&w) {
            continue;
        }
        path.vertices.push(w);
        path.colors.push(Some(c as Color));
        extend(pc, path, missing | pc.missing(last), target, out);
        path.vertices.pop();
        path.colors.pop();
    }
}
