//! Multifans around an uncolored edge and the structures derived from them.

mod kierstead;
mod lollipop;
mod pseudo;
mod sequences;

pub use kierstead::{enumerate_kierstead, grow_kierstead, is_kierstead, KiersteadPath};
pub use lollipop::{build_lollipop, Lollipop};
pub use pseudo::{
    build_pseudo_multifan, certify_maximum, decompose_rotations, is_fan_stable, rotations_of,
    stable_perturbations, MaximumCertificate, PseudoMultifan, Rotation, SampleConfig,
    StabilityCertificate,
};
pub use sequences::{
    alpha_sequences, check_typical, normalize_typical, AlphaSequence, AlphaSequenceDecomposition,
    NormalizationStep, TypicalMultifan,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::Color;
use crate::graph::{Bits, Vertex};
use crate::kempe::{KempeError, PartialEdgeColoring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("{0}-{1} is not an uncolored edge")]
    NotUncolored(Vertex, Vertex),
    #[error("not a multifan: {0}")]
    NotAFan(String),
    #[error("vertices {0} and {1} both miss color {2}")]
    NotElementary(Vertex, Vertex, Color),
    #[error("not a multifan of the required degree shape: {0}")]
    NotHzFan(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("sampled stability check failed after {0} perturbations")]
    Unstable(usize),
    #[error(transparent)]
    Kempe(#[from] KempeError),
}

/// `F_φ(r, s_1:s_p)`. `colors[i]` is `φ(r s_{i+1})`; the first entry is
/// `None` because `r s_1` is the uncolored edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multifan {
    pub center: Vertex,
    pub leaves: Vec<Vertex>,
    pub colors: Vec<Option<Color>>,
}

impl Multifan {
    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    /// `|V(F)|`.
    pub fn order(&self) -> usize {
        self.leaves.len() + 1
    }

    /// `V(F)` with the center first.
    pub fn vertices(&self) -> Vec<Vertex> {
        std::iter::once(self.center)
            .chain(self.leaves.iter().copied())
            .collect()
    }

    pub fn vertex_mask(&self) -> u64 {
        self.vertices().iter().fold(0, |m, &v| m | 1 << v)
    }

    pub fn leaf_index(&self, v: Vertex) -> Option<usize> {
        self.leaves.iter().position(|&x| x == v)
    }

    /// For every leaf after the first, the index of the earliest leaf that
    /// misses `φ(r s_i)`.
    pub fn parents(&self, pc: &PartialEdgeColoring) -> Vec<Option<usize>> {
        (0..self.leaves.len())
            .map(|i| {
                let c = self.colors[i]?;
                self.leaves[..i].iter().position(|&s| pc.misses(s, c))
            })
            .collect()
    }

    /// Leaf indices on the parent path from `s_1` to leaf `i`, inclusive.
    pub fn path_to(&self, pc: &PartialEdgeColoring, i: usize) -> Vec<usize> {
        let parents = self.parents(pc);
        let mut path = vec![i];
        let mut at = i;
        while let Some(p) = parents[at] {
            path.push(p);
            at = p;
        }
        path.reverse();
        path
    }

    pub fn prefix(&self, p: usize) -> Multifan {
        Multifan {
            center: self.center,
            leaves: self.leaves[..p].to_vec(),
            colors: self.colors[..p].to_vec(),
        }
    }
}

/// Checks distinctness, adjacency, recorded colors and (F1). With `hz`,
/// every leaf must also have degree `Δ − 1`.
pub fn validate_multifan(
    pc: &PartialEdgeColoring,
    fan: &Multifan,
    hz: bool,
) -> Result<(), FanError> {
    let g = pc.graph();
    let r = fan.center;
    let err = |m: String| Err(FanError::NotAFan(m));
    if fan.leaves.is_empty() || fan.leaves.len() != fan.colors.len() {
        return err("empty fan or mismatched color list".into());
    }
    let mut seen = 1u64 << r;
    for (i, &s) in fan.leaves.iter().enumerate() {
        if seen >> s & 1 == 1 {
            return err(format!("vertex {s} repeated"));
        }
        seen |= 1 << s;
        let Some(e) = g.edge_id(r, s) else {
            return err(format!("{r}-{s} is not an edge"));
        };
        if pc.color(e) != fan.colors[i] {
            return err(format!("recorded color of {r}-{s} is stale"));
        }
        if i == 0 {
            if pc.color(e).is_some() {
                return Err(FanError::NotUncolored(r, s));
            }
        } else {
            let Some(c) = pc.color(e) else {
                return err(format!("{r}-{s} is uncolored"));
            };
            if !fan.leaves[..i].iter().any(|&t| pc.misses(t, c)) {
                return err(format!(
                    "color {c} of {r}-{s} is not missing at an earlier leaf"
                ));
            }
        }
        if hz && g.degree(s) + 1 != g.max_degree() {
            return Err(FanError::NotHzFan(format!(
                "leaf {s} has degree {}",
                g.degree(s)
            )));
        }
    }
    Ok(())
}

pub fn is_multifan(pc: &PartialEdgeColoring, fan: &Multifan) -> bool {
    validate_multifan(pc, fan, false).is_ok()
}

/// Inclusion-maximal multifan at `r` from the uncolored edge `r s_1`,
/// appending the neighbor reached by the lowest available color first.
pub fn grow_multifan(
    pc: &PartialEdgeColoring,
    r: Vertex,
    s1: Vertex,
) -> Result<Multifan, FanError> {
    grow(pc, r, s1, |_| true)
}

/// Like [`grow_multifan`] but admits only leaves of degree `Δ − 1`.
pub fn grow_hz_multifan(
    pc: &PartialEdgeColoring,
    r: Vertex,
    s1: Vertex,
) -> Result<Multifan, FanError> {
    let g = pc.graph();
    let d = g.max_degree();
    grow(pc, r, s1, |v| g.degree(v) + 1 == d)
}

fn grow(
    pc: &PartialEdgeColoring,
    r: Vertex,
    s1: Vertex,
    admit: impl Fn(Vertex) -> bool,
) -> Result<Multifan, FanError> {
    let g = pc.graph();
    match g.edge_id(r, s1) {
        Some(e) if pc.color(e).is_none() => {}
        _ => return Err(FanError::NotUncolored(r, s1)),
    }
    let mut fan = Multifan {
        center: r,
        leaves: vec![s1],
        colors: vec![None],
    };
    let mut inside = 1u64 << r | 1u64 << s1;
    let mut avail = pc.missing(s1);
    let mut tried = 0u64;
    loop {
        let next = Bits(avail & !tried).find_map(|c| {
            let w = pc.neighbor_at(r, c as Color)?;
            (inside >> w & 1 == 0 && admit(w)).then_some((c as Color, w))
        });
        let Some((c, w)) = next else {
            return Ok(fan);
        };
        tried |= 1 << c;
        fan.leaves.push(w);
        fan.colors.push(Some(c));
        inside |= 1 << w;
        avail |= pc.missing(w);
    }
}

/// First pair `(u, v, c)` in `vertices` order with `c` missing at both.
pub fn elementary_violation(
    pc: &PartialEdgeColoring,
    vertices: &[Vertex],
) -> Option<(Vertex, Vertex, Color)> {
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            let common = pc.missing(u) & pc.missing(v);
            if common != 0 {
                return Some((u, v, common.trailing_zeros() as Color));
            }
        }
    }
    None
}

pub fn is_elementary(pc: &PartialEdgeColoring, vertices: &[Vertex]) -> bool {
    elementary_violation(pc, vertices).is_none()
}

/// The unique vertex of an elementary set that misses `c`.
pub fn host_of(pc: &PartialEdgeColoring, vertices: &[Vertex], c: Color) -> Option<Vertex> {
    vertices.iter().copied().find(|&v| pc.misses(v, c))
}

/// JSON view of a fan and its immediate surroundings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDump {
    pub center: Vertex,
    pub center_missing: Vec<Color>,
    pub leaves: Vec<LeafDump>,
    pub elementary: bool,
    pub violation: Option<(Vertex, Vertex, Color)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafDump {
    pub vertex: Vertex,
    pub edge_color: Option<Color>,
    pub missing: Vec<Color>,
    pub parent: Option<Vertex>,
}

pub fn mask_colors(mask: u64) -> Vec<Color> {
    Bits(mask).map(|c| c as Color).collect()
}

impl FanDump {
    pub fn new(pc: &PartialEdgeColoring, fan: &Multifan) -> FanDump {
        let parents = fan.parents(pc);
        let verts = fan.vertices();
        let violation = elementary_violation(pc, &verts);
        FanDump {
            center: fan.center,
            center_missing: mask_colors(pc.missing(fan.center)),
            leaves: fan
                .leaves
                .iter()
                .enumerate()
                .map(|(i, &s)| LeafDump {
                    vertex: s,
                    edge_color: fan.colors[i],
                    missing: mask_colors(pc.missing(s)),
                    parent: parents[i].map(|p| fan.leaves[p]),
                })
                .collect(),
            elementary: violation.is_none(),
            violation,
        }
    }
}
