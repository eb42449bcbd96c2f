//! Full edge colorings, an independent properness verifier, and the JSON
//! coloring record.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, Vertex};

/// Colors are `1..=k`; `0` never appears in a stored coloring.
pub type Color = u8;

/// Largest supported palette (missing sets are `u64` masks with bit `c`).
pub const MAX_COLORS: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("palette of {0} colors exceeds the supported maximum {MAX_COLORS}")]
    PaletteTooLarge(usize),
    #[error("coloring has {found} entries for a graph with {expected} edges")]
    WrongLength { expected: usize, found: usize },
    #[error("edge {edge} has color {color} outside [1, {k}]")]
    OutOfRange {
        edge: EdgeId,
        color: Color,
        k: usize,
    },
    #[error("edge {0} is uncolored")]
    Uncolored(EdgeId),
    #[error("two edges at vertex {vertex} share color {color}")]
    Conflict { vertex: Vertex, color: Color },
    #[error("record mentions {0}-{1}, which is not an edge of the graph")]
    UnknownEdge(Vertex, Vertex),
    #[error("record lists edge {0}-{1} more than once")]
    RepeatedEdge(Vertex, Vertex),
}

/// Bit mask of the colors `1..=k`.
pub fn palette_mask(k: usize) -> u64 {
    debug_assert!(k <= MAX_COLORS);
    (u64::MAX >> (63 - k)) & !1
}

/// A complete proper edge coloring with palette `[1, k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    k: usize,
    colors: Vec<Color>,
}

impl EdgeColoring {
    /// Validates `colors` (indexed by edge id) against `g`.
    pub fn new(g: &Graph, k: usize, colors: Vec<Color>) -> Result<Self, ColoringError> {
        verify_proper(g, k, &colors)?;
        Ok(EdgeColoring { k, colors })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color(&self, e: EdgeId) -> Color {
        self.colors[e]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Number of distinct colors that actually occur.
    pub fn colors_used(&self) -> usize {
        self.colors
            .iter()
            .fold(0u64, |m, &c| m | 1 << c)
            .count_ones() as usize
    }

    /// Renames colors so the ones in use are exactly `1..=colors_used`,
    /// keeping their relative order, and shrinks the palette to match.
    pub fn compacted(&self) -> EdgeColoring {
        let used = self.colors.iter().fold(0u64, |m, &c| m | 1 << c);
        let rank = |c: Color| (used & ((1u64 << c) - 1)).count_ones() as Color + 1;
        let colors = self.colors.iter().map(|&c| rank(c)).collect();
        EdgeColoring {
            k: used.count_ones() as usize,
            colors,
        }
    }

    /// Applies `perm[c]` to every color (index 0 ignored).
    pub fn permuted_colors(&self, perm: &[Color]) -> EdgeColoring {
        EdgeColoring {
            k: self.k,
            colors: self.colors.iter().map(|&c| perm[c as usize]).collect(),
        }
    }

    pub fn to_record(&self, g: &Graph) -> ColoringRecord {
        ColoringRecord {
            k: self.k,
            edges: g
                .edges()
                .iter()
                .zip(&self.colors)
                .map(|(&(u, v), &c)| (u, v, c))
                .collect(),
            uncolored: None,
        }
    }

    /// Reads a record; it must color every edge of `g`.
    pub fn from_record(g: &Graph, rec: &ColoringRecord) -> Result<Self, ColoringError> {
        let colors = record_colors(g, rec)?;
        if let Some(e) = colors.iter().position(|&c| c == 0) {
            return Err(ColoringError::Uncolored(e));
        }
        EdgeColoring::new(g, rec.k, colors)
    }
}

/// Independent properness check used on every emitted coloring: length,
/// range, completeness, then one pass over vertex stars.
pub fn verify_proper(g: &Graph, k: usize, colors: &[Color]) -> Result<(), ColoringError> {
    if k > MAX_COLORS {
        return Err(ColoringError::PaletteTooLarge(k));
    }
    if colors.len() != g.m() {
        return Err(ColoringError::WrongLength {
            expected: g.m(),
            found: colors.len(),
        });
    }
    for (e, &c) in colors.iter().enumerate() {
        if c == 0 {
            return Err(ColoringError::Uncolored(e));
        }
        if c as usize > k {
            return Err(ColoringError::OutOfRange {
                edge: e,
                color: c,
                k,
            });
        }
    }
    for v in 0..g.n() {
        let mut seen = 0u64;
        for w in g.neighbors(v) {
            let c = colors[g.edge_id(v, w).unwrap()];
            if seen >> c & 1 == 1 {
                return Err(ColoringError::Conflict {
                    vertex: v,
                    color: c,
                });
            }
            seen |= 1 << c;
        }
    }
    Ok(())
}

/// JSON shape `{k, edges: [[u, v, color]], uncolored: [u, v] | null}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringRecord {
    pub k: usize,
    pub edges: Vec<(Vertex, Vertex, Color)>,
    pub uncolored: Option<(Vertex, Vertex)>,
}

/// Per-edge colors from a record, `0` for edges it does not list.
pub(crate) fn record_colors(g: &Graph, rec: &ColoringRecord) -> Result<Vec<Color>, ColoringError> {
    if rec.k > MAX_COLORS {
        return Err(ColoringError::PaletteTooLarge(rec.k));
    }
    let mut colors = vec![0; g.m()];
    for &(u, v, c) in &rec.edges {
        let e = lookup(g, u, v)?;
        if colors[e] != 0 {
            return Err(ColoringError::RepeatedEdge(u, v));
        }
        if c == 0 || c as usize > rec.k {
            return Err(ColoringError::OutOfRange {
                edge: e,
                color: c,
                k: rec.k,
            });
        }
        colors[e] = c;
    }
    Ok(colors)
}

pub(crate) fn lookup(g: &Graph, u: Vertex, v: Vertex) -> Result<EdgeId, ColoringError> {
    if u >= g.n() || v >= g.n() {
        return Err(ColoringError::UnknownEdge(u, v));
    }
    g.edge_id(u, v).ok_or(ColoringError::UnknownEdge(u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn palette_masks() {
        assert_eq!(palette_mask(0), 0);
        assert_eq!(palette_mask(3), 0b1110);
        assert_eq!(palette_mask(63).count_ones(), 63);
        assert_eq!(palette_mask(63) & 1, 0);
    }

    #[test]
    fn verifier_catches_each_defect() {
        let g = cycle(4);
        // edges sorted: (0,1) (0,3) (1,2) (2,3)
        assert!(verify_proper(&g, 2, &[1, 2, 2, 1]).is_ok());
        assert_eq!(
            verify_proper(&g, 2, &[1, 1, 2, 2]),
            Err(ColoringError::Conflict {
                vertex: 0,
                color: 1
            })
        );
        assert_eq!(
            verify_proper(&g, 2, &[1, 2, 3, 1]),
            Err(ColoringError::OutOfRange {
                edge: 2,
                color: 3,
                k: 2
            })
        );
        assert_eq!(
            verify_proper(&g, 2, &[1, 2, 0, 1]),
            Err(ColoringError::Uncolored(2))
        );
        assert!(matches!(
            verify_proper(&g, 2, &[1]),
            Err(ColoringError::WrongLength { .. })
        ));
    }

    #[test]
    fn record_round_trip() {
        let g = cycle(4);
        let c = EdgeColoring::new(&g, 3, vec![1, 3, 3, 1]).unwrap();
        let rec = c.to_record(&g);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            json,
            r#"{"k":3,"edges":[[0,1,1],[0,3,3],[1,2,3],[2,3,1]],"uncolored":null}"#
        );
        let back: ColoringRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(EdgeColoring::from_record(&g, &back).unwrap(), c);
    }

    #[test]
    fn compaction_and_counts() {
        let g = cycle(4);
        let c = EdgeColoring::new(&g, 5, vec![2, 5, 5, 2]).unwrap();
        assert_eq!(c.colors_used(), 2);
        let d = c.compacted();
        assert_eq!(d.k(), 2);
        assert_eq!(d.colors(), &[1, 2, 2, 1]);
    }

    #[test]
    fn record_errors() {
        let g = path(3);
        let rec = ColoringRecord {
            k: 2,
            edges: vec![(0, 2, 1)],
            uncolored: None,
        };
        assert_eq!(
            EdgeColoring::from_record(&g, &rec),
            Err(ColoringError::UnknownEdge(0, 2))
        );
        let rec = ColoringRecord {
            k: 2,
            edges: vec![(0, 1, 1)],
            uncolored: None,
        };
        assert_eq!(
            EdgeColoring::from_record(&g, &rec),
            Err(ColoringError::Uncolored(1))
        );
    }
}
