//! Partial edge colorings, `(α,β)`-chains and the recoloring operations built
//! on them: Kempe changes, subchain swaps, shifting and operation scripts.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{
    lookup, palette_mask, record_colors, Color, ColoringError, ColoringRecord, EdgeColoring,
    MAX_COLORS,
};
use crate::graph::{Bits, EdgeId, Graph, Vertex};

const NONE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KempeError {
    #[error("input coloring is not proper: {0}")]
    ImproperInput(ColoringError),
    #[error("colors must be distinct and in [1, {k}], got {a} and {b}")]
    BadColors { a: Color, b: Color, k: usize },
    #[error("color {color} outside [1, {k}]")]
    ColorOutOfRange { color: Color, k: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("edge id {0} out of range")]
    EdgeOutOfRange(EdgeId),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("coloring is conflicting at vertex {vertex} in color {color}")]
    Conflicted { vertex: Vertex, color: Color },
    #[error("chain no longer matches the coloring")]
    StaleChain,
    #[error("vertex {0} is not on the chain")]
    VerticesNotOnChain(Vertex),
    #[error("the chain is an even cycle; no path segment exists")]
    NoSegment,
    #[error("vertex {0} is interior to its chain; a direction is required")]
    AmbiguousDirection(Vertex),
    #[error("vertex {vertex} has no incident edge of color {color} on its chain")]
    BadDirection { vertex: Vertex, color: Color },
    #[error("leaf {0} must miss exactly one color to be shifted")]
    NotSingleMissing(Vertex),
    #[error("shift collides at vertex {vertex} in color {color}")]
    ShiftConflict { vertex: Vertex, color: Color },
    #[error("edge {0}-{1} has color {2:?}, expected {3:?}")]
    ColorMismatch(Vertex, Vertex, Option<Color>, Option<Color>),
}

impl From<ColoringError> for KempeError {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::UnknownEdge(u, v) => KempeError::NotAnEdge(u, v),
            other => KempeError::ImproperInput(other),
        }
    }
}

/// An edge coloring of `g` with palette `[1, k]` in which some edges may be
/// uncolored. Missing sets and per-color incidence are maintained
/// incrementally; transient conflicts are representable so that scripts can
/// pass through them.
#[derive(Clone)]
pub struct PartialEdgeColoring<'g> {
    g: &'g Graph,
    k: usize,
    color: Vec<Color>,
    present: Vec<u64>,
    mult: Vec<u8>,
    slot: Vec<u32>,
    conflicts: usize,
}

impl PartialEq for PartialEdgeColoring<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.g, other.g) && self.k == other.k && self.color == other.color
    }
}

impl Eq for PartialEdgeColoring<'_> {}

impl std::fmt::Debug for PartialEdgeColoring<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PartialEdgeColoring")
            .field("k", &self.k)
            .field("color", &self.color)
            .finish()
    }
}

impl<'g> PartialEdgeColoring<'g> {
    /// Every edge uncolored.
    pub fn uncolored(g: &'g Graph, k: usize) -> Self {
        assert!(k <= MAX_COLORS, "palette too large");
        let width = k + 1;
        PartialEdgeColoring {
            g,
            k,
            color: vec![0; g.m()],
            present: vec![0; g.n()],
            mult: vec![0; g.n() * width],
            slot: vec![NONE; g.n() * width],
            conflicts: 0,
        }
    }

    /// Per-edge colors with `0` meaning uncolored. Conflicts are allowed.
    pub fn from_colors(g: &'g Graph, k: usize, colors: &[Color]) -> Result<Self, KempeError> {
        if k > MAX_COLORS {
            return Err(ColoringError::PaletteTooLarge(k).into());
        }
        if colors.len() != g.m() {
            return Err(ColoringError::WrongLength {
                expected: g.m(),
                found: colors.len(),
            }
            .into());
        }
        let mut pc = Self::uncolored(g, k);
        for (e, &c) in colors.iter().enumerate() {
            if c != 0 {
                if c as usize > k {
                    return Err(KempeError::ColorOutOfRange { color: c, k });
                }
                pc.assign(e, Some(c));
            }
        }
        Ok(pc)
    }

    pub fn from_coloring(g: &'g Graph, coloring: &EdgeColoring) -> Self {
        Self::from_colors(g, coloring.k(), coloring.colors()).expect("validated coloring")
    }

    /// Reads a coloring record (possibly partial) against `g`.
    pub fn from_record(g: &'g Graph, rec: &ColoringRecord) -> Result<Self, KempeError> {
        let colors = record_colors(g, rec)?;
        Self::from_colors(g, rec.k, &colors)
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color(&self, e: EdgeId) -> Option<Color> {
        match self.color[e] {
            0 => None,
            c => Some(c),
        }
    }

    /// Color of the edge `uv`; `None` if uncolored. Panics if `uv ∉ E`.
    pub fn color_of(&self, u: Vertex, v: Vertex) -> Option<Color> {
        self.color(self.g.edge_id(u, v).expect("not an edge"))
    }

    pub fn raw_colors(&self) -> &[Color] {
        &self.color
    }

    pub fn uncolored_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.color
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(e, _)| e)
    }

    /// The first uncolored edge, if any.
    pub fn uncolored_edge(&self) -> Option<EdgeId> {
        self.uncolored_edges().next()
    }

    pub fn palette(&self) -> u64 {
        palette_mask(self.k)
    }

    pub fn present(&self, v: Vertex) -> u64 {
        self.present[v]
    }

    /// `\bar φ(v)` as a bit mask.
    pub fn missing(&self, v: Vertex) -> u64 {
        self.palette() & !self.present[v]
    }

    /// Union of the missing sets over a vertex mask.
    pub fn missing_union(&self, set: u64) -> u64 {
        Bits(set).fold(0, |m, v| m | self.missing(v))
    }

    pub fn misses(&self, v: Vertex, c: Color) -> bool {
        self.present[v] >> c & 1 == 0
    }

    /// The edge of color `c` at `v` (one of them if conflicted).
    pub fn edge_at(&self, v: Vertex, c: Color) -> Option<EdgeId> {
        match self.slot[v * (self.k + 1) + c as usize] {
            NONE => None,
            e => Some(e as EdgeId),
        }
    }

    pub fn neighbor_at(&self, v: Vertex, c: Color) -> Option<Vertex> {
        self.edge_at(v, c).map(|e| other_end(self.g, e, v))
    }

    pub fn is_proper(&self) -> bool {
        self.conflicts == 0
    }

    /// Every `(vertex, color)` with two or more incident edges of that color.
    pub fn conflicts(&self) -> Vec<(Vertex, Color)> {
        if self.conflicts == 0 {
            return Vec::new();
        }
        let width = self.k + 1;
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 1)
            .map(|(i, _)| (i / width, (i % width) as Color))
            .collect()
    }

    /// Sets or clears the color of `e` without any properness check.
    pub fn assign(&mut self, e: EdgeId, c: Option<Color>) {
        let (u, v) = self.g.edge(e);
        let old = self.color[e];
        if old != 0 {
            for x in [u, v] {
                self.detach(x, old, e);
            }
        }
        let new = c.unwrap_or(0);
        self.color[e] = new;
        if new != 0 {
            for x in [u, v] {
                self.attach(x, new, e);
            }
        }
    }

    fn attach(&mut self, x: Vertex, c: Color, e: EdgeId) {
        let i = x * (self.k + 1) + c as usize;
        self.mult[i] += 1;
        if self.mult[i] == 1 {
            self.slot[i] = e as u32;
            self.present[x] |= 1 << c;
        } else if self.mult[i] == 2 {
            self.conflicts += 1;
        }
    }

    fn detach(&mut self, x: Vertex, c: Color, e: EdgeId) {
        let i = x * (self.k + 1) + c as usize;
        self.mult[i] -= 1;
        match self.mult[i] {
            0 => {
                self.slot[i] = NONE;
                self.present[x] &= !(1 << c);
            }
            1 => {
                self.conflicts -= 1;
                if self.slot[i] == e as u32 {
                    let other = self
                        .g
                        .neighbors(x)
                        .map(|w| self.g.edge_id(x, w).unwrap())
                        .find(|&f| f != e && self.color[f] == c)
                        .expect("multiplicity says another edge remains");
                    self.slot[i] = other as u32;
                }
            }
            _ => {
                if self.slot[i] == e as u32 {
                    let other = self
                        .g
                        .neighbors(x)
                        .map(|w| self.g.edge_id(x, w).unwrap())
                        .find(|&f| f != e && self.color[f] == c)
                        .unwrap();
                    self.slot[i] = other as u32;
                }
            }
        }
    }

    /// Same edge colors under `perm[c]` (index 0 ignored).
    pub fn permuted_colors(&self, perm: &[Color]) -> PartialEdgeColoring<'g> {
        let colors: Vec<Color> = self
            .color
            .iter()
            .map(|&c| if c == 0 { 0 } else { perm[c as usize] })
            .collect();
        Self::from_colors(self.g, self.k, &colors).expect("permutation stays in the palette")
    }

    /// Full coloring if every edge is colored and the state is proper.
    pub fn to_coloring(&self) -> Result<EdgeColoring, ColoringError> {
        EdgeColoring::new(self.g, self.k, self.color.clone())
    }

    pub fn to_record(&self) -> ColoringRecord {
        let g = self.g;
        ColoringRecord {
            k: self.k,
            edges: (0..g.m())
                .filter(|&e| self.color[e] != 0)
                .map(|e| {
                    let (u, v) = g.edge(e);
                    (u, v, self.color[e])
                })
                .collect(),
            uncolored: self.uncolored_edge().map(|e| g.edge(e)),
        }
    }

    fn check_pair(&self, a: Color, b: Color) -> Result<(), KempeError> {
        if a == b || a == 0 || b == 0 || a as usize > self.k || b as usize > self.k {
            return Err(KempeError::BadColors { a, b, k: self.k });
        }
        Ok(())
    }

    fn unique_at(&self, v: Vertex, c: Color) -> Result<Option<EdgeId>, KempeError> {
        if self.mult[v * (self.k + 1) + c as usize] > 1 {
            return Err(KempeError::Conflicted {
                vertex: v,
                color: c,
            });
        }
        Ok(self.edge_at(v, c))
    }

    /// Walks from `start` leaving by color `first`, alternating with `other`.
    /// Returns the visited vertices (starting with `start`), the edges, and
    /// whether the walk closed back at `start`.
    fn walk(
        &self,
        start: Vertex,
        first: Color,
        other: Color,
    ) -> Result<(Vec<Vertex>, Vec<EdgeId>, bool), KempeError> {
        let mut verts = vec![start];
        let mut edges = Vec::new();
        let mut at = start;
        let mut c = first;
        loop {
            let back = if c == first { other } else { first };
            self.unique_at(at, back)?;
            let Some(e) = self.unique_at(at, c)? else {
                break;
            };
            let next = other_end(self.g, e, at);
            edges.push(e);
            if next == start {
                return Ok((verts, edges, true));
            }
            verts.push(next);
            at = next;
            c = if c == first { other } else { first };
        }
        Ok((verts, edges, false))
    }
}

pub(crate) fn other_end(g: &Graph, e: EdgeId, v: Vertex) -> Vertex {
    let (a, b) = g.edge(e);
    if a == v {
        b
    } else {
        a
    }
}

/// Builds the partial coloring obtained by uncoloring `e` in a full
/// coloring.
pub fn erase_edge<'g>(
    g: &'g Graph,
    k: usize,
    coloring: &[Color],
    e: EdgeId,
) -> Result<PartialEdgeColoring<'g>, KempeError> {
    crate::coloring::verify_proper(g, k, coloring).map_err(KempeError::ImproperInput)?;
    if e >= g.m() {
        return Err(KempeError::EdgeOutOfRange(e));
    }
    let mut pc = PartialEdgeColoring::from_colors(g, k, coloring)?;
    pc.assign(e, None);
    Ok(pc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChainKind {
    Path,
    EvenCycle,
}

/// A connected piece of the `(α,β)` subgraph. Full components are stored in
/// canonical orientation: paths start at their smaller endpoint, cycles at
/// their smallest vertex heading to its smaller chain neighbor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KempeChain {
    pub colors: (Color, Color),
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
    pub kind: ChainKind,
}

impl KempeChain {
    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn vertex_mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | 1 << v)
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Both ends of a path (equal for a single vertex); `None` for cycles.
    pub fn endpoints(&self) -> Option<(Vertex, Vertex)> {
        match self.kind {
            ChainKind::Path => Some((self.vertices[0], *self.vertices.last().unwrap())),
            ChainKind::EvenCycle => None,
        }
    }

    fn same_component(&self, other: &KempeChain) -> bool {
        let sorted = |xs: &[usize]| {
            let mut v = xs.to_vec();
            v.sort_unstable();
            v
        };
        self.kind == other.kind
            && sorted(&self.vertices) == sorted(&other.vertices)
            && sorted(&self.edges) == sorted(&other.edges)
    }
}

fn ordered(a: Color, b: Color) -> (Color, Color) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The full `(α,β)`-component through `v`.
pub fn chain_through(
    pc: &PartialEdgeColoring,
    v: Vertex,
    a: Color,
    b: Color,
) -> Result<KempeChain, KempeError> {
    pc.check_pair(a, b)?;
    if v >= pc.g.n() {
        return Err(KempeError::VertexOutOfRange(v));
    }
    let (lo, hi) = ordered(a, b);
    let (fwd_v, fwd_e, closed) = pc.walk(v, lo, hi)?;
    if closed {
        let start = *fwd_v.iter().min().unwrap();
        let i = fwd_v.iter().position(|&x| x == start).unwrap();
        let len = fwd_v.len();
        let mut verts: Vec<Vertex> = (0..len).map(|j| fwd_v[(i + j) % len]).collect();
        // edges[j] joins verts[j] and verts[j+1]
        let mut edges: Vec<EdgeId> = (0..len).map(|j| fwd_e[(i + j) % len]).collect();
        if verts[len - 1] < verts[1] {
            verts[1..].reverse();
            edges.reverse();
        }
        return Ok(KempeChain {
            colors: (lo, hi),
            vertices: verts,
            edges,
            kind: ChainKind::EvenCycle,
        });
    }
    let (back_v, back_e, _) = pc.walk(v, hi, lo)?;
    let mut verts: Vec<Vertex> = back_v.into_iter().rev().collect();
    let mut edges: Vec<EdgeId> = back_e.into_iter().rev().collect();
    verts.extend_from_slice(&fwd_v[1..]);
    edges.extend_from_slice(&fwd_e);
    if verts.last() < verts.first() {
        verts.reverse();
        edges.reverse();
    }
    Ok(KempeChain {
        colors: (lo, hi),
        vertices: verts,
        edges,
        kind: ChainKind::Path,
    })
}

/// Whether `x` and `y` lie on the same `(α,β)`-chain.
pub fn linked(
    pc: &PartialEdgeColoring,
    x: Vertex,
    y: Vertex,
    a: Color,
    b: Color,
) -> Result<bool, KempeError> {
    if x == y {
        pc.check_pair(a, b)?;
        return Ok(true);
    }
    Ok(chain_through(pc, x, a, b)?.contains(y))
}

/// `P_x(α,β)`: the segment of the chain through `x` that starts at `x` and
/// ends at the far endpoint. When `x` is interior, `first` names the color
/// of the first edge to take.
pub fn path_from(
    pc: &PartialEdgeColoring,
    x: Vertex,
    a: Color,
    b: Color,
    first: Option<Color>,
) -> Result<KempeChain, KempeError> {
    let chain = chain_through(pc, x, a, b)?;
    if chain.kind == ChainKind::EvenCycle {
        return Err(KempeError::NoSegment);
    }
    let (p, q) = chain.endpoints().unwrap();
    let (lo, hi) = chain.colors;
    let mut oriented = chain.clone();
    if x == q && x != p {
        oriented.vertices.reverse();
        oriented.edges.reverse();
    } else if x != p {
        let Some(c) = first else {
            return Err(KempeError::AmbiguousDirection(x));
        };
        if c != lo && c != hi {
            return Err(KempeError::BadDirection {
                vertex: x,
                color: c,
            });
        }
        let (verts, edges, _) = pc.walk(x, c, if c == lo { hi } else { lo })?;
        oriented.vertices = verts;
        oriented.edges = edges;
    }
    Ok(oriented)
}

/// Result of a subchain swap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapOutcome {
    pub proper: bool,
    pub conflicted: Vec<(Vertex, Color)>,
}

impl<'g> PartialEdgeColoring<'g> {
    fn check_current(&self, chain: &KempeChain) -> Result<(), KempeError> {
        let v = *chain.vertices.first().ok_or(KempeError::StaleChain)?;
        let now = chain_through(self, v, chain.colors.0, chain.colors.1)
            .map_err(|_| KempeError::StaleChain)?;
        if now.same_component(chain) {
            Ok(())
        } else {
            Err(KempeError::StaleChain)
        }
    }

    fn flip(&mut self, edges: &[EdgeId], (a, b): (Color, Color)) {
        let new: Vec<Color> = edges
            .iter()
            .map(|&e| if self.color[e] == a { b } else { a })
            .collect();
        for &e in edges {
            self.assign(e, None);
        }
        for (&e, c) in edges.iter().zip(new) {
            self.assign(e, Some(c));
        }
    }

    /// Kempe change on a full component.
    pub fn swap_chain(&mut self, chain: &KempeChain) -> Result<(), KempeError> {
        self.check_current(chain)?;
        self.flip(&chain.edges, chain.colors);
        Ok(())
    }

    /// Swaps colors on `P_[x,y]` of a path component. Properness can fail
    /// only at `x` or `y` when they are interior; the outcome reports it.
    pub fn swap_subchain(
        &mut self,
        chain: &KempeChain,
        x: Vertex,
        y: Vertex,
    ) -> Result<SwapOutcome, KempeError> {
        self.check_current(chain)?;
        if chain.kind == ChainKind::EvenCycle {
            return Err(KempeError::NoSegment);
        }
        let i = chain.position(x).ok_or(KempeError::VerticesNotOnChain(x))?;
        let j = chain.position(y).ok_or(KempeError::VerticesNotOnChain(y))?;
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.flip(&chain.edges[i..j], chain.colors);
        let conflicted: Vec<(Vertex, Color)> = self
            .conflicts()
            .into_iter()
            .filter(|&(v, c)| (v == x || v == y) && (c == chain.colors.0 || c == chain.colors.1))
            .collect();
        Ok(SwapOutcome {
            proper: self.is_proper(),
            conflicted,
        })
    }

    /// Recolors edges `r v` simultaneously (`None` uncolors). The result must
    /// be proper at `r` and at every touched `v`; otherwise nothing changes.
    pub fn recolor_star(
        &mut self,
        r: Vertex,
        changes: &[(Vertex, Option<Color>)],
    ) -> Result<(), KempeError> {
        let g = self.g;
        let mut ids = Vec::with_capacity(changes.len());
        for &(v, c) in changes {
            let e = g.edge_id(r, v).ok_or(KempeError::NotAnEdge(r, v))?;
            if let Some(c) = c {
                if c == 0 || c as usize > self.k {
                    return Err(KempeError::ColorOutOfRange {
                        color: c,
                        k: self.k,
                    });
                }
            }
            ids.push(e);
        }
        let saved: Vec<Color> = ids.iter().map(|&e| self.color[e]).collect();
        let conflicts_before = self.conflicts;
        for &e in &ids {
            self.assign(e, None);
        }
        for (&e, &(_, c)) in ids.iter().zip(changes) {
            self.assign(e, c);
        }
        if self.conflicts > conflicts_before {
            let bad = self
                .conflicts()
                .into_iter()
                .find(|&(v, _)| v == r || changes.iter().any(|&(w, _)| w == v))
                .unwrap_or((r, 0));
            for &e in &ids {
                self.assign(e, None);
            }
            for (&e, &c) in ids.iter().zip(&saved) {
                self.assign(e, (c != 0).then_some(c));
            }
            return Err(KempeError::ShiftConflict {
                vertex: bad.0,
                color: bad.1,
            });
        }
        Ok(())
    }

    /// Shifting around `r`: every `r s` takes the single color missing at
    /// `s`. All targets are read from the coloring before the operation and
    /// applied at once; an empty sequence changes nothing.
    pub fn shift(&mut self, r: Vertex, leaves: &[Vertex]) -> Result<(), KempeError> {
        let mut changes = Vec::with_capacity(leaves.len());
        for &s in leaves {
            if !self.g.adjacent(r, s) {
                return Err(KempeError::NotAnEdge(r, s));
            }
            let m = self.missing(s);
            if m.count_ones() != 1 {
                return Err(KempeError::NotSingleMissing(s));
            }
            changes.push((s, Some(m.trailing_zeros() as Color)));
        }
        self.recolor_star(r, &changes)
    }

    /// Swaps a random Kempe chain if `accept` allows it. The chain
    /// is found by picking a random vertex with a colored edge, one of its
    /// colored edges (color `a`), and a random colored edge elsewhere with a
    /// different color `b`. Choices go through edges rather than colors, so
    /// the walk commutes with renaming colors. Returns the swapped chain.
    pub fn random_kempe_change<R: Rng>(
        &mut self,
        rng: &mut R,
        accept: impl Fn(&Self, &KempeChain) -> bool,
    ) -> Option<KempeChain> {
        if !self.is_proper() {
            return None;
        }
        let g = self.g;
        let colored: Vec<EdgeId> = (0..g.m()).filter(|&e| self.color[e] != 0).collect();
        if colored.len() < 2 {
            return None;
        }
        let e = colored[rng.gen_range(0..colored.len())];
        let (u, v) = g.edge(e);
        let x = if rng.gen_bool(0.5) { u } else { v };
        let a = self.color[e];
        let others: Vec<EdgeId> = colored
            .iter()
            .copied()
            .filter(|&f| self.color[f] != a)
            .collect();
        if others.is_empty() {
            return None;
        }
        let b = self.color[others[rng.gen_range(0..others.len())]];
        let chain = chain_through(self, x, a, b).ok()?;
        if !accept(self, &chain) {
            return None;
        }
        self.flip(&chain.edges, chain.colors);
        Some(chain)
    }
}

/// One step of a recoloring script. Vertices name chains; `first` selects
/// the direction of `P_x` when `x` is interior.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Action {
    /// Kempe change on the component of `x`.
    SwapChain {
        x: Vertex,
        colors: (Color, Color),
    },
    /// Swap on `P_x(α,β)` (the segment from `x` to the far end).
    SwapPath {
        x: Vertex,
        colors: (Color, Color),
        first: Option<Color>,
    },
    /// Swap on `P_[x,y]` of the component containing both.
    SwapSubchain {
        x: Vertex,
        y: Vertex,
        colors: (Color, Color),
    },
    Shift {
        center: Vertex,
        leaves: Vec<Vertex>,
    },
    /// `uv: from → to`.
    Recolor {
        edge: (Vertex, Vertex),
        from: Color,
        to: Color,
    },
    Uncolor {
        edge: (Vertex, Vertex),
    },
    Color {
        edge: (Vertex, Vertex),
        color: Color,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub index: usize,
    pub action: Action,
    pub proper: bool,
    pub conflicted: Vec<(Vertex, Color)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("script step {step} failed: {source}")]
pub struct ScriptError {
    pub step: usize,
    pub source: KempeError,
}

impl<'g> PartialEdgeColoring<'g> {
    /// Applies `script` left to right. Transient conflicts are allowed and
    /// recorded in the trace; the first failing action aborts the script.
    pub fn apply_script(&mut self, script: &[Action]) -> Result<Vec<TraceStep>, ScriptError> {
        let mut trace = Vec::with_capacity(script.len());
        for (step, action) in script.iter().enumerate() {
            self.apply_action(action)
                .map_err(|source| ScriptError { step, source })?;
            trace.push(TraceStep {
                index: step,
                action: action.clone(),
                proper: self.is_proper(),
                conflicted: self.conflicts(),
            });
        }
        Ok(trace)
    }

    pub fn apply_action(&mut self, action: &Action) -> Result<(), KempeError> {
        match action {
            Action::SwapChain { x, colors } => {
                let chain = chain_through(self, *x, colors.0, colors.1)?;
                self.flip(&chain.edges, chain.colors);
            }
            Action::SwapPath { x, colors, first } => {
                let seg = path_from(self, *x, colors.0, colors.1, *first)?;
                self.flip(&seg.edges, seg.colors);
            }
            Action::SwapSubchain { x, y, colors } => {
                let chain = chain_through(self, *x, colors.0, colors.1)?;
                self.swap_subchain(&chain, *x, *y)?;
            }
            Action::Shift { center, leaves } => self.shift(*center, leaves)?,
            Action::Recolor { edge, from, to } => {
                let e = lookup(self.g, edge.0, edge.1)?;
                if self.color[e] != *from {
                    return Err(KempeError::ColorMismatch(
                        edge.0,
                        edge.1,
                        self.color(e),
                        Some(*from),
                    ));
                }
                if *to == 0 || *to as usize > self.k {
                    return Err(KempeError::ColorOutOfRange {
                        color: *to,
                        k: self.k,
                    });
                }
                self.assign(e, Some(*to));
            }
            Action::Uncolor { edge } => {
                let e = lookup(self.g, edge.0, edge.1)?;
                self.assign(e, None);
            }
            Action::Color { edge, color } => {
                let e = lookup(self.g, edge.0, edge.1)?;
                if self.color[e] != 0 {
                    return Err(KempeError::ColorMismatch(
                        edge.0,
                        edge.1,
                        self.color(e),
                        None,
                    ));
                }
                if *color == 0 || *color as usize > self.k {
                    return Err(KempeError::ColorOutOfRange {
                        color: *color,
                        k: self.k,
                    });
                }
                self.assign(e, Some(*color));
            }
        }
        Ok(())
    }
}
