//! Exact chromatic index by backtracking. Vizing's bound leaves only the
//! question whether `Δ` colors suffice; that is what the search decides.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{palette_mask, Color, EdgeColoring};
use crate::density::{density_with_limit, DEFAULT_ENUMERATION_LIMIT};
use crate::graph::{EdgeId, Graph};
use crate::kempe::PartialEdgeColoring;
use crate::vizing::color_delta_plus_one;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search budget of {nodes} nodes exhausted; chromatic index in [{lb}, {ub}]")]
    Timeout { lb: usize, ub: usize, nodes: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Maximum number of color assignments tried.
    pub node_budget: u64,
    /// Use `⌈ω⌉` as a lower bound when `n` is within the enumeration limit.
    pub density_bound: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            node_budget: 20_000_000,
            density_bound: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub chromatic_index: usize,
    pub witness: EdgeColoring,
    pub nodes_explored: u64,
    pub lower_bound: usize,
    /// True when the density bound settled the answer without search.
    pub decided_by_density: bool,
}

pub fn chromatic_index(g: &Graph) -> Result<OracleResult, OracleError> {
    chromatic_index_exact(g, &OracleConfig::default())
}

pub fn chromatic_index_exact(g: &Graph, cfg: &OracleConfig) -> Result<OracleResult, OracleError> {
    let delta = g.max_degree();
    if delta == 0 {
        return Ok(OracleResult {
            chromatic_index: 0,
            witness: EdgeColoring::new(g, 0, vec![]).unwrap(),
            nodes_explored: 0,
            lower_bound: 0,
            decided_by_density: false,
        });
    }
    let mut lb = delta;
    if cfg.density_bound && g.n() <= DEFAULT_ENUMERATION_LIMIT {
        let omega = density_with_limit(g, DEFAULT_ENUMERATION_LIMIT)
            .expect("within limit")
            .omega;
        lb = lb.max(omega.ceil().to_integer() as usize);
    }
    let class2 = |nodes, by_density| OracleResult {
        chromatic_index: delta + 1,
        witness: color_delta_plus_one(g).coloring,
        nodes_explored: nodes,
        lower_bound: lb,
        decided_by_density: by_density,
    };
    if lb > delta {
        return Ok(class2(0, true));
    }
    let mut pc = PartialEdgeColoring::uncolored(g, delta);
    // the star of the first maximum-degree vertex takes 1..=Δ in edge order
    let v0 = (0..g.n()).find(|&v| g.degree(v) == delta).unwrap();
    for (i, w) in g.neighbors(v0).enumerate() {
        pc.assign(g.edge_id(v0, w).unwrap(), Some(i as Color + 1));
    }
    let mut search = Search::new(&pc, cfg.node_budget);
    match search.run() {
        Some(true) => Ok(OracleResult {
            chromatic_index: delta,
            witness: EdgeColoring::new(g, delta, search.colors.clone()).expect("search is proper"),
            nodes_explored: search.nodes,
            lower_bound: lb,
            decided_by_density: false,
        }),
        Some(false) => Ok(class2(search.nodes, false)),
        None => Err(OracleError::Timeout {
            lb,
            ub: delta + 1,
            nodes: search.nodes,
        }),
    }
}

/// Completes a proper partial coloring within its own palette, or proves
/// there is no completion. `Ok(None)` means none exists.
pub fn extend_coloring(
    pc: &PartialEdgeColoring,
    node_budget: u64,
) -> Result<Option<EdgeColoring>, OracleError> {
    let g = pc.graph();
    if !pc.is_proper() {
        return Ok(None);
    }
    let mut search = Search::new(pc, node_budget);
    match search.run() {
        Some(true) => Ok(Some(
            EdgeColoring::new(g, pc.k(), search.colors.clone()).expect("search is proper"),
        )),
        Some(false) => Ok(None),
        None => Err(OracleError::Timeout {
            lb: pc.k(),
            ub: pc.k() + 1,
            nodes: search.nodes,
        }),
    }
}

/// `χ'(G − e) < χ'(G)`.
pub fn is_critical_edge(g: &Graph, e: EdgeId, cfg: &OracleConfig) -> Result<bool, OracleError> {
    let whole = chromatic_index_exact(g, cfg)?.chromatic_index;
    edge_drops(g, e, whole, cfg)
}

fn edge_drops(g: &Graph, e: EdgeId, whole: usize, cfg: &OracleConfig) -> Result<bool, OracleError> {
    Ok(chromatic_index_exact(&g.without_edge(e), cfg)?.chromatic_index < whole)
}

/// Connected, Class 2, and every edge critical.
pub fn is_delta_critical(g: &Graph, cfg: &OracleConfig) -> Result<bool, OracleError> {
    if g.m() == 0 || !g.is_connected() {
        return Ok(false);
    }
    let chi = chromatic_index_exact(g, cfg)?.chromatic_index;
    if chi != g.max_degree() + 1 {
        return Ok(false);
    }
    for e in 0..g.m() {
        if !edge_drops(g, e, chi, cfg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

struct Search<'a> {
    g: &'a Graph,
    palette: u64,
    colors: Vec<Color>,
    used: Vec<u64>,
    /// Colors appearing anywhere; unused ones are interchangeable.
    seen: u64,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(pc: &PartialEdgeColoring<'a>, budget: u64) -> Self {
        let g = pc.graph();
        let colors = pc.raw_colors().to_vec();
        let used = (0..g.n()).map(|v| pc.present(v)).collect();
        let seen = colors.iter().fold(0u64, |m, &c| m | 1 << c) & !1;
        Search {
            g,
            palette: palette_mask(pc.k()),
            colors,
            used,
            seen,
            nodes: 0,
            budget,
        }
    }

    /// `Some(found)` or `None` on budget exhaustion.
    fn run(&mut self) -> Option<bool> {
        let mut best: Option<(u32, EdgeId, u64)> = None;
        for e in 0..self.g.m() {
            if self.colors[e] != 0 {
                continue;
            }
            let (u, v) = self.g.edge(e);
            let avail = self.palette & !(self.used[u] | self.used[v]);
            let count = avail.count_ones();
            if count == 0 {
                return Some(false);
            }
            if best.is_none_or(|(c, _, _)| count < c) {
                best = Some((count, e, avail));
            }
        }
        let Some((_, e, avail)) = best else {
            return Some(true);
        };
        let (u, v) = self.g.edge(e);
        let fresh = avail & !self.seen;
        let choices = (avail & self.seen) | (fresh & fresh.wrapping_neg());
        let mut rest = choices;
        while rest != 0 {
            let c = rest.trailing_zeros();
            rest &= rest - 1;
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let bit = 1u64 << c;
            let seen_before = self.seen;
            self.colors[e] = c as Color;
            self.used[u] |= bit;
            self.used[v] |= bit;
            self.seen |= bit;
            let found = self.run();
            if found != Some(false) {
                return found;
            }
            self.colors[e] = 0;
            self.used[u] &= !bit;
            self.used[v] &= !bit;
            self.seen = seen_before;
        }
        Some(false)
    }
}
