//! `Δ+1` edge coloring by inserting edges one at a time with a multifan,
//! a path shift along the fan's parent tree, and at most one Kempe swap.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, EdgeColoring};
use crate::fans::grow_multifan;
use crate::graph::{Bits, EdgeId, Graph, Vertex};
use crate::kempe::{path_from, Action, KempeError, PartialEdgeColoring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VizingError {
    #[error("edge {0} is not an uncolored edge")]
    NotUncolored(EdgeId),
    #[error("no insertion found for {0}-{1} within {2} colors")]
    Stuck(Vertex, Vertex, usize),
    #[error(transparent)]
    Kempe(#[from] KempeError),
}

/// What one insertion did.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertStep {
    /// `(r, s_1)`: the fan center first.
    pub edge: (Vertex, Vertex),
    pub fan_size: usize,
    pub swaps: usize,
    /// Edges at `r` recolored by the path shift.
    pub shifted: usize,
    /// A script that reproduces the insertion from the prior coloring.
    pub actions: Vec<Action>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringOutcome {
    pub coloring: EdgeColoring,
    pub colors_used: usize,
    pub steps: Vec<InsertStep>,
}

/// Colors `g` with at most `Δ+1` colors inserting edges in id order.
pub fn color_delta_plus_one(g: &Graph) -> ColoringOutcome {
    let order: Vec<EdgeId> = (0..g.m()).collect();
    color_in_order(g, &order)
}

/// Same as [`color_delta_plus_one`] with a seeded random insertion order.
pub fn color_delta_plus_one_seeded(g: &Graph, seed: u64) -> ColoringOutcome {
    let mut order: Vec<EdgeId> = (0..g.m()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    color_in_order(g, &order)
}

/// `order` must list every edge once.
pub fn color_in_order(g: &Graph, order: &[EdgeId]) -> ColoringOutcome {
    let k = g.max_degree() + 1;
    let mut pc = PartialEdgeColoring::uncolored(g, k);
    let mut steps = Vec::with_capacity(g.m());
    for &e in order {
        steps.push(insert_edge(&mut pc, e).expect("Δ+1 colors always admit an insertion"));
    }
    let coloring = pc.to_coloring().expect("every edge inserted");
    let colors_used = coloring.colors_used();
    ColoringOutcome {
        coloring,
        colors_used,
        steps,
    }
}

/// Colors the uncolored edge `e`, trying both endpoints as the fan center.
/// Never fails when the palette has at least `Δ+1` colors.
pub fn insert_edge(pc: &mut PartialEdgeColoring, e: EdgeId) -> Result<InsertStep, VizingError> {
    let g = pc.graph();
    if e >= g.m() || pc.color(e).is_some() {
        return Err(VizingError::NotUncolored(e));
    }
    let (u, v) = g.edge(e);
    if let Some(step) = try_insert(pc, u, v)? {
        return Ok(step);
    }
    if let Some(step) = try_insert(pc, v, u)? {
        return Ok(step);
    }
    Err(VizingError::Stuck(u, v, pc.k()))
}

/// One insertion attempt for the uncolored edge `r s_1` with `r` as the
/// center. Leaves `pc` unchanged and returns `None` when every candidate
/// chain passes through `r`.
pub fn try_insert(
    pc: &mut PartialEdgeColoring,
    r: Vertex,
    s1: Vertex,
) -> Result<Option<InsertStep>, KempeError> {
    let common = pc.missing(r) & pc.missing(s1);
    if common != 0 {
        let c = common.trailing_zeros() as Color;
        let actions = vec![Action::Color {
            edge: (r, s1),
            color: c,
        }];
        pc.apply_script(&actions).map_err(|e| e.source)?;
        return Ok(Some(InsertStep {
            edge: (r, s1),
            fan_size: 2,
            swaps: 0,
            shifted: 0,
            actions,
        }));
    }
    let fan = grow_multifan(pc, r, s1).map_err(|_| KempeError::NotAnEdge(r, s1))?;
    let parents = fan.parents(pc);
    let path_to = |i: usize| {
        let mut p = vec![i];
        while let Some(q) = parents[*p.last().unwrap()] {
            p.push(q);
        }
        p.reverse();
        p
    };
    let free_r = pc.missing(r);
    if let Some(i) = (1..fan.len()).find(|&i| pc.missing(fan.leaves[i]) & free_r != 0) {
        let gamma = (pc.missing(fan.leaves[i]) & free_r).trailing_zeros() as Color;
        let actions = shift_script(&fan.leaves, &fan.colors, &path_to(i), r, gamma);
        pc.apply_script(&actions).map_err(|e| e.source)?;
        return Ok(Some(InsertStep {
            edge: (r, s1),
            fan_size: fan.order(),
            swaps: 0,
            shifted: actions.len() / 2,
            actions,
        }));
    }
    for alpha in Bits(free_r).map(|c| c as Color) {
        for (i, &s) in fan.leaves.iter().enumerate() {
            for beta in Bits(pc.missing(s)).map(|c| c as Color) {
                let path = path_from(pc, s, alpha, beta, None)?;
                if path.contains(r) {
                    continue;
                }
                let w = *path.vertices.last().unwrap();
                let mut route = path_to(i);
                if let Some(j) = fan.leaf_index(w) {
                    if route.contains(&j) {
                        route.truncate(route.iter().position(|&x| x == j).unwrap() + 1);
                    }
                }
                let mut actions = vec![Action::SwapPath {
                    x: s,
                    colors: (alpha, beta),
                    first: None,
                }];
                actions.extend(shift_script(&fan.leaves, &fan.colors, &route, r, alpha));
                let mut trial = pc.clone();
                if trial.apply_script(&actions).is_ok() && trial.is_proper() {
                    *pc = trial;
                    let shifted = (actions.len() - 1) / 2;
                    return Ok(Some(InsertStep {
                        edge: (r, s1),
                        fan_size: fan.order(),
                        swaps: 1,
                        shifted,
                        actions,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Moves the uncolored edge along `route` (leaf indices from `s_1`): each
/// `r t_l` takes `φ(r t_{l+1})`, then the last edge takes `last`. Written
/// as uncolor/color pairs so that every prefix is proper.
fn shift_script(
    leaves: &[Vertex],
    colors: &[Option<Color>],
    route: &[usize],
    r: Vertex,
    last: Color,
) -> Vec<Action> {
    let mut actions = Vec::with_capacity(2 * route.len());
    for pair in route.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        actions.push(Action::Uncolor {
            edge: (r, leaves[b]),
        });
        actions.push(Action::Color {
            edge: (r, leaves[a]),
            color: colors[b].expect("only s_1 is uncolored"),
        });
    }
    actions.push(Action::Color {
        edge: (r, leaves[*route.last().unwrap()]),
        color: last,
    });
    actions
}
