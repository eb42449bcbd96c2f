//! Recoloring a `Δ+1` coloring down to `Δ` colors: one color class is
//! uncolored and its edges are reinserted with the fan machinery inside the
//! smaller palette.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, EdgeColoring};
use crate::fans::grow_multifan;
use crate::graph::{Bits, EdgeId, Graph, Vertex};
use crate::kempe::{chain_through, PartialEdgeColoring};
use crate::vizing::try_insert;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentConfig {
    /// Operation budget per restart is `ops_per_edge · |E|`.
    pub ops_per_edge: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for DescentConfig {
    fn default() -> Self {
        DescentConfig {
            ops_per_edge: 200,
            restarts: 8,
            seed: 0,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DescentError {
    #[error("input must be a proper coloring with Δ+1 = {expected} colors")]
    BadInput { expected: usize },
    #[error("descent stalled with {} uncolored edges", residual.len())]
    Stalled {
        /// Edges still uncolored in the best attempt.
        residual: Vec<(Vertex, Vertex)>,
        /// That attempt's colors over `[1, Δ]`, `0` where uncolored.
        colors: Vec<Color>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentOutcome {
    pub coloring: EdgeColoring,
    pub restart: usize,
    pub ops: usize,
}

/// Turns a proper coloring with palette `Δ+1` into one with palette `Δ`.
/// Restart 0 runs first; the others then run in parallel and the lowest
/// successful restart index wins.
pub fn kempe_descent(
    g: &Graph,
    start: &EdgeColoring,
    cfg: &DescentConfig,
) -> Result<DescentOutcome, DescentError> {
    let delta = g.max_degree();
    if start.k() != delta + 1 || start.colors().len() != g.m() {
        return Err(DescentError::BadInput {
            expected: delta + 1,
        });
    }
    if start.colors_used() <= delta {
        let coloring =
            EdgeColoring::new(g, delta, start.compacted().colors().to_vec()).map_err(|_| {
                DescentError::BadInput {
                    expected: delta + 1,
                }
            })?;
        return Ok(DescentOutcome {
            coloring,
            restart: 0,
            ops: 0,
        });
    }
    // the first restart alone usually suffices
    let first = match attempt(g, start, 0, cfg) {
        Ok(out) => return Ok(out),
        Err(colors) => Err(colors),
    };
    let attempts: Vec<Result<DescentOutcome, Vec<Color>>> = std::iter::once(first)
        .chain(
            (1..cfg.restarts.max(1))
                .into_par_iter()
                .map(|i| attempt(g, start, i, cfg))
                .collect::<Vec<_>>(),
        )
        .collect();
    let mut best: Option<Vec<Color>> = None;
    for a in attempts {
        match a {
            Ok(out) => return Ok(out),
            Err(colors) => {
                let left = |c: &Vec<Color>| c.iter().filter(|&&x| x == 0).count();
                if best.as_ref().is_none_or(|b| left(&colors) < left(b)) {
                    best = Some(colors);
                }
            }
        }
    }
    let colors = best.unwrap();
    let residual = (0..g.m())
        .filter(|&e| colors[e] == 0)
        .map(|e| g.edge(e))
        .collect();
    Err(DescentError::Stalled { residual, colors })
}

fn attempt(
    g: &Graph,
    start: &EdgeColoring,
    restart: usize,
    cfg: &DescentConfig,
) -> Result<DescentOutcome, Vec<Color>> {
    let delta = g.max_degree();
    let k = delta + 1;
    let mut sizes = vec![0usize; k + 1];
    for &c in start.colors() {
        sizes[c as usize] += 1;
    }
    let mut by_size: Vec<usize> = (1..=k).collect();
    by_size.sort_by_key(|&c| (sizes[c], c));
    let target = by_size[restart % k];
    let mut perm = vec![0 as Color; k + 1];
    let mut next = 1;
    for (c, slot) in perm.iter_mut().enumerate().skip(1) {
        if c == target {
            *slot = 0;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let colors: Vec<Color> = start.colors().iter().map(|&c| perm[c as usize]).collect();
    let mut pc = PartialEdgeColoring::from_colors(g, delta, &colors).expect("relabeled coloring");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (restart as u64).wrapping_mul(0x9e37_79b9));
    let budget = cfg.ops_per_edge * g.m().max(1);
    let mut ops = 0;
    loop {
        let pending: Vec<EdgeId> = pc.uncolored_edges().collect();
        if pending.is_empty() {
            let coloring = pc.to_coloring().expect("complete and proper");
            return Ok(DescentOutcome {
                coloring,
                restart,
                ops,
            });
        }
        let mut progress = false;
        for e in pending {
            if ops >= budget {
                return Err(pc.raw_colors().to_vec());
            }
            if insert_within(&mut pc, e, &mut ops) {
                progress = true;
            }
        }
        if !progress {
            ops += 1;
            pc.random_kempe_change(&mut rng, |_, _| true);
        }
    }
}

/// Direct insertion from either end, then a one-swap lookahead.
fn insert_within(pc: &mut PartialEdgeColoring, e: EdgeId, ops: &mut usize) -> bool {
    let (u, v) = pc.graph().edge(e);
    for (r, s) in [(u, v), (v, u)] {
        *ops += 1;
        if matches!(try_insert(pc, r, s), Ok(Some(_))) {
            return true;
        }
    }
    for (r, s) in [(u, v), (v, u)] {
        if lookahead(pc, r, s, ops) {
            return true;
        }
    }
    false
}

/// Swaps one `(δ, λ)` chain at a fan leaf (`δ` missing there, chain
/// avoiding `r`) and retries the insertion; keeps the first swap that
/// makes it succeed.
fn lookahead(pc: &mut PartialEdgeColoring, r: Vertex, s1: Vertex, ops: &mut usize) -> bool {
    let Ok(fan) = grow_multifan(pc, r, s1) else {
        return false;
    };
    let palette = pc.palette();
    for &s in &fan.leaves {
        for delta in Bits(pc.missing(s)) {
            for lambda in Bits(palette & !(1 << delta)) {
                let Ok(chain) = chain_through(pc, s, delta as Color, lambda as Color) else {
                    continue;
                };
                if chain.contains(r) || chain.is_empty() {
                    continue;
                }
                *ops += 1;
                let mut trial = pc.clone();
                if trial.swap_chain(&chain).is_err() {
                    continue;
                }
                if matches!(try_insert(&mut trial, r, s1), Ok(Some(_)))
                    || matches!(try_insert(&mut trial, s1, r), Ok(Some(_)))
                {
                    *pc = trial;
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_proper;
    use crate::graph::named::*;
    use crate::vizing::color_delta_plus_one;

    #[test]
    fn already_within_delta() {
        let g = cycle(4);
        let start = EdgeColoring::new(&g, 3, vec![1, 2, 2, 1]).unwrap();
        let out = kempe_descent(&g, &start, &DescentConfig::default()).unwrap();
        assert_eq!(out.ops, 0);
        assert_eq!(out.coloring.k(), 2);
    }

    #[test]
    fn even_cycle_descends() {
        let g = cycle(6);
        // edges (0,1) (0,5) (1,2) (2,3) (3,4) (4,5)
        let start = EdgeColoring::new(&g, 3, vec![1, 3, 2, 1, 2, 1]).unwrap();
        let out = kempe_descent(&g, &start, &DescentConfig::default()).unwrap();
        verify_proper(&g, 2, out.coloring.colors()).unwrap();
    }

    #[test]
    fn class_one_graphs_descend() {
        for g in [
            complete(4),
            complete(6),
            complete_bipartite(3, 3),
            petersen_minus_vertex().without_edge(0),
            cycle(8),
        ] {
            let start = color_delta_plus_one(&g).coloring;
            let out = kempe_descent(&g, &start, &DescentConfig::default()).unwrap();
            verify_proper(&g, g.max_degree(), out.coloring.colors()).unwrap();
        }
    }

    #[test]
    fn class_two_stalls_with_residual() {
        let g = cycle(5);
        let start = color_delta_plus_one(&g).coloring;
        let cfg = DescentConfig {
            ops_per_edge: 5,
            restarts: 2,
            seed: 1,
        };
        match kempe_descent(&g, &start, &cfg) {
            Err(DescentError::Stalled { residual, colors }) => {
                assert!(!residual.is_empty());
                assert_eq!(colors.iter().filter(|&&c| c == 0).count(), residual.len());
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
