use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{elementary_violation, grow_multifan, FanError, Multifan};
use crate::coloring::Color;
use crate::graph::{Bits, Vertex};
use crate::kempe::{path_from, ChainKind, KempeChain, PartialEdgeColoring};

/// Size of the randomized recoloring family used by the certificates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            samples: 64,
            seed: 0,
        }
    }
}

/// What [`certify_maximum`] looked at. The result is a lower bound on the
/// true maximum; it is exact only when the walk happens to reach an optimal
/// coloring.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximumCertificate {
    pub order: usize,
    pub leaf: Vertex,
    pub walk_steps: usize,
    /// Walk states visited, the starting coloring included.
    pub colorings: usize,
    pub fans_grown: usize,
    /// Best `|V(F)|` reached with each `s ∈ N_{Δ−1}(r)` as `s_1`.
    pub per_leaf: Vec<(Vertex, usize)>,
}

/// Outcome of the sampled F-stable walk.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityCertificate {
    pub samples: usize,
    pub applied: usize,
    pub rejected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoMultifan {
    pub fan: Multifan,
    /// `s_{t+1}..s_p`.
    pub extra: Vec<Vertex>,
    /// Colors missing at the extra leaves.
    pub pseudo_missing: Vec<Color>,
    pub maximum: MaximumCertificate,
    pub stability: StabilityCertificate,
}

impl PseudoMultifan {
    /// `V(S)` with the center first.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v = self.fan.vertices();
        v.extend_from_slice(&self.extra);
        v
    }
}

/// Leaves `s_{h_1}..s_{h_t}` with `φ(r s_{h_l}) = \bar φ(s_{h_{l−1}})`,
/// indices cyclic. Stored starting from the smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rotation {
    pub leaves: Vec<Vertex>,
}

impl Rotation {
    pub fn holds(&self, pc: &PartialEdgeColoring, r: Vertex) -> bool {
        let t = self.leaves.len();
        if t == 0 || elementary_violation(pc, &self.leaves).is_some() {
            return false;
        }
        (0..t).all(|l| {
            let prev = self.leaves[(l + t - 1) % t];
            match pc.color_of(r, self.leaves[l]) {
                Some(c) => pc.missing(prev) == 1 << c,
                None => false,
            }
        })
    }
}

/// Largest multifan at `r` found over every `s ∈ N_{Δ−1}(r)` as `s_1` and
/// over the colorings visited by a seeded Kempe walk from `pc`. `pc` must
/// be proper with exactly one uncolored edge `r s_0`, `s_0 ∈ N_{Δ−1}(r)`.
///
/// Moving the uncolored edge from `r s_0` to `r s` uncolors `r s` and then
/// colors `r s_0` directly or after swapping one chain `P_{s_0}(x, y)` that
/// avoids `r`; every variant is grown and the largest fan kept.
pub fn certify_maximum<'g>(
    pc: &PartialEdgeColoring<'g>,
    r: Vertex,
    cfg: &SampleConfig,
) -> Result<(Multifan, PartialEdgeColoring<'g>, MaximumCertificate), FanError> {
    let g = pc.graph();
    let s0 = single_uncolored_at(pc, r)?;
    let delta = g.max_degree();
    let leaves: Vec<Vertex> = Bits(g.neighbors_of_degree(r, delta.saturating_sub(1))).collect();
    if !leaves.contains(&s0) {
        return Err(FanError::PreconditionFailed(format!(
            "{s0} is not a neighbor of {r} of degree Δ−1"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cur = pc.clone();
    let mut best: Option<(Multifan, PartialEdgeColoring<'g>)> = None;
    let mut cert = MaximumCertificate {
        walk_steps: cfg.samples,
        per_leaf: leaves.iter().map(|&s| (s, 0)).collect(),
        ..Default::default()
    };
    for step in 0..=cfg.samples {
        cert.colorings += 1;
        for (li, &s) in leaves.iter().enumerate() {
            for variant in moved(&cur, r, s0, s) {
                let fan = grow_multifan(&variant, r, s)?;
                cert.fans_grown += 1;
                let order = fan.order();
                cert.per_leaf[li].1 = cert.per_leaf[li].1.max(order);
                if best.as_ref().is_none_or(|(b, _)| order > b.order()) {
                    best = Some((fan, variant));
                }
            }
        }
        if step < cfg.samples {
            cur.random_kempe_change(&mut rng, |_, _| true);
        }
    }
    let (fan, coloring) = best.expect("s_0 always yields a fan");
    cert.order = fan.order();
    cert.leaf = fan.leaves[0];
    Ok((fan, coloring, cert))
}

fn single_uncolored_at(pc: &PartialEdgeColoring, r: Vertex) -> Result<Vertex, FanError> {
    let g = pc.graph();
    let mut un = pc.uncolored_edges();
    let (Some(e), None) = (un.next(), un.next()) else {
        return Err(FanError::PreconditionFailed(
            "exactly one uncolored edge is required".into(),
        ));
    };
    let (u, v) = g.edge(e);
    if !pc.is_proper() || (u != r && v != r) {
        return Err(FanError::PreconditionFailed(format!(
            "the uncolored edge must be proper and incident to {r}"
        )));
    }
    Ok(if u == r { v } else { u })
}

/// Colorings of `G − r s` obtained from `pc` (a coloring of `G − r s_0`).
fn moved<'g>(
    pc: &PartialEdgeColoring<'g>,
    r: Vertex,
    s0: Vertex,
    s: Vertex,
) -> Vec<PartialEdgeColoring<'g>> {
    if s == s0 {
        return vec![pc.clone()];
    }
    let g = pc.graph();
    let e0 = g.edge_id(r, s0).unwrap();
    let e = g.edge_id(r, s).unwrap();
    let mut base = pc.clone();
    base.assign(e, None);
    let free = base.missing(r);
    let mut out = Vec::new();
    for x in Bits(free & base.missing(s0)) {
        let mut c = base.clone();
        c.assign(e0, Some(x as Color));
        out.push(c);
    }
    for x in Bits(free & !base.missing(s0)) {
        for y in Bits(base.missing(s0) & !free) {
            let Ok(path) = path_from(&base, s0, x as Color, y as Color, None) else {
                continue;
            };
            if path.contains(r) {
                continue;
            }
            let mut c = base.clone();
            if c.swap_chain(&path).is_err() {
                continue;
            }
            c.assign(e0, Some(x as Color));
            if c.is_proper() {
                out.push(c);
            }
        }
    }
    out
}

/// Builds `S = (F, s_{t+1}..s_p)` from a certified maximum fan `F` with the
/// extra leaves `N_{Δ−1}(r) \ V(F)`, then samples (P2).
pub fn build_pseudo_multifan<'g>(
    pc: &PartialEdgeColoring<'g>,
    r: Vertex,
    cfg: &SampleConfig,
) -> Result<(PseudoMultifan, PartialEdgeColoring<'g>), FanError> {
    let g = pc.graph();
    let (fan, coloring, maximum) = certify_maximum(pc, r, cfg)?;
    let inside = fan.vertex_mask();
    let extra: Vec<Vertex> = Bits(g.neighbors_of_degree(r, g.max_degree() - 1) & !inside).collect();
    let mut all = fan.vertices();
    all.extend_from_slice(&extra);
    if let Some((u, v, c)) = elementary_violation(&coloring, &all) {
        return Err(FanError::NotElementary(u, v, c));
    }
    let stability = stable_perturbations(&coloring, &fan, &extra, cfg)?;
    let pseudo_missing = extra
        .iter()
        .flat_map(|&s| Bits(coloring.missing(s)).map(|c| c as Color))
        .collect();
    Ok((
        PseudoMultifan {
            fan,
            extra,
            pseudo_missing,
            maximum,
            stability,
        },
        coloring,
    ))
}

/// Whether swapping `chain` keeps `E(F)` colors and `\bar φ(V(F))`.
pub fn is_fan_stable(fan: &Multifan, pc: &PartialEdgeColoring, chain: &KempeChain) -> bool {
    let g = pc.graph();
    let r = fan.center;
    if chain.edges.iter().any(|&e| {
        let (u, v) = g.edge(e);
        (u == r && fan.leaves.contains(&v)) || (v == r && fan.leaves.contains(&u))
    }) {
        return false;
    }
    match (chain.kind, chain.endpoints()) {
        (ChainKind::Path, Some((p, q))) => fan.vertex_mask() & (1 << p | 1 << q) == 0,
        _ => true,
    }
}

/// Applies up to `cfg.samples` random F-stable Kempe changes and checks that
/// `V(F) ∪ extra` stays elementary after each one.
pub fn stable_perturbations(
    pc: &PartialEdgeColoring,
    fan: &Multifan,
    extra: &[Vertex],
    cfg: &SampleConfig,
) -> Result<StabilityCertificate, FanError> {
    let mut all = fan.vertices();
    all.extend_from_slice(extra);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_57ab);
    let mut cur = pc.clone();
    let mut cert = StabilityCertificate {
        samples: cfg.samples,
        ..Default::default()
    };
    for i in 0..cfg.samples {
        if cur
            .random_kempe_change(&mut rng, |p, ch| is_fan_stable(fan, p, ch))
            .is_none()
        {
            cert.rejected += 1;
            continue;
        }
        cert.applied += 1;
        if elementary_violation(&cur, &all).is_some() {
            return Err(FanError::Unstable(i + 1));
        }
    }
    Ok(cert)
}

/// Splits the extra leaves into rotations by following
/// `s ↦` the extra leaf whose edge to `r` has color `\bar φ(s)`.
pub fn decompose_rotations(
    pm: &PseudoMultifan,
    pc: &PartialEdgeColoring,
) -> Result<Vec<Rotation>, FanError> {
    if let Some((u, v, c)) = elementary_violation(pc, &pm.vertices()) {
        return Err(FanError::NotElementary(u, v, c));
    }
    rotations_of(pc, pm.fan.center, &pm.extra)
}

/// The permutation-cycle decomposition behind [`decompose_rotations`],
/// without the elementarity precondition on the whole pseudo-multifan.
pub fn rotations_of(
    pc: &PartialEdgeColoring,
    r: Vertex,
    extra: &[Vertex],
) -> Result<Vec<Rotation>, FanError> {
    let mut next = Vec::with_capacity(extra.len());
    for &s in extra {
        let m = pc.missing(s);
        if m.count_ones() != 1 {
            return Err(FanError::PreconditionFailed(format!(
                "extra leaf {s} misses {} colors",
                m.count_ones()
            )));
        }
        let c = m.trailing_zeros() as Color;
        let Some(t) = extra.iter().position(|&t| pc.color_of(r, t) == Some(c)) else {
            return Err(FanError::PreconditionFailed(format!(
                "color {c} missing at {s} is not on an edge from {r} to an extra leaf"
            )));
        };
        next.push(t);
    }
    let mut order: Vec<usize> = (0..extra.len()).collect();
    order.sort_by_key(|&i| extra[i]);
    let mut seen = vec![false; extra.len()];
    let mut out = Vec::new();
    for start in order {
        if seen[start] {
            continue;
        }
        let mut leaves = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            leaves.push(extra[i]);
            i = next[i];
        }
        out.push(Rotation { leaves });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph::Graph;

    fn k5_minus_coloring(g: &Graph) -> Vec<Color> {
        // K5 minus {3,4}: 9 edges, Δ = 4; a 4-coloring of K5^- minus 0-3.
        let mut c = vec![0; g.m()];
        let mut set = |u, v, col| c[g.edge_id(u, v).unwrap()] = col;
        set(0, 1, 1);
        set(0, 2, 2);
        set(0, 4, 3);
        set(1, 2, 3);
        set(1, 3, 2);
        set(1, 4, 4);
        set(2, 3, 4);
        set(2, 4, 1);
        c
    }

    #[test]
    fn k5_minus_covers_both_small_neighbors() {
        let g = k5_minus();
        let c = k5_minus_coloring(&g);
        let pc = PartialEdgeColoring::from_colors(&g, 4, &c).unwrap();
        assert!(pc.is_proper());
        let (fan, best, cert) = certify_maximum(&pc, 0, &SampleConfig::default()).unwrap();
        assert_eq!(
            cert.per_leaf.iter().map(|p| p.0).collect::<Vec<_>>(),
            vec![3, 4]
        );
        assert!(cert.per_leaf.iter().all(|p| p.1 >= 2));
        assert_eq!(cert.order, fan.order());
        assert!(super::super::is_multifan(&best, &fan));
    }

    #[test]
    fn certified_order_ignores_color_names() {
        let g = k5_minus();
        let c = k5_minus_coloring(&g);
        let pc = PartialEdgeColoring::from_colors(&g, 4, &c).unwrap();
        let perm: Vec<Color> = vec![0, 3, 1, 4, 2];
        let cfg = SampleConfig {
            samples: 16,
            seed: 3,
        };
        let a = certify_maximum(&pc, 0, &cfg).unwrap().2;
        let b = certify_maximum(&pc.permuted_colors(&perm), 0, &cfg)
            .unwrap()
            .2;
        assert_eq!(a.order, b.order);
        assert_eq!(a.per_leaf, b.per_leaf);
    }

    #[test]
    fn single_small_neighbor() {
        // r = 0 of degree 3; only neighbor 1 has degree 2.
        let g = Graph::new(7, [(0, 1), (0, 2), (0, 3), (2, 3), (1, 4), (2, 5), (3, 6)]).unwrap();
        let mut c = vec![0; g.m()];
        for ((u, v), col) in [
            ((0, 2), 1),
            ((0, 3), 2),
            ((2, 3), 3),
            ((1, 4), 1),
            ((2, 5), 2),
            ((3, 6), 1),
        ] {
            c[g.edge_id(u, v).unwrap()] = col;
        }
        let pc = PartialEdgeColoring::from_colors(&g, 3, &c).unwrap();
        let (fan, _, cert) = certify_maximum(&pc, 0, &SampleConfig::default()).unwrap();
        assert_eq!(cert.per_leaf, vec![(1, fan.order())]);
        assert_eq!(cert.colorings, 65);
    }

    fn rotation_instance() -> (Graph, Vec<Color>) {
        // r = 0 with leaves 1, 2, 3: edge colors 1, 2, 3, each leaf misses the
        // next leaf's edge color; leaves get a pendant edge with the other
        // color so that each misses exactly one of {1, 2, 3}.
        let g = Graph::new(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap();
        let mut c = vec![0; g.m()];
        let mut set = |u, v, col| c[g.edge_id(u, v).unwrap()] = col;
        set(0, 1, 1);
        set(0, 2, 2);
        set(0, 3, 3);
        set(1, 4, 3);
        set(2, 5, 1);
        set(3, 6, 2);
        (g, c)
    }

    #[test]
    fn cyclic_shift_is_one_rotation() {
        let (g, c) = rotation_instance();
        let pc = PartialEdgeColoring::from_colors(&g, 3, &c).unwrap();
        let pm = PseudoMultifan {
            fan: Multifan {
                center: 0,
                leaves: vec![],
                colors: vec![],
            },
            extra: vec![3, 1, 2],
            pseudo_missing: vec![],
            maximum: Default::default(),
            stability: Default::default(),
        };
        let rot = decompose_rotations(&pm, &pc).unwrap();
        // missing(1) = 2 -> leaf 2; missing(2) = 3 -> leaf 3
        assert_eq!(
            rot,
            vec![Rotation {
                leaves: vec![1, 2, 3]
            }]
        );
        assert!(rot[0].holds(&pc, 0));
        let none = PseudoMultifan {
            extra: vec![],
            ..pm
        };
        assert!(decompose_rotations(&none, &pc).unwrap().is_empty());
    }
}
