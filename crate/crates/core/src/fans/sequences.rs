use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{elementary_violation, validate_multifan, FanError, Multifan};
use crate::coloring::Color;
use crate::graph::{Bits, Vertex};
use crate::kempe::{Action, PartialEdgeColoring};

/// Leaves whose edge colors descend from one color `eta ∈ \bar φ(s_1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaSequence {
    pub eta: Color,
    pub leaves: Vec<Vertex>,
}

/// The α-sequences of a multifan with an elementary vertex set, the map from
/// each color missing on `V(F) \ {r}` to the color that induces it, and the
/// data behind `≺`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaSequenceDecomposition {
    pub sequences: Vec<AlphaSequence>,
    pub inducer: BTreeMap<Color, Color>,
    /// Leaf index hosting each induced color.
    pub host: BTreeMap<Color, usize>,
    /// Per leaf index, the mask of its proper ancestors in the parent tree.
    ancestors: Vec<u64>,
}

impl AlphaSequenceDecomposition {
    /// `δ ≺ β`.
    pub fn precedes(&self, delta: Color, beta: Color) -> bool {
        let (Some(&a), Some(&b)) = (self.inducer.get(&delta), self.inducer.get(&beta)) else {
            return false;
        };
        if a != b || delta == beta {
            return false;
        }
        if delta == a {
            return true;
        }
        if beta == a {
            return false;
        }
        let (hd, hb) = (self.host[&delta], self.host[&beta]);
        hd != 0 && self.ancestors[hb] >> hd & 1 == 1
    }

    /// Maximal elements of the `eta`-inducing colors under `≺`.
    pub fn last_colors(&self, eta: Color) -> Vec<Color> {
        let induced: Vec<Color> = self
            .inducer
            .iter()
            .filter(|&(_, &e)| e == eta)
            .map(|(&c, _)| c)
            .collect();
        induced
            .iter()
            .copied()
            .filter(|&c| !induced.iter().any(|&d| self.precedes(c, d)))
            .collect()
    }

    pub fn sequence(&self, eta: Color) -> Option<&AlphaSequence> {
        self.sequences.iter().find(|s| s.eta == eta)
    }
}

pub fn alpha_sequences(
    pc: &PartialEdgeColoring,
    fan: &Multifan,
) -> Result<AlphaSequenceDecomposition, FanError> {
    validate_multifan(pc, fan, false)?;
    if let Some((u, v, c)) = elementary_violation(pc, &fan.vertices()) {
        return Err(FanError::NotElementary(u, v, c));
    }
    let parents = fan.parents(pc);
    let p = fan.leaves.len();
    let mut ancestors = vec![0u64; p];
    let mut root_color: Vec<Option<Color>> = vec![None; p];
    for i in 1..p {
        let par = parents[i].expect("validated multifan");
        ancestors[i] = ancestors[par] | 1 << par;
        root_color[i] = if par == 0 {
            fan.colors[i]
        } else {
            root_color[par]
        };
    }
    let s1_missing = pc.missing(fan.leaves[0]);
    let mut sequences = Vec::new();
    let mut inducer = BTreeMap::new();
    let mut host = BTreeMap::new();
    for eta in Bits(s1_missing).map(|c| c as Color) {
        inducer.insert(eta, eta);
        host.insert(eta, 0);
        let leaves: Vec<usize> = (1..p).filter(|&i| root_color[i] == Some(eta)).collect();
        for &i in &leaves {
            for c in Bits(pc.missing(fan.leaves[i])) {
                inducer.insert(c as Color, eta);
                host.insert(c as Color, i);
            }
        }
        sequences.push(AlphaSequence {
            eta,
            leaves: leaves.iter().map(|&i| fan.leaves[i]).collect(),
        });
    }
    Ok(AlphaSequenceDecomposition {
        sequences,
        inducer,
        host,
        ancestors,
    })
}

/// A replayable step of the normalization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormalizationStep {
    /// Rename color `c` to `perm[c]`.
    Relabel(Vec<Color>),
    /// Recoloring that turns a two-sequence fan into a one-sequence fan on
    /// the same vertices.
    Transform(Vec<Action>),
}

/// `F_φ(r, s_1:s_α:s_β)` in the normal labeling: `\bar φ(r) = {1}`,
/// `\bar φ(s_1) = {2, Δ}`, `φ(r s_i) = i` and `\bar φ(s_i) = {i+1}` except
/// `φ(r s_{α+1}) = Δ`. Indices are 1-based as in `s_1..s_β`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypicalMultifan {
    pub fan: Multifan,
    pub alpha: usize,
    pub beta: usize,
    pub steps: Vec<NormalizationStep>,
}

impl TypicalMultifan {
    pub fn one_sequence(&self) -> bool {
        self.alpha == self.beta
    }

    /// Re-applies the recorded steps to the coloring the fan came from.
    pub fn replay<'g>(
        &self,
        pc: &PartialEdgeColoring<'g>,
    ) -> Result<PartialEdgeColoring<'g>, FanError> {
        let mut cur = pc.clone();
        for step in &self.steps {
            match step {
                NormalizationStep::Relabel(perm) => cur = cur.permuted_colors(perm),
                NormalizationStep::Transform(script) => {
                    cur.apply_script(script).map_err(|e| e.source)?;
                }
            }
        }
        Ok(cur)
    }
}

/// Relabels colors (and orders leaves) so that `fan` becomes typical; a fan
/// with two sequences is first converted to a one-sequence fan on the same
/// vertex set by moving the uncolored edge to the last leaf.
pub fn normalize_typical<'g>(
    fan: &Multifan,
    pc: &PartialEdgeColoring<'g>,
) -> Result<(TypicalMultifan, PartialEdgeColoring<'g>), FanError> {
    let (t, pc1) = relabel(fan, pc)?;
    if t.one_sequence() {
        return Ok((t, pc1));
    }
    let delta = pc.k() as Color;
    let r = t.fan.center;
    let (alpha, beta) = (t.alpha, t.beta);
    let s = |i: usize| t.fan.leaves[i - 1];
    let script = vec![
        Action::Uncolor { edge: (r, s(beta)) },
        Action::Shift {
            center: r,
            leaves: (alpha + 1..beta).map(s).collect(),
        },
        Action::Color {
            edge: (r, s(1)),
            color: delta,
        },
    ];
    let mut pc2 = pc1.clone();
    pc2.apply_script(&script).map_err(|e| e.source)?;
    let order: Vec<Vertex> = (alpha + 1..=beta).rev().chain(1..=alpha).map(s).collect();
    let colors = order.iter().map(|&v| pc2.color_of(r, v)).collect();
    let transformed = Multifan {
        center: r,
        leaves: order,
        colors,
    };
    let (t2, pc3) = relabel(&transformed, &pc2)?;
    debug_assert!(t2.one_sequence());
    let mut steps = t.steps;
    steps.push(NormalizationStep::Transform(script));
    steps.extend(t2.steps);
    Ok((
        TypicalMultifan {
            fan: t2.fan,
            alpha: t2.alpha,
            beta: t2.beta,
            steps,
        },
        pc3,
    ))
}

fn relabel<'g>(
    fan: &Multifan,
    pc: &PartialEdgeColoring<'g>,
) -> Result<(TypicalMultifan, PartialEdgeColoring<'g>), FanError> {
    validate_multifan(pc, fan, true)?;
    let g = pc.graph();
    let delta = g.max_degree();
    if pc.k() != delta {
        return Err(FanError::PreconditionFailed(format!(
            "palette {} differs from the maximum degree {delta}",
            pc.k()
        )));
    }
    let r = fan.center;
    if g.degree(r) != delta {
        return Err(FanError::NotHzFan(format!(
            "center {r} has degree below the maximum"
        )));
    }
    let shape_ok = pc.missing(r).count_ones() == 1
        && pc.missing(fan.leaves[0]).count_ones() == 2
        && fan.leaves[1..]
            .iter()
            .all(|&s| pc.missing(s).count_ones() == 1);
    if !shape_ok {
        return Err(FanError::NotHzFan("unexpected missing-set sizes".into()));
    }
    let dec = alpha_sequences(pc, fan)?;
    let (mut two, mut other) = (&dec.sequences[0], &dec.sequences[1]);
    if other.leaves.len() > two.leaves.len() {
        std::mem::swap(&mut two, &mut other);
    }
    let order: Vec<Vertex> = std::iter::once(fan.leaves[0])
        .chain(two.leaves.iter().copied())
        .chain(other.leaves.iter().copied())
        .collect();
    let alpha = 1 + two.leaves.len();
    let beta = order.len();
    let alpha = if beta == 1 { 1 } else { alpha };

    let k = delta;
    let mut perm = vec![0 as Color; k + 1];
    let mut used = 0u64;
    let mut set = |old: u64, new: usize| {
        let c = old.trailing_zeros() as usize;
        perm[c] = new as Color;
        used |= 1 << new;
    };
    set(pc.missing(r), 1);
    set(1 << two.eta, 2);
    set(1 << other.eta, k);
    for (i, &v) in order.iter().enumerate().skip(1) {
        set(pc.missing(v), i + 2);
    }
    let mut free = (1..=k).filter(|&c| used >> c & 1 == 0);
    for c in perm.iter_mut().skip(1) {
        if *c == 0 {
            *c = free.next().expect("palette accounting") as Color;
        }
    }
    let pc1 = pc.permuted_colors(&perm);
    let typical = Multifan {
        center: r,
        colors: order.iter().map(|&v| pc1.color_of(r, v)).collect(),
        leaves: order,
    };
    let t = TypicalMultifan {
        fan: typical,
        alpha,
        beta,
        steps: vec![NormalizationStep::Relabel(perm)],
    };
    check_typical(&pc1, &t)?;
    Ok((t, pc1))
}

/// Verifies the defining equations of a typical multifan.
pub fn check_typical(pc: &PartialEdgeColoring, t: &TypicalMultifan) -> Result<(), FanError> {
    validate_multifan(pc, &t.fan, true)?;
    let delta = pc.k() as Color;
    let r = t.fan.center;
    let bad = |m: String| Err(FanError::NotAFan(format!("not typical: {m}")));
    if pc.missing(r) != 1 << 1 {
        return bad("center must miss exactly color 1".into());
    }
    if pc.missing(t.fan.leaves[0]) != (1 << 2 | 1 << delta) {
        return bad("s_1 must miss exactly {2, Δ}".into());
    }
    if t.beta != t.fan.leaves.len() {
        return bad("β must equal the number of leaves".into());
    }
    for i in 2..=t.beta {
        let s = t.fan.leaves[i - 1];
        let (edge, miss) = if i == t.alpha + 1 {
            (delta, t.alpha as Color + 2)
        } else {
            (i as Color, i as Color + 1)
        };
        if t.fan.colors[i - 1] != Some(edge) || pc.missing(s) != 1 << miss {
            return bad(format!("leaf s_{i} has the wrong colors"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::grow_hz_multifan;
    use super::*;
    use crate::graph::Graph;

    /// `Δ = 5`, center 0, fan leaves 1, 2, 3 with `φ(0 2) = 2`, `φ(0 3) = 5`;
    /// 4 and 5 are degree-5 neighbors and every other edge goes to a pendant.
    fn fan_instance() -> (Graph, Vec<Color>) {
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)];
        let mut colored = vec![((0, 2), 2), ((0, 3), 5), ((0, 4), 3), ((0, 5), 4)];
        let own: [(Vertex, &[Color]); 5] = [
            (1, &[1, 3, 4]),
            (2, &[1, 4, 5]),
            (3, &[1, 2, 3]),
            (4, &[1, 2, 4, 5]),
            (5, &[1, 2, 3, 5]),
        ];
        let mut next = 6;
        for (v, cols) in own {
            for &c in cols {
                edges.push((v, next));
                colored.push(((v, next), c));
                next += 1;
            }
        }
        let g = Graph::new(next, edges).unwrap();
        let mut c = vec![0; g.m()];
        for ((u, v), col) in colored {
            c[g.edge_id(u, v).unwrap()] = col;
        }
        (g, c)
    }

    #[test]
    fn two_sequence_fan_normalizes_to_one_sequence() {
        let (g, c) = fan_instance();
        let pc = PartialEdgeColoring::from_colors(&g, 5, &c).unwrap();
        assert!(pc.is_proper());
        let fan = grow_hz_multifan(&pc, 0, 1).unwrap();
        assert_eq!(fan.leaves, vec![1, 2, 3]);
        let dec = alpha_sequences(&pc, &fan).unwrap();
        assert_eq!(dec.sequences.len(), 2);
        assert_eq!(dec.sequence(2).unwrap().leaves, vec![2]);
        assert_eq!(dec.sequence(5).unwrap().leaves, vec![3]);
        assert!(dec.precedes(2, 3));
        assert!(dec.precedes(5, 4));
        assert!(!dec.precedes(3, 2));
        assert!(!dec.precedes(2, 4));
        assert_eq!(dec.last_colors(2), vec![3]);
        assert_eq!(dec.last_colors(5), vec![4]);

        let (t, pc2) = normalize_typical(&fan, &pc).unwrap();
        assert!(t.one_sequence());
        assert_eq!((t.alpha, t.beta), (3, 3));
        assert_eq!(t.fan.leaves, vec![3, 1, 2]);
        check_typical(&pc2, &t).unwrap();
        assert!(pc2.is_proper());
        assert_eq!(t.replay(&pc).unwrap(), pc2);
        assert_eq!(t.steps.len(), 3);
    }

    #[test]
    fn extra_uncolored_edge_is_rejected() {
        let (g, mut c) = fan_instance();
        c[g.edge_id(0, 2).unwrap()] = 0;
        let pc = PartialEdgeColoring::from_colors(&g, 5, &c).unwrap();
        let fan = grow_hz_multifan(&pc, 0, 1).unwrap();
        assert_eq!(fan.leaves, vec![1, 3]);
        assert!(matches!(
            normalize_typical(&fan, &pc),
            Err(FanError::NotHzFan(_))
        ));
    }
}
