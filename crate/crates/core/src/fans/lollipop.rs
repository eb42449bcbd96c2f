use serde::{Deserialize, Serialize};

use super::{check_typical, FanError, TypicalMultifan};
use crate::coloring::Color;
use crate::graph::Vertex;
use crate::kempe::PartialEdgeColoring;

/// `L = (F, ru, u, ux, x)` for a typical multifan `F` centered at `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lollipop {
    pub fan: TypicalMultifan,
    pub u: Vertex,
    pub x: Vertex,
    pub color_ru: Color,
    pub color_ux: Color,
    pub missing_x: Vec<Color>,
    /// `φ(ru) = α + 1`, the case the structural lemmas assume.
    pub ru_is_alpha_plus_one: bool,
    /// `\bar φ(x) = α + 1`.
    pub x_misses_alpha_plus_one: bool,
}

pub fn build_lollipop(
    pc: &PartialEdgeColoring,
    fan: &TypicalMultifan,
    u: Vertex,
    x: Vertex,
) -> Result<Lollipop, FanError> {
    check_typical(pc, fan)?;
    let g = pc.graph();
    let delta = g.max_degree();
    let r = fan.fan.center;
    let fail = |m: String| Err(FanError::PreconditionFailed(m));
    if u >= g.n() || x >= g.n() {
        return fail(format!("vertex out of range: {u} or {x}"));
    }
    if !g.adjacent(r, u) || g.degree(u) != delta {
        return fail(format!("{u} is not a neighbor of {r} of maximum degree"));
    }
    if !g.adjacent(u, x) || g.degree(x) + 1 != delta {
        return fail(format!("{x} is not a neighbor of {u} of degree Δ−1"));
    }
    if x == r || fan.fan.leaves.contains(&x) {
        return fail(format!("{x} belongs to the fan"));
    }
    let (Some(color_ru), Some(color_ux)) = (pc.color_of(r, u), pc.color_of(u, x)) else {
        return fail("lollipop edges must be colored".into());
    };
    let a1 = fan.alpha as Color + 1;
    Ok(Lollipop {
        fan: fan.clone(),
        u,
        x,
        color_ru,
        color_ux,
        missing_x: super::mask_colors(pc.missing(x)),
        ru_is_alpha_plus_one: color_ru == a1,
        x_misses_alpha_plus_one: pc.misses(x, a1),
    })
}
