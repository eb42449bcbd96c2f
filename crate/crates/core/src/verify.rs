//! Executable checks for the structural statements about critical graphs:
//! each statement becomes a [`Claim`] evaluated on concrete colorings, and
//! every failed claim is stored with enough data to replay it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{classify, is_hz_candidate, GraphClass};
use crate::coloring::{Color, ColoringRecord};
use crate::descent::{kempe_descent, DescentConfig, DescentError};
use crate::fans::{
    alpha_sequences, build_pseudo_multifan, enumerate_kierstead, grow_multifan, host_of,
    is_elementary, rotations_of, SampleConfig,
};
use crate::graph::{Bits, EdgeId, Graph, Vertex};
use crate::io::{from_graph6, to_graph6, ParseError};
use crate::kempe::{chain_through, linked, path_from, ChainKind, KempeError, PartialEdgeColoring};
use crate::oracle::{chromatic_index_exact, extend_coloring, OracleConfig, OracleError};
use crate::vizing::color_delta_plus_one;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Kempe(#[from] KempeError),
    #[error("claim needs a coloring but the counterexample has none")]
    MissingColoring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    Val,
    Multifan,
    Kierstead,
    Pseudo,
    Adjacency,
}

impl CheckId {
    pub const ALL: [CheckId; 5] = [
        CheckId::Val,
        CheckId::Multifan,
        CheckId::Kierstead,
        CheckId::Pseudo,
        CheckId::Adjacency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Val => "val",
            CheckId::Multifan => "multifan",
            CheckId::Kierstead => "kierstead",
            CheckId::Pseudo => "pseudo",
            CheckId::Adjacency => "adjacency",
        }
    }

    pub fn parse(s: &str) -> Option<CheckId> {
        CheckId::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Which statement a claim instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statement {
    CriticalNeighbors,
    FanElementary,
    FanLinked,
    InducedLinked,
    PrecedenceContainsCenter,
    KiersteadElementary,
    KiersteadLinked,
    RotationPartition,
    PseudoLinkedCenter,
    PseudoSharedPath,
    PseudoContainsCenter,
    PseudoMeetsBefore,
    PseudoPathOrCycle,
    DeltaNeighborhoods,
    SmallNeighborhoods,
    SharedNeighborhoodSize,
}

impl Statement {
    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default()
    }
}

/// One concrete, checkable assertion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// No two of the vertices miss a common color.
    Elementary { vertices: Vec<Vertex> },
    /// `x` and `y` are on one `(a, b)`-chain.
    Linked {
        x: Vertex,
        y: Vertex,
        colors: (Color, Color),
    },
    /// `target ∈ P_from(a, b)`.
    PathContains {
        from: Vertex,
        colors: (Color, Color),
        target: Vertex,
    },
    /// Walking `P_from(a, b)` reaches `first` before `second`.
    MeetsBefore {
        from: Vertex,
        colors: (Color, Color),
        first: Vertex,
        second: Vertex,
    },
    /// `x, y` linked, or `target ∈ P_y(b, a)`.
    LinkedOrContains {
        x: Vertex,
        y: Vertex,
        colors: (Color, Color),
        target: Vertex,
    },
    /// `center ∈ P_x(a, b)` or the chain through `center` is an even cycle.
    ContainsOrCycle {
        x: Vertex,
        center: Vertex,
        colors: (Color, Color),
    },
    /// The extra leaves split into rotations around `center`.
    RotationPartition { center: Vertex, extra: Vec<Vertex> },
    /// `|N_Δ(x) \ {y}| ≥ at_least`.
    NeighborCount {
        x: Vertex,
        y: Vertex,
        at_least: usize,
    },
    /// `N_d(u) = N_d(v)`.
    SameNeighborhood { u: Vertex, v: Vertex, degree: usize },
    /// `|N_d(u) ∩ N_d(v)| = size`.
    IntersectionSize {
        u: Vertex,
        v: Vertex,
        degree: usize,
        size: usize,
    },
}

impl Claim {
    pub fn needs_coloring(&self) -> bool {
        !matches!(
            self,
            Claim::NeighborCount { .. }
                | Claim::SameNeighborhood { .. }
                | Claim::IntersectionSize { .. }
        )
    }

    pub fn holds(&self, g: &Graph, pc: Option<&PartialEdgeColoring>) -> Result<bool, VerifyError> {
        let delta = g.max_degree();
        if !self.needs_coloring() {
            return Ok(match *self {
                Claim::NeighborCount { x, y, at_least } => {
                    (g.neighbors_of_degree(x, delta) & !(1 << y)).count_ones() as usize >= at_least
                }
                Claim::SameNeighborhood { u, v, degree } => {
                    g.neighbors_of_degree(u, degree) == g.neighbors_of_degree(v, degree)
                }
                Claim::IntersectionSize { u, v, degree, size } => {
                    (g.neighbors_of_degree(u, degree) & g.neighbors_of_degree(v, degree))
                        .count_ones() as usize
                        == size
                }
                _ => unreachable!(),
            });
        }
        let pc = pc.ok_or(VerifyError::MissingColoring)?;
        let segment = |from: Vertex, (a, b): (Color, Color)| path_from(pc, from, a, b, None).ok();
        Ok(match self {
            Claim::Elementary { vertices } => is_elementary(pc, vertices),
            Claim::Linked { x, y, colors } => linked(pc, *x, *y, colors.0, colors.1)?,
            Claim::PathContains {
                from,
                colors,
                target,
            } => segment(*from, *colors).is_some_and(|p| p.contains(*target)),
            Claim::MeetsBefore {
                from,
                colors,
                first,
                second,
            } => segment(*from, *colors).is_some_and(|p| {
                match (p.position(*first), p.position(*second)) {
                    (Some(i), Some(j)) => i < j,
                    _ => false,
                }
            }),
            Claim::LinkedOrContains {
                x,
                y,
                colors,
                target,
            } => {
                linked(pc, *x, *y, colors.0, colors.1)?
                    || segment(*y, (colors.1, colors.0)).is_some_and(|p| p.contains(*target))
            }
            Claim::ContainsOrCycle { x, center, colors } => {
                segment(*x, *colors).is_some_and(|p| p.contains(*center))
                    || chain_through(pc, *center, colors.0, colors.1)?.kind == ChainKind::EvenCycle
            }
            Claim::RotationPartition { center, extra } => match rotations_of(pc, *center, extra) {
                Ok(rots) => {
                    let mut seen: Vec<Vertex> =
                        rots.iter().flat_map(|r| r.leaves.clone()).collect();
                    seen.sort_unstable();
                    let mut want = extra.clone();
                    want.sort_unstable();
                    seen == want && rots.iter().all(|r| r.holds(pc, *center))
                }
                Err(_) => false,
            },
            _ => unreachable!(),
        })
    }
}

/// A failed claim with the full instance it failed on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: CheckId,
    pub statement: Statement,
    pub graph6: String,
    pub coloring: Option<ColoringRecord>,
    pub claim: Claim,
}

/// Re-evaluates a stored counterexample from its serialized instance.
pub fn replay(cx: &Counterexample) -> Result<Verdict, VerifyError> {
    let g = from_graph6(&cx.graph6)?;
    let pc = match &cx.coloring {
        Some(rec) => Some(PartialEdgeColoring::from_record(&g, rec)?),
        None => None,
    };
    Ok(if cx.claim.holds(&g, pc.as_ref())? {
        Verdict::Pass
    } else {
        Verdict::Fail
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: CheckId,
    pub graph6: String,
    pub verdict: Verdict,
    /// Why the check did not apply.
    pub reason: Option<String>,
    /// Claims checked and failed per statement, plus check-specific counters.
    pub stats: BTreeMap<String, u64>,
    pub failures: u64,
    /// The first `max_counterexamples` failures.
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub oracle: OracleConfig,
    pub descent: DescentConfig,
    /// Random Kempe changes applied to the base coloring of each `G − e`.
    pub perturbations: usize,
    pub pseudo: SampleConfig,
    pub seed: u64,
    pub max_counterexamples: usize,
    /// Skip the hypothesis gate. Claims may then fail legitimately.
    pub force: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            oracle: OracleConfig::default(),
            descent: DescentConfig::default(),
            perturbations: 4,
            pseudo: SampleConfig {
                samples: 32,
                seed: 0,
            },
            seed: 0,
            max_counterexamples: 16,
            force: false,
        }
    }
}

struct Run<'a> {
    g: &'a Graph,
    check: CheckId,
    graph6: String,
    stats: BTreeMap<String, u64>,
    failures: u64,
    counterexamples: Vec<Counterexample>,
    max_cx: usize,
}

impl<'a> Run<'a> {
    fn new(g: &'a Graph, check: CheckId, cfg: &CheckConfig) -> Self {
        Run {
            g,
            check,
            graph6: to_graph6(g),
            stats: BTreeMap::new(),
            failures: 0,
            counterexamples: Vec::new(),
            max_cx: cfg.max_counterexamples,
        }
    }

    fn count(&mut self, key: &str) {
        *self.stats.entry(key.to_string()).or_default() += 1;
    }

    fn claim(
        &mut self,
        statement: Statement,
        claim: Claim,
        pc: Option<&PartialEdgeColoring>,
    ) -> Result<bool, VerifyError> {
        let ok = claim.holds(self.g, pc)?;
        self.count(&format!("{}.checked", statement.name()));
        if !ok {
            self.failures += 1;
            self.count(&format!("{}.failed", statement.name()));
            if self.counterexamples.len() < self.max_cx {
                self.counterexamples.push(Counterexample {
                    check: self.check,
                    statement,
                    graph6: self.graph6.clone(),
                    coloring: pc.map(|p| p.to_record()),
                    claim,
                });
            }
        }
        Ok(ok)
    }

    fn finish(self) -> CheckReport {
        CheckReport {
            check: self.check,
            verdict: if self.failures > 0 {
                Verdict::Fail
            } else {
                Verdict::Pass
            },
            graph6: self.graph6,
            reason: None,
            stats: self.stats,
            failures: self.failures,
            counterexamples: self.counterexamples,
        }
    }

    fn skip(self, reason: impl Into<String>) -> CheckReport {
        CheckReport {
            verdict: Verdict::NotApplicable,
            reason: Some(reason.into()),
            ..self.finish()
        }
    }
}

fn colors_of(mask: u64) -> impl Iterator<Item = Color> {
    Bits(mask).map(|c| c as Color)
}

/// A `Δ(G)`-coloring of `G − e` on `g`'s edge ids (`0` at `e`), or `None`
/// when `G − e` needs `Δ + 1` colors.
pub fn coloring_without(
    g: &Graph,
    e: EdgeId,
    cfg: &CheckConfig,
) -> Result<Option<Vec<Color>>, VerifyError> {
    let delta = g.max_degree();
    let h = g.without_edge(e);
    let start = color_delta_plus_one(&h).coloring;
    let colors = if start.colors_used() <= delta {
        Some(start.compacted().colors().to_vec())
    } else {
        match kempe_descent(&h, &start, &cfg.descent) {
            Ok(out) => Some(out.coloring.colors().to_vec()),
            Err(DescentError::Stalled { colors, .. }) => {
                let partial = PartialEdgeColoring::from_colors(&h, delta, &colors)?;
                match extend_coloring(&partial, cfg.oracle.node_budget)? {
                    Some(c) => Some(c.colors().to_vec()),
                    None => {
                        let r = chromatic_index_exact(&h, &cfg.oracle)?;
                        (r.chromatic_index <= delta).then(|| r.witness.colors().to_vec())
                    }
                }
            }
            Err(DescentError::BadInput { .. }) => unreachable!("vizing output has Δ+1 colors"),
        }
    };
    Ok(colors.map(|c| {
        let mut out = c;
        out.insert(e, 0);
        out
    }))
}

/// The base coloring of `G − e` and `cfg.perturbations` random Kempe
/// changes of it, in walk order.
fn coloring_family<'g>(
    g: &'g Graph,
    e: EdgeId,
    cfg: &CheckConfig,
) -> Result<Vec<PartialEdgeColoring<'g>>, VerifyError> {
    let Some(colors) = coloring_without(g, e, cfg)? else {
        return Ok(Vec::new());
    };
    let mut cur = PartialEdgeColoring::from_colors(g, g.max_degree(), &colors)?;
    let mut rng =
        ChaCha8Rng::seed_from_u64(cfg.seed ^ (e as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut out = vec![cur.clone()];
    for _ in 0..cfg.perturbations {
        cur.random_kempe_change(&mut rng, |_, _| true);
        out.push(cur.clone());
    }
    Ok(out)
}

fn critical_gate(g: &Graph, cfg: &CheckConfig) -> Result<Option<String>, VerifyError> {
    if cfg.force {
        return Ok(None);
    }
    Ok((!crate::oracle::is_delta_critical(g, &cfg.oracle)?)
        .then(|| "graph is not Δ-critical".to_string()))
}

/// Every critical edge `xy` of a Class 2 graph: `x` has at least
/// `Δ − d(y) + 1` neighbors of degree `Δ` other than `y`.
pub fn check_val(g: &Graph, cfg: &CheckConfig) -> Result<CheckReport, VerifyError> {
    let mut run = Run::new(g, CheckId::Val, cfg);
    let delta = g.max_degree();
    let chi = chromatic_index_exact(g, &cfg.oracle)?.chromatic_index;
    if chi != delta + 1 && !cfg.force {
        return Ok(run.skip("graph is Class 1"));
    }
    for e in 0..g.m() {
        let critical =
            chromatic_index_exact(&g.without_edge(e), &cfg.oracle)?.chromatic_index < chi;
        if !critical && !cfg.force {
            run.count("edges.noncritical");
            continue;
        }
        run.count("edges.critical");
        let (u, v) = g.edge(e);
        for (x, y) in [(u, v), (v, u)] {
            let at_least = (delta + 1).saturating_sub(g.degree(y));
            run.claim(
                Statement::CriticalNeighbors,
                Claim::NeighborCount { x, y, at_least },
                None,
            )?;
        }
    }
    Ok(run.finish())
}

/// Elementarity and linkage of every grown multifan, and the linkage rules
/// between colors missing at different leaves, over the coloring family of
/// each `G − e` with either endpoint as the center.
pub fn check_multifan_lemmas(g: &Graph, cfg: &CheckConfig) -> Result<CheckReport, VerifyError> {
    let mut run = Run::new(g, CheckId::Multifan, cfg);
    if let Some(reason) = critical_gate(g, cfg)? {
        return Ok(run.skip(reason));
    }
    for e in 0..g.m() {
        let family = coloring_family(g, e, cfg)?;
        if family.is_empty() {
            run.count("edges.uncolorable");
        }
        let (u, v) = g.edge(e);
        for pc in &family {
            run.count("colorings");
            for (r, s1) in [(u, v), (v, u)] {
                let Ok(fan) = grow_multifan(pc, r, s1) else {
                    continue;
                };
                run.count("fans");
                let elementary = run.claim(
                    Statement::FanElementary,
                    Claim::Elementary {
                        vertices: fan.vertices(),
                    },
                    Some(pc),
                )?;
                for alpha in colors_of(pc.missing(r)) {
                    for &s in &fan.leaves {
                        for beta in colors_of(pc.missing(s)).filter(|&b| b != alpha) {
                            run.claim(
                                Statement::FanLinked,
                                Claim::Linked {
                                    x: r,
                                    y: s,
                                    colors: (alpha, beta),
                                },
                                Some(pc),
                            )?;
                        }
                    }
                }
                if !elementary {
                    continue;
                }
                let dec = alpha_sequences(pc, &fan).expect("elementary multifan");
                for &si in &fan.leaves {
                    for &sj in fan.leaves.iter().filter(|&&x| x != si) {
                        for delta in colors_of(pc.missing(si)) {
                            for lambda in colors_of(pc.missing(sj)) {
                                if dec.inducer[&delta] != dec.inducer[&lambda] {
                                    run.claim(
                                        Statement::InducedLinked,
                                        Claim::Linked {
                                            x: si,
                                            y: sj,
                                            colors: (delta, lambda),
                                        },
                                        Some(pc),
                                    )?;
                                } else if dec.precedes(delta, lambda) {
                                    run.claim(
                                        Statement::PrecedenceContainsCenter,
                                        Claim::LinkedOrContains {
                                            x: si,
                                            y: sj,
                                            colors: (delta, lambda),
                                            target: r,
                                        },
                                        Some(pc),
                                    )?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(run.finish())
}

/// Four-vertex Kierstead paths whose last two vertices have degree below
/// `Δ`: elementary, and `v_3, v_0` linked in the allowed color pairs.
pub fn check_kierstead(g: &Graph, cfg: &CheckConfig) -> Result<CheckReport, VerifyError> {
    let mut run = Run::new(g, CheckId::Kierstead, cfg);
    if let Some(reason) = critical_gate(g, cfg)? {
        return Ok(run.skip(reason));
    }
    let delta = g.max_degree();
    for e in 0..g.m() {
        let family = coloring_family(g, e, cfg)?;
        let (u, v) = g.edge(e);
        for pc in &family {
            run.count("colorings");
            for (v0, v1) in [(u, v), (v, u)] {
                let Ok(paths) = enumerate_kierstead(pc, v0, v1, 4) else {
                    continue;
                };
                for k in paths {
                    let (v2, v3) = (k.vertices[2], k.vertices[3]);
                    if g.degree(v2).max(g.degree(v3)) >= delta {
                        run.count("paths.degree_gate");
                        continue;
                    }
                    run.count("paths");
                    run.claim(
                        Statement::KiersteadElementary,
                        Claim::Elementary {
                            vertices: k.vertices.clone(),
                        },
                        Some(pc),
                    )?;
                    let used = [k.colors[1], k.colors[2]];
                    for alpha in colors_of(pc.missing(v0)).filter(|a| !used.contains(&Some(*a))) {
                        for d in colors_of(pc.missing(v3)).filter(|&d| d != alpha) {
                            run.claim(
                                Statement::KiersteadLinked,
                                Claim::Linked {
                                    x: v3,
                                    y: v0,
                                    colors: (d, alpha),
                                },
                                Some(pc),
                            )?;
                        }
                    }
                }
            }
        }
    }
    Ok(run.finish())
}

/// Pseudo-multifans at every `r ∈ V_Δ` with `|N_{Δ−1}(r)| = Δ − 2`: the
/// rotation partition and the path statements for each pseudo-missing
/// color. The maximum fan comes from a sampled certificate.
pub fn check_pseudo_rotations(g: &Graph, cfg: &CheckConfig) -> Result<CheckReport, VerifyError> {
    let mut run = Run::new(g, CheckId::Pseudo, cfg);
    let delta = g.max_degree();
    if !cfg.force {
        if !is_hz_candidate(g).candidate || delta < 3 {
            return Ok(run.skip("graph is not a candidate with Δ ≥ 3"));
        }
        match classify(g) {
            Ok(rep) if rep.class == GraphClass::Two => {}
            _ => return Ok(run.skip("graph is Class 1")),
        }
    }
    for r in Bits(g.degree_class(delta)) {
        let small = g.neighbors_of_degree(r, delta - 1);
        if small.count_ones() as usize != delta.saturating_sub(2) || small == 0 {
            run.count("centers.gated");
            continue;
        }
        let s0 = small.trailing_zeros() as Vertex;
        let e = g.edge_id(r, s0).expect("neighbor");
        let Some(colors) = coloring_without(g, e, cfg)? else {
            run.count("centers.uncolorable");
            continue;
        };
        let base = PartialEdgeColoring::from_colors(g, delta, &colors)?;
        let (pm, pc) = match build_pseudo_multifan(&base, r, &cfg.pseudo) {
            Ok(x) => x,
            Err(_) => {
                run.count("centers.no_certificate");
                continue;
            }
        };
        run.count("centers");
        if pm.extra.is_empty() {
            run.count("centers.vacuous");
            continue;
        }
        let pc = &pc;
        let Some(one) = colors_of(pc.missing(r)).next() else {
            continue;
        };
        run.claim(
            Statement::RotationPartition,
            Claim::RotationPartition {
                center: r,
                extra: pm.extra.clone(),
            },
            Some(pc),
        )?;
        let fan_vertices = pm.fan.vertices();
        let all = pm.vertices();
        let fan_missing = pc.missing_union(pm.fan.vertex_mask() & !(1 << r));
        for &sj in &pm.extra {
            for d in colors_of(pc.missing(sj)) {
                run.claim(
                    Statement::PseudoLinkedCenter,
                    Claim::Linked {
                        x: sj,
                        y: r,
                        colors: (d, one),
                    },
                    Some(pc),
                )?;
                for gamma in colors_of(fan_missing) {
                    let y = host_of(pc, &fan_vertices, gamma).expect("missing on the fan");
                    let z = pc.neighbor_at(r, gamma).expect("r misses only one color");
                    run.claim(
                        Statement::PseudoSharedPath,
                        Claim::Linked {
                            x: y,
                            y: sj,
                            colors: (d, gamma),
                        },
                        Some(pc),
                    )?;
                    run.claim(
                        Statement::PseudoContainsCenter,
                        Claim::PathContains {
                            from: y,
                            colors: (d, gamma),
                            target: r,
                        },
                        Some(pc),
                    )?;
                    run.claim(
                        Statement::PseudoMeetsBefore,
                        Claim::MeetsBefore {
                            from: y,
                            colors: (d, gamma),
                            first: z,
                            second: r,
                        },
                        Some(pc),
                    )?;
                }
                for other in pm.pseudo_missing.iter().copied().filter(|&c| c != d) {
                    let y = host_of(pc, &all, other).expect("missing on an extra leaf");
                    run.claim(
                        Statement::PseudoSharedPath,
                        Claim::Linked {
                            x: y,
                            y: sj,
                            colors: (d, other),
                        },
                        Some(pc),
                    )?;
                    run.claim(
                        Statement::PseudoPathOrCycle,
                        Claim::ContainsOrCycle {
                            x: sj,
                            center: r,
                            colors: (d, other),
                        },
                        Some(pc),
                    )?;
                }
            }
        }
    }
    Ok(run.finish())
}

/// Neighborhood identities of Class 2 graphs whose core has maximum degree
/// at most two: adjacent `Δ`-vertices share `(Δ−1)`-neighbors, adjacent
/// `(Δ−1)`-vertices share `Δ`-neighbors, and from `Δ ≥ 7` on two
/// non-adjacent `Δ`-vertices with different but overlapping
/// `(Δ−1)`-neighborhoods share exactly `Δ − 3`.
pub fn check_adjacency_theorems(g: &Graph, cfg: &CheckConfig) -> Result<CheckReport, VerifyError> {
    let mut run = Run::new(g, CheckId::Adjacency, cfg);
    let delta = g.max_degree();
    if !cfg.force {
        if !is_hz_candidate(g).candidate || delta < 4 {
            return Ok(run.skip("graph is not a candidate with Δ ≥ 4"));
        }
        match classify(g) {
            Ok(rep) if rep.class == GraphClass::Two => {}
            _ => return Ok(run.skip("graph is Class 1")),
        }
    }
    let big = g.degree_class(delta);
    let small = g.degree_class(delta - 1);
    for &(u, v) in g.edges() {
        if big >> u & 1 == 1 && big >> v & 1 == 1 {
            run.claim(
                Statement::DeltaNeighborhoods,
                Claim::SameNeighborhood {
                    u,
                    v,
                    degree: delta - 1,
                },
                None,
            )?;
        }
        if small >> u & 1 == 1 && small >> v & 1 == 1 {
            run.claim(
                Statement::SmallNeighborhoods,
                Claim::SameNeighborhood {
                    u,
                    v,
                    degree: delta,
                },
                None,
            )?;
        }
    }
    if delta >= 7 {
        for u in Bits(big) {
            for v in Bits(big).filter(|&v| v > u && !g.adjacent(u, v)) {
                let (a, b) = (
                    g.neighbors_of_degree(u, delta - 1),
                    g.neighbors_of_degree(v, delta - 1),
                );
                if a == b || a & b == 0 {
                    run.count("pairs.outside_hypothesis");
                    continue;
                }
                run.claim(
                    Statement::SharedNeighborhoodSize,
                    Claim::IntersectionSize {
                        u,
                        v,
                        degree: delta - 1,
                        size: delta - 3,
                    },
                    None,
                )?;
            }
        }
    } else {
        run.count("intersection.below_degree_gate");
    }
    Ok(run.finish())
}

pub fn run_check(check: CheckId, g: &Graph, cfg: &CheckConfig) -> Result<CheckReport, VerifyError> {
    match check {
        CheckId::Val => check_val(g, cfg),
        CheckId::Multifan => check_multifan_lemmas(g, cfg),
        CheckId::Kierstead => check_kierstead(g, cfg),
        CheckId::Pseudo => check_pseudo_rotations(g, cfg),
        CheckId::Adjacency => check_adjacency_theorems(g, cfg),
    }
}

/// Runs every check on every graph in parallel. Reports come back in input
/// order, checks in the order given.
pub fn run_suite(
    graphs: &[Graph],
    checks: &[CheckId],
    cfg: &CheckConfig,
) -> Result<Vec<CheckReport>, VerifyError> {
    let nested: Vec<Result<Vec<CheckReport>, VerifyError>> = graphs
        .par_iter()
        .map(|g| checks.iter().map(|&c| run_check(c, g, cfg)).collect())
        .collect();
    let mut out = Vec::new();
    for r in nested {
        out.extend(r?);
    }
    Ok(out)
}

/// Pass / fail / not-applicable counts per check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub rows: BTreeMap<CheckId, [u64; 3]>,
    pub claims: u64,
    pub failures: u64,
}

impl SuiteSummary {
    pub fn of(reports: &[CheckReport]) -> SuiteSummary {
        let mut s = SuiteSummary::default();
        for r in reports {
            let row = s.rows.entry(r.check).or_default();
            row[match r.verdict {
                Verdict::Pass => 0,
                Verdict::Fail => 1,
                Verdict::NotApplicable => 2,
            }] += 1;
            s.claims += r
                .stats
                .iter()
                .filter(|(k, _)| k.ends_with(".checked"))
                .map(|(_, v)| v)
                .sum::<u64>();
            s.failures += r.failures;
        }
        s
    }

    pub fn table(&self) -> String {
        let mut out = format!("{:<10} {:>6} {:>6} {:>6}\n", "check", "pass", "fail", "n/a");
        for (c, [p, f, na]) in &self.rows {
            let _ = writeln!(out, "{:<10} {p:>6} {f:>6} {na:>6}", c.name());
        }
        let _ = writeln!(
            out,
            "claims checked: {}, failed: {}",
            self.claims, self.failures
        );
        out
    }
}

/// One JSON object per line.
pub fn to_jsonl(reports: &[CheckReport]) -> String {
    reports
        .iter()
        .map(|r| serde_json::to_string(r).expect("reports serialize") + "\n")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{gen_odelta, OdeltaParams};
    use crate::graph::named::*;

    fn quick() -> CheckConfig {
        CheckConfig {
            perturbations: 2,
            ..Default::default()
        }
    }

    fn passes(r: &CheckReport) {
        assert_eq!(r.verdict, Verdict::Pass, "{r:#?}");
        assert_eq!(r.failures, 0);
    }

    #[test]
    fn val_on_fixtures() {
        for g in [k5_minus(), petersen_minus_vertex(), cycle(5)] {
            passes(&check_val(&g, &quick()).unwrap());
        }
        assert_eq!(
            check_val(&cycle(6), &quick()).unwrap().verdict,
            Verdict::NotApplicable
        );
    }

    #[test]
    fn multifan_lemmas_on_fixtures() {
        let r = check_multifan_lemmas(&k5_minus(), &quick()).unwrap();
        passes(&r);
        assert_eq!(r.stats["colorings"], 9 * 3);
        passes(&check_multifan_lemmas(&petersen_minus_vertex(), &quick()).unwrap());
        let na = check_multifan_lemmas(&petersen(), &quick()).unwrap();
        assert_eq!(na.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn kierstead_on_fixtures() {
        let r = check_kierstead(&petersen_minus_vertex(), &quick()).unwrap();
        passes(&r);
        // the three degree-2 vertices are pairwise non-adjacent
        assert_eq!(r.stats.get("paths"), None);
        assert!(r.stats["paths.degree_gate"] > 0);
        let k = check_kierstead(&k5_minus(), &quick()).unwrap();
        passes(&k);
        // every path in K5^- ends at degree-4 vertices somewhere
        assert!(k.stats.get("paths.degree_gate").copied().unwrap_or(0) > 0);
    }

    #[test]
    fn adjacency_on_fixtures() {
        let r = check_adjacency_theorems(&k5_minus(), &quick()).unwrap();
        passes(&r);
        assert_eq!(r.stats["intersection.below_degree_gate"], 1);
        assert_eq!(
            check_adjacency_theorems(&petersen_minus_vertex(), &quick())
                .unwrap()
                .verdict,
            Verdict::NotApplicable
        );
    }

    #[test]
    fn pseudo_on_small_family() {
        let g = gen_odelta(&OdeltaParams { delta: 4, n1: 3 }).unwrap();
        let r = check_pseudo_rotations(&g, &quick()).unwrap();
        passes(&r);
        assert!(r.stats["centers"] > 0);
    }

    #[test]
    fn forced_run_fails_and_replays() {
        // K4 minus an edge is Class 1, so the fan statements need not hold
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let cfg = CheckConfig {
            force: true,
            ..quick()
        };
        let r = check_multifan_lemmas(&g, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(!r.counterexamples.is_empty());
        for cx in &r.counterexamples {
            let json = serde_json::to_string(cx).unwrap();
            let back: Counterexample = serde_json::from_str(&json).unwrap();
            assert_eq!(&back, cx);
            assert_eq!(replay(&back).unwrap(), Verdict::Fail);
        }
        assert_eq!(
            check_multifan_lemmas(&g, &quick()).unwrap().verdict,
            Verdict::NotApplicable
        );
    }

    #[test]
    fn jsonl_and_summary() {
        let reports = run_suite(
            &[k5_minus(), cycle(5)],
            &[CheckId::Val, CheckId::Adjacency],
            &quick(),
        )
        .unwrap();
        assert_eq!(reports.len(), 4);
        assert_eq!(to_jsonl(&reports).lines().count(), 4);
        let s = SuiteSummary::of(&reports);
        assert_eq!(s.rows[&CheckId::Val], [2, 0, 0]);
        assert_eq!(s.rows[&CheckId::Adjacency], [1, 0, 1]);
        assert!(s.table().contains("adjacency"));
    }
}
