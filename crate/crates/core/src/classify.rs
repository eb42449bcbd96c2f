//! Class 1 / Class 2 decisions for connected graphs whose core has maximum
//! degree at most two, the overfull family `O_Δ`, and optimal colorings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::is_isomorphic;
use crate::coloring::{verify_proper, ColoringRecord, EdgeColoring};
use crate::density::is_overfull;
use crate::descent::{kempe_descent, DescentConfig, DescentError};
use crate::graph::{named, Graph, Vertex};
use crate::kempe::PartialEdgeColoring;
use crate::oracle::{chromatic_index_exact, extend_coloring, OracleConfig, OracleError};
use crate::vizing::color_delta_plus_one;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("not a candidate: {}", .0.reason.as_deref().unwrap_or("unknown"))]
    NotCandidate(CandidateReport),
    #[error("invalid O_Δ parameters: {0}")]
    InvalidParams(String),
    #[error("descent stalled with {residual} uncolored edges and the oracle fallback is disabled")]
    DescentBudgetExceeded { residual: usize },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphClass {
    One,
    Two,
}

/// Why the answer is what it is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    Overfull { edges: usize, bound: usize },
    PetersenMinusVertex,
    OddCycle,
    Class1Coloring,
}

/// How an attached coloring was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColoringSource {
    Vizing,
    Descent { restart: usize, ops: usize },
    OracleExtension,
    OracleSearch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub delta: usize,
    pub core_max_degree: usize,
    pub class: GraphClass,
    pub chromatic_index: usize,
    pub witness: Witness,
    pub coloring: Option<ColoringRecord>,
    pub coloring_source: Option<ColoringSource>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub candidate: bool,
    pub connected: bool,
    pub delta: usize,
    pub core_max_degree: usize,
    /// `Δ ≤ 3`, where special rules replace the overfull criterion.
    pub small_delta: bool,
    pub reason: Option<String>,
}

/// Connected and `Δ(G_Δ) ≤ 2`.
pub fn is_hz_candidate(g: &Graph) -> CandidateReport {
    let connected = g.n() > 0 && g.is_connected();
    let delta = g.max_degree();
    let core = g.core_max_degree();
    let reason = if g.n() == 0 {
        Some("graph has no vertices".to_string())
    } else if !connected {
        Some("graph is disconnected".to_string())
    } else if core > 2 {
        Some(format!("core has maximum degree {core} > 2"))
    } else {
        None
    };
    CandidateReport {
        candidate: reason.is_none(),
        connected,
        delta,
        core_max_degree: core,
        small_delta: delta <= 3,
        reason,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub attach_coloring: bool,
    pub oracle_fallback: bool,
    pub descent: DescentConfig,
    pub oracle: OracleConfig,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            attach_coloring: false,
            oracle_fallback: true,
            descent: DescentConfig::default(),
            oracle: OracleConfig::default(),
        }
    }
}

pub fn classify(g: &Graph) -> Result<ClassificationReport, ClassifyError> {
    classify_with(g, &ClassifyOptions::default())
}

pub fn classify_with(
    g: &Graph,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport, ClassifyError> {
    let cand = is_hz_candidate(g);
    if !cand.candidate {
        return Err(ClassifyError::NotCandidate(cand));
    }
    let delta = g.max_degree();
    let bound = delta * (g.n() / 2);
    let overfull = Witness::Overfull {
        edges: g.m(),
        bound,
    };
    let two = match delta {
        0 | 1 => None,
        2 => (g.m() == g.n() && g.n() % 2 == 1).then_some(Witness::OddCycle),
        3 if is_overfull(g) => Some(overfull),
        3 => is_petersen_minus(g).then_some(Witness::PetersenMinusVertex),
        _ => is_overfull(g).then_some(overfull),
    };
    let (class, chromatic_index, witness) = match two {
        Some(w) => (GraphClass::Two, delta + 1, w),
        None => (GraphClass::One, delta, Witness::Class1Coloring),
    };
    let mut report = ClassificationReport {
        delta,
        core_max_degree: cand.core_max_degree,
        class,
        chromatic_index,
        witness,
        coloring: None,
        coloring_source: None,
    };
    if opts.attach_coloring {
        let (coloring, source) = optimal_coloring(g, chromatic_index, opts)?;
        report.coloring = Some(coloring.to_record(g));
        report.coloring_source = Some(source);
    }
    Ok(report)
}

/// [`classify_with`] with a coloring that uses exactly `χ'` colors.
pub fn color_optimal(
    g: &Graph,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport, ClassifyError> {
    classify_with(
        g,
        &ClassifyOptions {
            attach_coloring: true,
            ..*opts
        },
    )
}

fn optimal_coloring(
    g: &Graph,
    chi: usize,
    opts: &ClassifyOptions,
) -> Result<(EdgeColoring, ColoringSource), ClassifyError> {
    let delta = g.max_degree();
    let viz = color_delta_plus_one(g).coloring;
    let (coloring, source) = if chi > delta || viz.colors_used() <= delta {
        (viz.compacted(), ColoringSource::Vizing)
    } else {
        match kempe_descent(g, &viz, &opts.descent) {
            Ok(out) => (
                out.coloring,
                ColoringSource::Descent {
                    restart: out.restart,
                    ops: out.ops,
                },
            ),
            Err(DescentError::Stalled { residual, colors }) => {
                if !opts.oracle_fallback {
                    return Err(ClassifyError::DescentBudgetExceeded {
                        residual: residual.len(),
                    });
                }
                log::info!(
                    "descent stalled with {} edges left; using the oracle",
                    residual.len()
                );
                fallback(g, &colors, opts)?
            }
            Err(DescentError::BadInput { .. }) => unreachable!("Vizing output has Δ+1 colors"),
        }
    };
    verify_proper(g, chi, coloring.colors()).expect("optimal coloring is proper");
    debug_assert_eq!(coloring.colors_used(), chi);
    Ok((coloring, source))
}

fn fallback(
    g: &Graph,
    partial: &[u8],
    opts: &ClassifyOptions,
) -> Result<(EdgeColoring, ColoringSource), ClassifyError> {
    let delta = g.max_degree();
    let pc = PartialEdgeColoring::from_colors(g, delta, partial)
        .expect("descent keeps colorings proper");
    if let Some(c) = extend_coloring(&pc, opts.oracle.node_budget)? {
        return Ok((c, ColoringSource::OracleExtension));
    }
    let r = chromatic_index_exact(g, &opts.oracle)?;
    Ok((r.witness, ColoringSource::OracleSearch))
}

/// `O_Δ` parameters: `n_2 = Δ − 2`, the `n_1` side carries a 2-regular
/// graph and the `n_2` side a `(Δ − 1 − n_1)`-regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OdeltaParams {
    pub delta: usize,
    pub n1: usize,
}

impl OdeltaParams {
    pub fn n2(&self) -> usize {
        self.delta.saturating_sub(2)
    }

    /// Degree of the regular graph on the `n_2` side.
    pub fn d2(&self) -> usize {
        (self.delta - 1).saturating_sub(self.n1)
    }

    pub fn validate(&self) -> Result<(), ClassifyError> {
        let bad = |m: String| Err(ClassifyError::InvalidParams(m));
        let (delta, n1) = (self.delta, self.n1);
        if delta < 4 {
            return bad(format!("Δ = {delta} < 4"));
        }
        if n1 < 3 || n1 > delta - 1 {
            return bad(format!("n1 = {n1} outside [3, {}]", delta - 1));
        }
        let n2 = self.n2();
        if (n1 + n2).is_multiple_of(2) {
            return bad(format!("n1 + n2 = {} is even", n1 + n2));
        }
        let d2 = self.d2();
        if (d2 * n2) % 2 == 1 || d2 > n2 - 1 {
            return bad(format!("no {d2}-regular graph on {n2} vertices"));
        }
        if n1 + n2 > crate::graph::MAX_VERTICES {
            return bad(format!("{} vertices exceed the supported maximum", n1 + n2));
        }
        Ok(())
    }

    /// Every valid pair with `Δ ≤ max_delta`.
    pub fn all_up_to(max_delta: usize) -> Vec<OdeltaParams> {
        (4..=max_delta)
            .flat_map(|delta| (3..delta).map(move |n1| OdeltaParams { delta, n1 }))
            .filter(|p| p.validate().is_ok())
            .collect()
    }
}

/// `K_{n1,n2}` plus the cycle `C_{n1}` on vertices `0..n1` and a circulant
/// `d2`-regular graph on `n1..n1+n2` with connection set `±1..±⌊d2/2⌋`,
/// plus the antipodal matching when `d2` is odd.
pub fn gen_odelta(p: &OdeltaParams) -> Result<Graph, ClassifyError> {
    p.validate()?;
    let (n1, n2, d2) = (p.n1, p.n2(), p.d2());
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for a in 0..n1 {
        for b in 0..n2 {
            edges.push((a, n1 + b));
        }
        edges.push((a, (a + 1) % n1));
    }
    for b in 0..n2 {
        for j in 1..=d2 / 2 {
            edges.push((n1 + b, n1 + (b + j) % n2));
        }
        if d2 % 2 == 1 && b < n2 / 2 {
            edges.push((n1 + b, n1 + b + n2 / 2));
        }
    }
    for e in edges.iter_mut() {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    edges.sort_unstable();
    edges.dedup();
    let g = Graph::new(n1 + n2, edges).map_err(|e| ClassifyError::InvalidParams(e.to_string()))?;
    let ok = g.is_connected()
        && is_overfull(&g)
        && g.min_degree() + 1 == p.delta
        && g.max_degree() == p.delta
        && g.core().0.degrees().iter().all(|&d| d == 2);
    if !ok {
        return Err(ClassifyError::InvalidParams(format!(
            "construction for {p:?} did not produce an overfull graph with a 2-regular core"
        )));
    }
    Ok(g)
}

pub fn petersen_minus() -> Graph {
    named::petersen_minus_vertex()
}

pub fn is_petersen_minus(g: &Graph) -> bool {
    g.n() == 9 && g.m() == 12 && is_isomorphic(g, &petersen_minus())
}
