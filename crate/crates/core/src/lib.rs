//! Edge coloring of graphs whose `Δ`-vertices induce a subgraph of maximum
//! degree at most two: Kempe chains, multifans, a `Δ+1` engine, an exact
//! chromatic-index oracle, Class 1 / Class 2 decisions and a property
//! harness for the structural statements behind them.

pub mod canon;
pub mod classify;
pub mod coloring;
pub mod density;
pub mod descent;
pub mod enumerate;
pub mod fans;
pub mod graph;
pub mod io;
pub mod kempe;
pub mod oracle;
pub mod verify;
pub mod vizing;

pub use classify::{
    classify, classify_with, color_optimal, gen_odelta, is_hz_candidate, ClassificationReport,
    ClassifyError, ClassifyOptions, GraphClass, OdeltaParams, Witness,
};
pub use coloring::{verify_proper, Color, ColoringError, ColoringRecord, EdgeColoring};
pub use graph::{named, EdgeId, Graph, GraphError, Vertex};
pub use io::{from_edge_list, from_graph6, to_edge_list, to_graph6, ParseError};
pub use kempe::{KempeChain, KempeError, PartialEdgeColoring};
pub use oracle::{chromatic_index, chromatic_index_exact, OracleConfig, OracleError, OracleResult};
pub use verify::{CheckConfig, CheckId, CheckReport, Verdict};
pub use vizing::{color_delta_plus_one, ColoringOutcome};
