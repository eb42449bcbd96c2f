//! `hzcolor`: classify, color, generate and verify from the command line.
//!
//! Exit codes: `0` success (Class 1 for `classify`), `2` Class 2 from
//! `classify`, `1` any error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hzcolor::classify::{is_petersen_minus, petersen_minus, ClassificationReport, ColoringSource};
use hzcolor::descent::DescentConfig;
use hzcolor::enumerate::connected_graphs;
use hzcolor::verify::{run_suite, to_jsonl, SuiteSummary};
use hzcolor::*;

/// Stdout writes that ignore a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

#[derive(Parser, Debug)]
#[command(
    name = "hzcolor",
    version,
    about = "Edge coloring for graphs whose Δ-vertices induce paths and cycles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Input format; by default taken from the extension (.g6 / .el).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for the exact search.
    #[arg(long, global = true, default_value_t = OracleConfig::default().node_budget)]
    oracle_nodes: u64,
    #[arg(long, global = true, default_value_t = DescentConfig::default().restarts)]
    descent_restarts: usize,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Worker threads for internal parallelism.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    G6,
    El,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide Class 1 / Class 2.
    Classify { input: PathBuf },
    /// Print a proper edge coloring.
    Color {
        input: PathBuf,
        /// Exactly χ' colors (candidates only).
        #[arg(long, conflicts_with = "vizing")]
        optimal: bool,
        /// At most Δ+1 colors (any graph).
        #[arg(long)]
        vizing: bool,
    },
    /// Generate a graph.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
        /// Output format of the generated graph.
        #[arg(long = "to", global = true, value_enum, default_value_t = Format::G6)]
        to: Format,
    },
    /// Exact chromatic index.
    Oracle { input: PathBuf },
    /// Run the property suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Sweep every connected graph with at most this many vertices.
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Also check the O_Δ family up to this maximum degree.
        #[arg(long)]
        family_delta: Option<usize>,
        /// Extra graph files to check.
        #[arg(long = "input")]
        inputs: Vec<PathBuf>,
        /// Write one JSON report per line here.
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
    /// Classification with the reasoning spelled out.
    Explain { input: PathBuf },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// A member of the overfull family O_Δ.
    Odelta {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        n1: usize,
    },
    /// The Petersen graph with one vertex deleted.
    Pstar,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Val,
    Multifan,
    Kierstead,
    Pseudo,
    Adjacency,
    All,
}

impl Suite {
    fn checks(self) -> Vec<CheckId> {
        match self {
            Suite::Val => vec![CheckId::Val],
            Suite::Multifan => vec![CheckId::Multifan],
            Suite::Kierstead => vec![CheckId::Kierstead],
            Suite::Pseudo => vec![CheckId::Pseudo],
            Suite::Adjacency => vec![CheckId::Adjacency],
            Suite::All => CheckId::ALL.to_vec(),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // usage errors exit 1; clap's own code 2 would read as Class 2
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs.max(1))
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let gl = &cli.global;
    match &cli.command {
        Command::Classify { input } => {
            let g = read_graph(input, gl.format)?;
            let report = classify_with(&g, &options(gl))?;
            emit_report(&report, gl.output);
            Ok(class_code(&report))
        }
        Command::Color {
            input,
            optimal,
            vizing,
        } => {
            let g = read_graph(input, gl.format)?;
            if !optimal && !vizing {
                bail!("choose --optimal or --vizing");
            }
            let (coloring, source) = if *optimal {
                let report = color_optimal(&g, &options(gl))?;
                let rec = report.coloring.expect("color_optimal attaches a coloring");
                (EdgeColoring::from_record(&g, &rec)?, report.coloring_source)
            } else {
                // seed 0 inserts edges in id order
                let out = match gl.seed {
                    0 => color_delta_plus_one(&g),
                    seed => hzcolor::vizing::color_delta_plus_one_seeded(&g, seed),
                };
                (out.coloring.compacted(), None)
            };
            verify_proper(&g, coloring.k(), coloring.colors())
                .context("refusing to print an improper coloring")?;
            emit_coloring(&g, &coloring, source, gl.output);
            Ok(0)
        }
        Command::Gen { what, to } => {
            let g = match what {
                GenCommand::Odelta { delta, n1 } => gen_odelta(&OdeltaParams {
                    delta: *delta,
                    n1: *n1,
                })?,
                GenCommand::Pstar => petersen_minus(),
            };
            match to {
                Format::G6 => outln!("{}", to_graph6(&g)),
                Format::El => out!("{}", to_edge_list(&g)),
            }
            Ok(0)
        }
        Command::Oracle { input } => {
            let g = read_graph(input, gl.format)?;
            let cfg = OracleConfig {
                node_budget: gl.oracle_nodes,
                ..Default::default()
            };
            let r = chromatic_index_exact(&g, &cfg)?;
            verify_proper(&g, r.chromatic_index, r.witness.colors())?;
            match gl.output {
                Output::Json => outln!(
                    "{}",
                    json!({
                        "chromatic_index": r.chromatic_index,
                        "lower_bound": r.lower_bound,
                        "nodes_explored": r.nodes_explored,
                        "decided_by_density": r.decided_by_density,
                        "witness": r.witness.to_record(&g),
                    })
                ),
                Output::Table => {
                    outln!("chromatic index  {}", r.chromatic_index);
                    outln!("lower bound      {}", r.lower_bound);
                    outln!("nodes explored   {}", r.nodes_explored);
                    outln!("by density       {}", r.decided_by_density);
                }
            }
            Ok(0)
        }
        Command::Verify {
            suite,
            n_max,
            family_delta,
            inputs,
            jsonl,
        } => {
            if *n_max > hzcolor::enumerate::EXHAUSTIVE_LIMIT {
                bail!(
                    "--n-max is limited to {}",
                    hzcolor::enumerate::EXHAUSTIVE_LIMIT
                );
            }
            let mut graphs: Vec<Graph> = (1..=*n_max)
                .flat_map(connected_graphs)
                .filter(|g| g.m() > 0)
                .collect();
            if let Some(d) = family_delta {
                for p in OdeltaParams::all_up_to(*d) {
                    graphs.push(gen_odelta(&p)?);
                }
            }
            for path in inputs {
                graphs.push(read_graph(path, gl.format)?);
            }
            let cfg = CheckConfig {
                seed: gl.seed,
                oracle: OracleConfig {
                    node_budget: gl.oracle_nodes,
                    ..Default::default()
                },
                descent: DescentConfig {
                    restarts: gl.descent_restarts,
                    seed: gl.seed,
                    ..Default::default()
                },
                ..Default::default()
            };
            let reports = run_suite(&graphs, &suite.checks(), &cfg)?;
            if let Some(path) = jsonl {
                fs::write(path, to_jsonl(&reports))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let summary = SuiteSummary::of(&reports);
            match gl.output {
                Output::Table => out!("{}", summary.table()),
                Output::Json => outln!(
                    "{}",
                    json!({
                        "graphs": graphs.len(),
                        "claims": summary.claims,
                        "failures": summary.failures,
                        "checks": summary.rows.iter().map(|(c, [p, f, na])| {
                            (c.name().to_string(), json!({"pass": p, "fail": f, "not_applicable": na}))
                        }).collect::<serde_json::Map<String, Value>>(),
                    })
                ),
            }
            Ok(if summary.failures > 0 { 1 } else { 0 })
        }
        Command::Explain { input } => {
            let g = read_graph(input, gl.format)?;
            out!("{}", explain(&g, &options(gl))?);
            Ok(0)
        }
    }
}

fn options(gl: &Global) -> ClassifyOptions {
    ClassifyOptions {
        descent: DescentConfig {
            restarts: gl.descent_restarts,
            seed: gl.seed,
            ..Default::default()
        },
        oracle: OracleConfig {
            node_budget: gl.oracle_nodes,
            ..Default::default()
        },
        ..Default::default()
    }
}

fn class_code(r: &ClassificationReport) -> u8 {
    match r.class {
        GraphClass::One => 0,
        GraphClass::Two => 2,
    }
}

fn read_graph(path: &Path, format: Option<Format>) -> Result<Graph> {
    let format = match format {
        Some(f) => f,
        None => match path.extension().and_then(|e| e.to_str()) {
            Some("g6") => Format::G6,
            Some("el") => Format::El,
            _ => bail!(
                "cannot tell the format of {}; pass --format",
                path.display()
            ),
        },
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g = match format {
        Format::G6 => {
            let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
            let first = lines
                .next()
                .ok_or_else(|| anyhow!("{}: empty graph6 file", path.display()))?;
            if lines.next().is_some() {
                bail!("{}: expected exactly one graph", path.display());
            }
            from_graph6(first)?
        }
        Format::El => from_edge_list(&text)?,
    };
    Ok(g)
}

fn emit_report(r: &ClassificationReport, output: Output) {
    match output {
        Output::Json => outln!(
            "{}",
            serde_json::to_string_pretty(r).expect("report serializes")
        ),
        Output::Table => {
            outln!("class            {}", class_name(r.class));
            outln!("chromatic index  {}", r.chromatic_index);
            outln!("max degree       {}", r.delta);
            outln!("core max degree  {}", r.core_max_degree);
            outln!("witness          {:?}", r.witness);
        }
    }
}

fn class_name(c: GraphClass) -> &'static str {
    match c {
        GraphClass::One => "1",
        GraphClass::Two => "2",
    }
}

fn emit_coloring(g: &Graph, c: &EdgeColoring, source: Option<ColoringSource>, output: Output) {
    match output {
        Output::Json => outln!(
            "{}",
            json!({
                "colors_used": c.colors_used(),
                "source": source,
                "coloring": c.to_record(g),
            })
        ),
        Output::Table => {
            outln!("colors used {}", c.colors_used());
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                outln!("{u} {v} {}", c.color(e));
            }
        }
    }
}

fn explain(g: &Graph, opts: &ClassifyOptions) -> Result<String> {
    use std::fmt::Write as _;
    let mut out = String::new();
    let cand = is_hz_candidate(g);
    let delta = g.max_degree();
    writeln!(out, "vertices {}, edges {}, Δ = {delta}", g.n(), g.m())?;
    writeln!(
        out,
        "Δ-vertices: {}; their induced subgraph has maximum degree {}",
        g.degree_class(delta).count_ones(),
        cand.core_max_degree
    )?;
    if let Some(reason) = &cand.reason {
        writeln!(out, "not in scope: {reason}")?;
        return Ok(out);
    }
    let bound = delta * (g.n() / 2);
    writeln!(out, "overfull test: |E| = {} vs Δ·⌊n/2⌋ = {bound}", g.m())?;
    let report = classify_with(g, opts)?;
    let why = match &report.witness {
        Witness::Overfull { .. } => {
            "the graph is overfull, so Δ colors cannot cover its edges".to_string()
        }
        Witness::OddCycle => "an odd cycle needs three colors".to_string(),
        Witness::PetersenMinusVertex => {
            "Δ = 3 and the graph is the Petersen graph minus a vertex".to_string()
        }
        Witness::Class1Coloring if delta <= 1 => "a matching is colored with Δ colors".to_string(),
        Witness::Class1Coloring if delta == 3 && !is_petersen_minus(g) => {
            "Δ = 3, not overfull and not the Petersen graph minus a vertex".to_string()
        }
        Witness::Class1Coloring => "not overfull, so a Δ-coloring exists".to_string(),
    };
    writeln!(
        out,
        "Class {} (χ' = {}): {why}",
        class_name(report.class),
        report.chromatic_index
    )?;
    Ok(out)
}
