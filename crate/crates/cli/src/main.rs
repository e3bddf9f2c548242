//! `pramsey`: generate planar hosts, color them, and decide or certify
//! arrow relations from the command line.
//!
//! Exit codes: 0 success (or ARROWS / valid certificate), 1 NOT_ARROWS or an
//! invalid certificate, 2 UNDECIDED, 3 inconclusive verification, 4 error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use planar_ramsey::arrows::{decide_arrows, verify_certificate, ArrowsConfig, CertificateCheck, Outcome, DEFAULT_BUDGET};
use planar_ramsey::avoid::{avoidance_coloring, classify, Scheme};
use planar_ramsey::constructions::{self as cons, Generator, PaperTree, DEFAULT_EDGE_CAP};
use planar_ramsey::detect::{
    crossing_path, find_copies, is_mono_path, uop_extract_path, verify_crossing, HostView, Pattern, UopMethod,
};
use planar_ramsey::format::{read_coloring, read_graph, ColoringFile, GraphFile};
use planar_ramsey::graph::{EdgeColoring, Graph, PlaneGraph};
use planar_ramsey::{Error, Result};

const EXIT_ERROR: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "pramsey", version, about = "Planar Ramsey constructions, colorings and arrow checks")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Work budget: solver conflicts plus search nodes.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Parallel solver workers for `arrow` (1 is deterministic).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Refuse graphs with more edges than this.
    #[arg(long, global = true, default_value_t = DEFAULT_EDGE_CAP)]
    cap_edges: usize,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Record wall-clock time in the output (breaks byte-identical reruns).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph file.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Decide whether every k-coloring of HOST has a monochromatic PATTERN.
    Arrow {
        host: PathBuf,
        /// Pattern file, or `builtin:NAME` (P4, C4, K3, K2,3, T1..T4, ...).
        pattern: String,
        #[arg(short, long, default_value_t = 2)]
        k: usize,
    },
    /// Build an avoidance coloring (or a random one) for a graph file.
    Color {
        scheme: ColorScheme,
        graph: PathBuf,
        /// Colors for `random`.
        #[arg(short, long, default_value_t = 2)]
        k: usize,
    },
    /// Check that a coloring has no monochromatic copy of the pattern.
    Verify {
        graph: PathBuf,
        pattern: String,
        #[arg(short, long, default_value_t = 2)]
        k: usize,
        coloring: PathBuf,
    },
    /// Extract a monochromatic path from a 2-colored host.
    Extract {
        mode: ExtractMode,
        graph: PathBuf,
        coloring: PathBuf,
        #[command(flatten)]
        params: ExtractParams,
    },
    /// List copies of a pattern, optionally inside one color class.
    Find {
        host: PathBuf,
        pattern: String,
        #[arg(long, requires = "color")]
        coloring: Option<PathBuf>,
        #[arg(long, requires = "coloring")]
        color: Option<usize>,
        #[arg(long, default_value_t = 1)]
        limit: usize,
    },
    /// Report structural facts and avoidability verdicts for a pattern.
    Classify { pattern: String },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Iterated triangulation Tr(n).
    Tr { n: usize },
    /// Universal outerplanar graph UOP(n).
    Uop { n: usize },
    /// Triangulated n x n grid.
    Grid { n: usize },
    /// Fish with a k-vertex spine.
    Fish { k: usize },
    /// Planar host arrowing C4.
    C4witness {
        /// Added vertices to leave out (0-based).
        #[arg(long, value_delimiter = ',')]
        omit: Vec<usize>,
        /// One added vertex per spine edge, alternating sides.
        #[arg(long, conflicts_with = "omit")]
        alternating: bool,
    },
    /// One of the trees T1..T4.
    Tree { id: String },
    /// Path on P vertices with S extra leaves on its middle vertex.
    Broom { path_vertices: usize, star_edges: usize },
    /// Perfect k-ary tree of radius r.
    Kary { k: usize, r: usize },
    /// Random stacked triangulation on n vertices (uses --seed).
    Random { n: usize },
    Complete { n: usize },
    Path { n: usize },
    Cycle { n: usize },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ColorScheme {
    #[value(name = "avoidT1", alias = "avoidt1", alias = "avoid-t1")]
    AvoidT1,
    #[value(name = "avoidT2", alias = "avoidt2", alias = "avoid-t2")]
    AvoidT2,
    C3,
    C4,
    Random,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ExtractMode {
    Crossing,
    Uop,
}

#[derive(Args, Debug)]
struct ExtractParams {
    /// Outer-cycle corners a,b,c,d; defaults to the grid corners.
    #[arg(long, value_delimiter = ',', num_args = 4)]
    corners: Option<Vec<usize>>,
    /// Target length for `uop`.
    #[arg(long, short, default_value_t = 3)]
    n: usize,
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    arguments: Vec<String>,
    seed: u64,
    budget: u64,
    inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<String>,
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<u64>,
}

struct Ctx {
    cli: Cli,
    args: Vec<String>,
    start: Instant,
}

impl Ctx {
    fn manifest(&self, command: &str, inputs: &[&Path]) -> RunManifest {
        RunManifest {
            command: command.into(),
            arguments: self.args.clone(),
            seed: self.cli.seed,
            budget: self.cli.budget,
            inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
            output: self.cli.output.as_ref().map(|p| p.display().to_string()),
            version: env!("CARGO_PKG_VERSION"),
            wall_ms: self.cli.timing.then(|| self.start.elapsed().as_millis() as u64),
        }
    }

    /// Writes `body` with the manifest attached under `"manifest"`.
    fn emit(&self, body: impl Serialize, manifest: RunManifest) -> Result<()> {
        let mut value = serde_json::to_value(body)?;
        match &mut value {
            Value::Object(map) => {
                map.insert("manifest".into(), serde_json::to_value(manifest)?);
            }
            _ => return Err(Error::Internal("output is not a JSON object".into())),
        }
        let mut text = serde_json::to_string_pretty(&value)?;
        text.push('\n');
        match &self.cli.output {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn check_cap(&self, g: &Graph) -> Result<()> {
        if g.m() > self.cli.cap_edges {
            return Err(Error::SizeLimit {
                what: "input graph".into(),
                needed: g.m() as u128,
                cap: self.cli.cap_edges,
            });
        }
        Ok(())
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<PlaneGraph> {
    read_graph(&read_text(path)?)
}

fn load_coloring(path: &Path) -> Result<EdgeColoring> {
    read_coloring(&read_text(path)?)
}

fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// `builtin:NAME` patterns: `Pn` (n vertices), `Cn`, `Kn`, `Ka,b`, `T1`..`T4`,
/// `broom:p,s`.
fn builtin_pattern(name: &str) -> Result<Graph> {
    let bad = || Error::InvalidParameter(format!("unknown builtin pattern {name:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    if let Ok(t) = name.parse::<PaperTree>() {
        return Ok(cons::paper_tree(t).graph());
    }
    if let Some(rest) = name.strip_prefix("broom:") {
        let (p, s) = rest.split_once(',').ok_or_else(bad)?;
        return Ok(cons::generalized_broom(num(p)?, num(s)?)?.graph());
    }
    let (kind, rest) = name.split_at(name.chars().next().map_or(0, char::len_utf8));
    match kind.to_ascii_uppercase().as_str() {
        "P" => cons::path_graph(num(rest)?),
        "C" => cons::cycle_graph(num(rest)?),
        "K" => match rest.split_once(',') {
            Some((a, b)) => complete_bipartite(num(a)?, num(b)?),
            None => cons::complete_graph(num(rest)?),
        },
        _ => Err(bad()),
    }
}

fn load_pattern(spec: &str) -> Result<Graph> {
    match spec.strip_prefix("builtin:") {
        Some(name) => builtin_pattern(name),
        None => Ok(load_graph(Path::new(spec))?.graph),
    }
}

fn pattern_inputs(spec: &str) -> Option<&Path> {
    (!spec.starts_with("builtin:")).then(|| Path::new(spec))
}

fn generate(family: &Family, ctx: &Ctx) -> Result<PlaneGraph> {
    let gen = Generator {
        cap_edges: ctx.cli.cap_edges,
    };
    let bare = |g: Graph| PlaneGraph::bare(g);
    let pg = match *family {
        Family::Tr { n } => gen.iterated_triangulation(n)?,
        Family::Uop { n } => gen.universal_outerplanar(n)?,
        Family::Grid { n } => gen.triangulated_grid(n)?,
        Family::Fish { k } => cons::fish(k)?,
        Family::C4witness { ref omit, alternating } => {
            if let Some(&bad) = omit.iter().find(|&&j| j >= cons::C4_WITNESS_SLOTS) {
                return Err(Error::InvalidParameter(format!(
                    "omit index {bad} out of range 0..{}",
                    cons::C4_WITNESS_SLOTS
                )));
            }
            if alternating {
                cons::c4_witness_alternating()
            } else {
                cons::c4_witness_with(omit)
            }
        }
        Family::Tree { ref id } => bare(cons::paper_tree(id.parse()?).graph()),
        Family::Broom {
            path_vertices,
            star_edges,
        } => bare(cons::generalized_broom(path_vertices, star_edges)?.graph()),
        Family::Kary { k, r } => bare(gen.perfect_kary_tree(k, r)?.graph()),
        Family::Random { n } => gen.random_stacked_triangulation(n, ctx.cli.seed)?,
        Family::Complete { n } => bare(gen.complete_graph(n)?),
        Family::Path { n } => bare(cons::path_graph(n)?),
        Family::Cycle { n } => bare(cons::cycle_graph(n)?),
    };
    ctx.check_cap(&pg.graph)?;
    Ok(pg)
}

#[derive(Serialize)]
struct EmbeddingOut {
    color: usize,
    embedding: Vec<usize>,
}

#[derive(Serialize)]
struct VerifyOut {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<EmbeddingOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inconclusive_budget: Option<u64>,
}

#[derive(Serialize)]
struct ColorOut {
    #[serde(flatten)]
    coloring: ColoringFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    provenance: Option<planar_ramsey::avoid::Provenance>,
}

#[derive(Serialize)]
struct PathOut {
    mode: &'static str,
    color: usize,
    path: Vec<usize>,
    length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
}

#[derive(Serialize)]
struct FindOut {
    copies: Vec<Vec<usize>>,
    budget_exceeded: bool,
    nodes: u64,
}

fn default_corners(pg: &PlaneGraph) -> Result<[usize; 4]> {
    use cons::GridSide::*;
    let top = cons::grid_side(pg, Top)?;
    let bottom = cons::grid_side(pg, Bottom)?;
    let (Some(&a), Some(&b), Some(&c), Some(&d)) = (top.first(), top.last(), bottom.last(), bottom.first()) else {
        return Err(Error::Metadata("grid corners not found".into()));
    };
    Ok([a, b, c, d])
}

fn run(ctx: &Ctx) -> Result<u8> {
    let cli = &ctx.cli;
    match &cli.command {
        Command::Gen { family } => {
            let pg = generate(family, ctx)?;
            ctx.emit(GraphFile::from_plane(&pg), ctx.manifest("gen", &[]))?;
            Ok(0)
        }
        Command::Arrow { host, pattern, k } => {
            let g = load_graph(host)?.graph;
            ctx.check_cap(&g)?;
            let h = load_pattern(pattern)?;
            let cfg = ArrowsConfig {
                budget: cli.budget,
                jobs: cli.jobs.max(1),
                seed: cli.seed,
            };
            let mut verdict = decide_arrows(&g, &h, *k, &cfg)?;
            if !cli.timing {
                verdict.stats.wall_ms = None;
            }
            let mut inputs = vec![host.as_path()];
            inputs.extend(pattern_inputs(pattern));
            ctx.emit(verdict.to_file(*k), ctx.manifest("arrow", &inputs))?;
            Ok(match verdict.outcome {
                Outcome::Arrows => 0,
                Outcome::NotArrows => 1,
                Outcome::Undecided => 2,
            })
        }
        Command::Color { scheme, graph, k } => {
            let pg = load_graph(graph)?;
            ctx.check_cap(&pg.graph)?;
            let out = match scheme {
                ColorScheme::Random => {
                    if !(1..=planar_ramsey::arrows::MAX_COLORS).contains(k) {
                        return Err(Error::InvalidParameter(format!("k must be in 1..=8, got {k}")));
                    }
                    ColorOut {
                        coloring: ColoringFile::from_coloring(&EdgeColoring::random(&pg.graph, *k, cli.seed)),
                        provenance: None,
                    }
                }
                s => {
                    let scheme = match s {
                        ColorScheme::AvoidT1 => Scheme::AvoidT1,
                        ColorScheme::AvoidT2 => Scheme::AvoidT2,
                        ColorScheme::C3 => Scheme::C3,
                        _ => Scheme::C4,
                    };
                    let ac = avoidance_coloring(&pg, scheme)?;
                    ColorOut {
                        coloring: ColoringFile::from_coloring(&ac.coloring),
                        provenance: Some(ac.provenance),
                    }
                }
            };
            ctx.emit(out, ctx.manifest("color", &[graph]))?;
            Ok(0)
        }
        Command::Verify {
            graph,
            pattern,
            k,
            coloring,
        } => {
            let g = load_graph(graph)?.graph;
            ctx.check_cap(&g)?;
            let h = load_pattern(pattern)?;
            let c = load_coloring(coloring)?;
            let mut inputs = vec![graph.as_path()];
            inputs.extend(pattern_inputs(pattern));
            inputs.push(coloring);
            let manifest = ctx.manifest("verify", &inputs);
            let (out, code) = match verify_certificate(&g, &h, *k, &c, cli.budget) {
                Ok(CertificateCheck::Valid) => (
                    VerifyOut {
                        valid: true,
                        counterexample: None,
                        inconclusive_budget: None,
                    },
                    0,
                ),
                Ok(CertificateCheck::Invalid { color, embedding }) => {
                    eprintln!("monochromatic copy in color {color}: {:?}", embedding.map);
                    (
                        VerifyOut {
                            valid: false,
                            counterexample: Some(EmbeddingOut {
                                color,
                                embedding: embedding.map,
                            }),
                            inconclusive_budget: None,
                        },
                        1,
                    )
                }
                Err(Error::Inconclusive(b)) => {
                    eprintln!("inconclusive: search budget {b} exhausted");
                    (
                        VerifyOut {
                            valid: false,
                            counterexample: None,
                            inconclusive_budget: Some(b),
                        },
                        3,
                    )
                }
                Err(e) => return Err(e),
            };
            ctx.emit(out, manifest)?;
            Ok(code)
        }
        Command::Extract {
            mode,
            graph,
            coloring,
            params,
        } => {
            let pg = load_graph(graph)?;
            ctx.check_cap(&pg.graph)?;
            let c = load_coloring(coloring)?;
            let out = match mode {
                ExtractMode::Crossing => {
                    let corners = match &params.corners {
                        Some(v) => [v[0], v[1], v[2], v[3]],
                        None => default_corners(&pg)?,
                    };
                    let cp = crossing_path(&pg, corners, &c)?;
                    if !verify_crossing(&pg, corners, &c, &cp)? {
                        return Err(Error::Internal("crossing path failed verification".into()));
                    }
                    PathOut {
                        mode: "crossing",
                        color: cp.color,
                        length: cp.path.len().saturating_sub(1),
                        path: cp.path,
                        method: Some(if cp.from_cut { "cut" } else { "search" }),
                        steps: None,
                    }
                }
                ExtractMode::Uop => {
                    let up = uop_extract_path(&pg, &c, params.n)?;
                    if !is_mono_path(&pg.graph, &c, up.color, &up.path) || up.len_edges() < params.n {
                        return Err(Error::Internal("extracted path failed verification".into()));
                    }
                    let (method, steps) = match &up.method {
                        UopMethod::BlueSpan => ("blue_span", None),
                        UopMethod::Sequence { states } => ("sequence", Some(states.len())),
                    };
                    PathOut {
                        mode: "uop",
                        color: up.color,
                        length: up.len_edges(),
                        path: up.path,
                        method: Some(method),
                        steps,
                    }
                }
            };
            ctx.emit(out, ctx.manifest("extract", &[graph, coloring]))?;
            Ok(0)
        }
        Command::Find {
            host,
            pattern,
            coloring,
            color,
            limit,
        } => {
            let g = load_graph(host)?.graph;
            ctx.check_cap(&g)?;
            let h = load_pattern(pattern)?;
            let mut inputs = vec![host.as_path()];
            inputs.extend(pattern_inputs(pattern));
            let view = match (coloring, color) {
                (Some(path), Some(col)) => {
                    inputs.push(path);
                    let c = load_coloring(path)?;
                    if *col >= c.k {
                        return Err(Error::InvalidParameter(format!("color {col} out of range for k={}", c.k)));
                    }
                    HostView::color_class(&g, &c, *col)
                }
                _ => HostView::whole(&g),
            };
            let r = find_copies(&Pattern::new(&h), &view, *limit, cli.budget);
            let out = FindOut {
                copies: r.copies.into_iter().map(|e| e.map).collect(),
                budget_exceeded: r.budget_exceeded,
                nodes: r.stats.nodes,
            };
            ctx.emit(out, ctx.manifest("find", &inputs))?;
            Ok(0)
        }
        Command::Classify { pattern } => {
            let h = load_pattern(pattern)?;
            let report = classify(&h)?;
            let inputs: Vec<&Path> = pattern_inputs(pattern).into_iter().collect();
            ctx.emit(report, ctx.manifest("classify", &inputs))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let ctx = Ctx {
        cli,
        args: std::env::args().skip(1).collect(),
        start,
    };
    match run(&ctx) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
