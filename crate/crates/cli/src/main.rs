use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use skeleton_lab::complexes::{
    boundary_complex, complex_checks, complex_skeleton_graph, glued_simplices, CellComplex,
};
use skeleton_lab::connectivity::{balinski_affine_check, delete_and_check, vertex_connectivity};
use skeleton_lab::constructors::{
    cyclic, prism_over_simplex, product, pyramid, segment, standard_family, CoordinatizedPolytope, Family,
};
use skeleton_lab::io::{complex_from_json, complex_to_json, polytope_from_json, polytope_to_json};
use skeleton_lab::lab::{self, corpus::dual_polytope, theorem_values, VerificationReport};
use skeleton_lab::lattice::{check_face_count_bound, face_figure, validate_polytopal};
use skeleton_lab::skeletons::{edge_adjacency_graph, incidence_graph, skeleton_graph};
use skeleton_lab::{SkeletonGraph, VertexSet};

// stdout writes that stay quiet when the reader goes away (`| head`)
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! out_raw {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

/// Face lattices, skeleton graphs and connectivity checks for polytopes and
/// polyhedral complexes.
///
/// Exit status: 0 when everything passes, 1 when a checked bound or
/// validation fails, 2 on usage or input errors.
#[derive(Parser)]
#[command(name = "skeleton-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a polytope and write it as JSON.
    Build(BuildArgs),
    /// Face lattice checks and transformations.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Skeleton, incidence and edge-adjacency graphs.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Vertex connectivity of a graph file.
    Connectivity {
        #[arg(long)]
        graph: PathBuf,
        /// Emit and re-verify the full certificate (cut, pair, disjoint paths).
        #[arg(long)]
        certify: bool,
    },
    /// Delete nodes from a graph and report the components left.
    Delete {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated node ids.
        #[arg(long, value_delimiter = ',')]
        nodes: Vec<usize>,
    },
    /// Delete vertices spanning an affine subspace of dimension at most d-2
    /// and check the vertex graph stays connected.
    Balinski {
        polytope: PathBuf,
        #[arg(long, value_delimiter = ',')]
        vertices: Vec<usize>,
    },
    /// Polyhedral complexes given as lists of maximal cells.
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Check the connectivity bounds and print a report.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Print the connectivity values for (k, d).
    Values {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildFamily {
    Simplex,
    #[value(alias = "cube")]
    Hypercube,
    #[value(alias = "cross_polytope", alias = "cross")]
    CrossPolytope,
    Cyclic,
    Prism,
    Pyramid,
    Product,
    Dual,
    Segment,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, value_enum)]
    family: BuildFamily,
    #[arg(long)]
    d: Option<usize>,
    /// Vertex count for cyclic polytopes.
    #[arg(long)]
    n: Option<usize>,
    /// Input polytope files for pyramid, product and dual.
    #[arg(long, num_args = 1..)]
    of: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Run the polytope lattice checks.
    Validate { polytope: PathBuf },
    /// Print the f-vector and its comparison with the simplex.
    Fvector { polytope: PathBuf },
    /// Write the polar dual as polytope JSON.
    Dual { polytope: PathBuf },
    /// Write the face figure of the face with the given vertices.
    Figure {
        polytope: PathBuf,
        #[arg(long, value_delimiter = ',')]
        face: Vec<usize>,
    },
    /// One line per face: rank and sorted vertex list.
    Dump { polytope: PathBuf },
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Dot,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// G_k of a polytope.
    Skeleton {
        polytope: PathBuf,
        #[arg(short, long)]
        k: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// r-faces adjacent through a common s-face.
    Incidence {
        polytope: PathBuf,
        #[arg(short, long)]
        r: usize,
        #[arg(short, long)]
        s: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Edges adjacent through a shared vertex.
    Gamma {
        polytope: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Re-emit a graph file.
    Export {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum ComplexCommand {
    /// Build and validate a complex, then write it as JSON.
    Build {
        /// Complex JSON file.
        file: Option<PathBuf>,
        /// Two d-simplices glued along a facet.
        #[arg(long, conflicts_with_all = ["file", "boundary"])]
        glued: Option<usize>,
        /// Boundary complex of a polytope file.
        #[arg(long, conflicts_with = "file")]
        boundary: Option<PathBuf>,
    },
    /// Purity and strong connectivity.
    Check { file: PathBuf },
    /// G_k of a complex.
    Skeleton {
        file: PathBuf,
        #[arg(short, long)]
        k: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum VerifyCommand {
    Polytope {
        polytope: PathBuf,
        #[command(flatten)]
        report: ReportArgs,
    },
    Complex {
        file: PathBuf,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Every polytope and complex of the default corpus.
    All {
        #[command(flatten)]
        report: ReportArgs,
        /// Add per-subject wall-clock times (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_polytope(path: &Path) -> Result<CoordinatizedPolytope> {
    polytope_from_json(&read(path)?).with_context(|| format!("loading polytope {}", path.display()))
}

fn load_complex(path: &Path) -> Result<CellComplex> {
    complex_from_json(&read(path)?).with_context(|| format!("loading complex {}", path.display()))
}

fn load_graph(path: &Path) -> Result<SkeletonGraph> {
    SkeletonGraph::from_json(&read(path)?).with_context(|| format!("loading graph {}", path.display()))
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("json value serializes")
}

fn render(graph: &SkeletonGraph, format: Format) -> String {
    match format {
        Format::Json => graph.to_json(),
        Format::Dot => graph.to_dot(),
    }
}

fn status(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn build(args: &BuildArgs) -> Result<CoordinatizedPolytope> {
    let need_d = || args.d.context("--d is required for this family");
    let inputs = |count: usize| -> Result<Vec<CoordinatizedPolytope>> {
        if args.of.len() != count {
            bail!("--of needs exactly {count} polytope file(s), got {}", args.of.len());
        }
        args.of.iter().map(|p| load_polytope(p)).collect()
    };
    let p = match args.family {
        BuildFamily::Simplex => standard_family(Family::Simplex, need_d()?)?,
        BuildFamily::Hypercube => standard_family(Family::Hypercube, need_d()?)?,
        BuildFamily::CrossPolytope => standard_family(Family::CrossPolytope, need_d()?)?,
        BuildFamily::Cyclic => cyclic(args.n.context("--n is required for cyclic")?, need_d()?)?,
        BuildFamily::Prism => prism_over_simplex(need_d()?)?,
        BuildFamily::Segment => segment(),
        BuildFamily::Pyramid => pyramid(&inputs(1)?[0])?,
        BuildFamily::Dual => dual_polytope(&inputs(1)?[0])?,
        BuildFamily::Product => {
            let ps = inputs(2)?;
            product(&ps[0], &ps[1])?
        }
    };
    Ok(p)
}

fn emit_report(report: &VerificationReport, args: &ReportArgs) -> ExitCode {
    if args.json {
        out!("{}", report.to_json());
    } else {
        out_raw!("{}", report.to_table());
    }
    status(report.passed)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build(args) => {
            let text = polytope_to_json(&build(&args)?);
            match &args.out {
                Some(path) => fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
                None => out!("{text}"),
            }
        }
        Command::Lattice(cmd) => match cmd {
            LatticeCommand::Validate { polytope } => {
                let p = load_polytope(&polytope)?;
                let report = validate_polytopal(&p.lattice);
                for c in &report.checks {
                    let verdict = if c.passed { "pass" } else { "FAIL" };
                    out!("{:<20} {verdict}  {}", c.name, c.detail);
                }
                return Ok(status(report.passed()));
            }
            LatticeCommand::Fvector { polytope } => {
                let p = load_polytope(&polytope)?;
                let bound = check_face_count_bound(&p.lattice);
                out!(
                    "{}",
                    pretty(&json!({
                        "name": p.name(),
                        "dim": p.dim(),
                        "f_vector": p.lattice.f_vector().0,
                        "rows": bound.rows,
                    }))
                );
                return Ok(status(bound.holds()));
            }
            LatticeCommand::Dual { polytope } => {
                out!("{}", polytope_to_json(&dual_polytope(&load_polytope(&polytope)?)?));
            }
            LatticeCommand::Figure { polytope, face } => {
                let p = load_polytope(&polytope)?;
                let set = VertexSet::from_indices(p.n_vertices(), face.iter().copied());
                let id = p
                    .lattice
                    .find(&set)
                    .with_context(|| format!("{set} is not a face of {}", p.name()))?;
                let (fig, _) = face_figure(&p.lattice, id)?;
                let fig = CoordinatizedPolytope::new(fig.to_incidence(), None)?
                    .renamed(format!("figure({},{set})", p.name()));
                out!("{}", polytope_to_json(&fig));
            }
            LatticeCommand::Dump { polytope } => out_raw!("{}", load_polytope(&polytope)?.lattice.dump()),
        },
        Command::Graph(cmd) => {
            let (graph, format) = match cmd {
                GraphCommand::Skeleton { polytope, k, format } => {
                    (skeleton_graph(&load_polytope(&polytope)?.lattice, k)?, format)
                }
                GraphCommand::Incidence { polytope, r, s, format } => {
                    (incidence_graph(&load_polytope(&polytope)?.lattice, r, s)?, format)
                }
                GraphCommand::Gamma { polytope, format } => {
                    (edge_adjacency_graph(&load_polytope(&polytope)?.lattice)?, format)
                }
                GraphCommand::Export { graph, format } => (load_graph(&graph)?, format),
            };
            out!("{}", render(&graph, format));
        }
        Command::Connectivity { graph, certify } => {
            let graph = load_graph(&graph)?;
            let cert = vertex_connectivity(&graph);
            let out = if certify {
                if let Err(e) = cert.verify(&graph) {
                    bail!("certificate failed to verify: {e}");
                }
                json!({ "nodes": graph.node_count(), "edges": graph.edge_count(), "certificate": cert })
            } else {
                json!({ "nodes": graph.node_count(), "edges": graph.edge_count(), "kappa": cert.kappa })
            };
            out!("{}", pretty(&out));
        }
        Command::Delete { graph, nodes } => {
            let graph = load_graph(&graph)?;
            let outcome = delete_and_check(&graph, &nodes)?;
            out!("{}", pretty(&json!({ "deleted": nodes, "result": outcome })));
        }
        Command::Balinski { polytope, vertices } => {
            let p = load_polytope(&polytope)?;
            let outcome = balinski_affine_check(&p, &vertices)?;
            out!("{}", pretty(&json!({ "polytope": p.name(), "vertices": vertices, "outcome": outcome })));
            return Ok(status(outcome.passed));
        }
        Command::Complex(cmd) => match cmd {
            ComplexCommand::Build { file, glued, boundary } => {
                let c = match (file, glued, boundary) {
                    (Some(f), None, None) => load_complex(&f)?,
                    (None, Some(d), None) => glued_simplices(d)?,
                    (None, None, Some(b)) => boundary_complex(&load_polytope(&b)?.lattice)?,
                    _ => bail!("give exactly one of FILE, --glued or --boundary"),
                };
                out!("{}", complex_to_json(&c));
            }
            ComplexCommand::Check { file } => {
                let c = load_complex(&file)?;
                let report = complex_checks(&c);
                out!(
                    "{}",
                    pretty(&json!({ "f_vector": c.f_vector(), "maximal_cells": c.maximal_cells().len(), "checks": report }))
                );
                return Ok(status(report.pure && report.strongly_connected));
            }
            ComplexCommand::Skeleton { file, k, format } => {
                out!("{}", render(&complex_skeleton_graph(&load_complex(&file)?, k)?, format));
            }
        },
        Command::Verify(cmd) => {
            return Ok(match cmd {
                VerifyCommand::Polytope { polytope, report } => {
                    emit_report(&lab::verify_polytope(&load_polytope(&polytope)?.lattice)?, &report)
                }
                VerifyCommand::Complex { file, report } => {
                    let name = file.file_stem().map_or("complex".into(), |s| s.to_string_lossy().into_owned());
                    emit_report(&lab::verify_complex(&name, &load_complex(&file)?)?, &report)
                }
                VerifyCommand::All { report, timings } => emit_report(&lab::verify_all(timings)?, &report),
            });
        }
        Command::Values { k, d } => {
            out!("{}", pretty(&serde_json::to_value(theorem_values(k, d)?)?));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
