use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use antipath::format::{
    emit_graph, graph_hash, parse_graph, to_dot, verify_certificate, Certificate, CertificateKind,
};
use antipath::generators::{gen_cycle_blowup, gen_random, gen_tournament_union, RandomKind};
use antipath::oracle::{longest_antipath, DEFAULT_BUDGET};
use antipath::stress::{run_stress, StressConfig, StressMode};
use antipath::{
    find_antipath, find_antipath_dense, AnyGraph, GraphKind, Orientation, OrientedGraph,
    SearchOutcome,
};

const EXIT_FOUND: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_NOT_GUARANTEED: u8 = 2;
const EXIT_VIOLATION: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(
    name = "antipath",
    version,
    about = "Antidirected paths in oriented graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for an antipath of length k and print its certificate.
    Find {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "forward-first")]
        orientation: Orientation,
        /// Use the edge-density route (peel, then search).
        #[arg(long)]
        dense: bool,
        /// Write the certificate here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate against a graph file.
    Verify {
        graph: PathBuf,
        certificate: PathBuf,
    },
    /// Brute-force longest antipath with a per-orientation table.
    Oracle {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Generate a graph file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, default_value_t = 0, global = true)]
        seed: u64,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Run a stress mode: exhaustive-n5, random-tournaments or dense.
    Stress {
        mode: StressMode,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Directory for reproduction bundles on failure.
        #[arg(long, default_value = "stress-failures")]
        bundle: PathBuf,
    },
    /// Render a graph file as Graphviz DOT.
    Dot { graph: PathBuf },
}

#[derive(Subcommand)]
enum GenKind {
    /// Disjoint rotational regular tournaments on k vertices.
    TournamentUnion {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        copies: usize,
    },
    /// Blow-up of a directed ell-cycle, each vertex replaced by s copies.
    Blowup {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        s: usize,
    },
    RandomTournament {
        #[arg(long)]
        n: usize,
    },
    /// Each pair present with probability p, oriented uniformly.
    RandomOriented {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
}

fn read_graph(path: &Path) -> Result<AnyGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).map_err(|e| anyhow!("{}:{e}", path.display()))
}

fn read_oriented(path: &Path) -> Result<OrientedGraph> {
    match read_graph(path)? {
        AnyGraph::Oriented(g) => Ok(g),
        AnyGraph::Digraph(g) => OrientedGraph::try_from(g)
            .map_err(|e| anyhow!("{}: not an oriented graph: {e}", path.display())),
    }
}

fn write_out(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_find(
    graph: &Path,
    k: usize,
    orient: Orientation,
    dense: bool,
    output: Option<&Path>,
) -> Result<u8> {
    let any = read_graph(graph)?;
    let g = read_oriented(graph)?;
    let outcome = if dense {
        find_antipath_dense(&g, k, orient)
    } else {
        find_antipath(&g, k, orient)
    }?;
    let cert = Certificate::from_outcome(graph_hash(&any), k, orient, &outcome);
    write_out(output, &cert.to_json())?;
    Ok(match outcome {
        SearchOutcome::Found(_) => EXIT_FOUND,
        SearchOutcome::NotGuaranteed { reason, .. } => {
            eprintln!("not guaranteed: {reason}");
            EXIT_NOT_GUARANTEED
        }
        SearchOutcome::HypothesisViolation(v) => {
            eprintln!("hypothesis violation: {v}");
            EXIT_VIOLATION
        }
    })
}

fn cmd_verify(graph: &Path, certificate: &Path) -> Result<u8> {
    let any = read_graph(graph)?;
    let text = fs::read_to_string(certificate)
        .with_context(|| format!("reading {}", certificate.display()))?;
    let cert =
        Certificate::from_json(&text).map_err(|e| anyhow!("{}: {e}", certificate.display()))?;
    verify_certificate(&any, &cert)?;
    match cert.kind {
        CertificateKind::Antipath => println!(
            "ok: antipath of length {} ({})",
            cert.k,
            cert.orientation.map_or("unoriented", |o| o.as_str())
        ),
        kind => println!("ok: {kind} of length {}", cert.k),
    }
    Ok(EXIT_FOUND)
}

fn cmd_oracle(graph: &Path, budget: u64) -> Result<u8> {
    let g = read_oriented(graph)?;
    let res = longest_antipath(&g, budget);
    if !res.exact {
        println!("inexact: budget of {budget} expansions exhausted; values are lower bounds");
    }
    println!("max length: {}", res.max_length);
    match &res.witness {
        Some(p) => println!("witness: {:?}", p.verts()),
        None => println!("witness: none"),
    }
    println!("length  forward-first  backward-first");
    for len in 1..=res.max_length {
        let mark = |o| if res.realizes(len, o) { "yes" } else { "no" };
        println!(
            "{len:>6}  {:>13}  {:>14}",
            mark(Orientation::ForwardFirst),
            mark(Orientation::BackwardFirst)
        );
    }
    println!("expansions: {}", res.expansions);
    Ok(if res.exact { EXIT_FOUND } else { EXIT_BUDGET })
}

fn cmd_gen(kind: &GenKind, seed: u64, output: Option<&Path>) -> Result<u8> {
    let g = match *kind {
        GenKind::TournamentUnion { k, copies } => gen_tournament_union(k, copies)?,
        GenKind::Blowup { ell, s } => gen_cycle_blowup(ell, s)?,
        GenKind::RandomTournament { n } => gen_random(n, RandomKind::Tournament, seed)?,
        GenKind::RandomOriented { n, p } => gen_random(n, RandomKind::Oriented(p), seed)?,
    };
    write_out(output, &emit_graph(GraphKind::Oriented, &g))?;
    Ok(EXIT_FOUND)
}

fn cmd_stress(cfg: StressConfig, bundle: &Path) -> Result<u8> {
    let report = run_stress(&cfg);
    println!("stress {} (seed {})", cfg.mode, cfg.seed);
    println!("{report}");
    if report.passed() {
        return Ok(EXIT_FOUND);
    }
    report
        .write_bundle(bundle)
        .with_context(|| format!("writing bundle to {}", bundle.display()))?;
    println!("reproduction bundle written to {}", bundle.display());
    Ok(EXIT_ERROR)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Find {
            graph,
            k,
            orientation,
            dense,
            output,
        } => cmd_find(&graph, k, orientation, dense, output.as_deref()),
        Command::Verify { graph, certificate } => cmd_verify(&graph, &certificate),
        Command::Oracle { graph, budget } => cmd_oracle(&graph, budget),
        Command::Gen { kind, seed, output } => cmd_gen(&kind, seed, output.as_deref()),
        Command::Stress {
            mode,
            trials,
            seed,
            n,
            k,
            bundle,
        } => {
            let mut cfg = StressConfig::new(mode);
            cfg.seed = seed;
            if let Some(t) = trials {
                cfg.trials = t;
            }
            if let Some(n) = n {
                if mode == StressMode::Exhaustive && n > 6 {
                    bail!("exhaustive mode supports at most 6 vertices");
                }
                cfg.n = n;
            }
            if let Some(k) = k {
                cfg.k = k;
            }
            cmd_stress(cfg, &bundle)
        }
        Command::Dot { graph } => {
            let g = read_graph(&graph)?;
            print!("{}", to_dot(g.digraph()));
            Ok(EXIT_FOUND)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
