use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mpcc::bench::{bench_sweep, power_of_two_sizes, BenchConfig, BenchMode};
use mpcc::driver::{trace_records, write_csv};
use mpcc::lowerbound::{cycle_reduction, iteration_bound, union_find_solver};
use mpcc::mpc::{CostLedger, MpcConfig};
use mpcc::shrink::{shrink_phase, ShrinkParams};
use mpcc::{find_connected_components, generate, DriverParams, Error, Family, GenSpec, Graph};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "mpcc", version, about = "MPC connectivity: generate graphs, label components, run sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// Edge count for `gnm` (default 2n).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Connected components.
    Cc {
        #[command(subcommand)]
        command: CcCommand,
    },
    /// Shrink a graph and write the result plus the vertex mapping.
    Shrink {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        target: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
    },
    /// Edge-sampling reduction on a cycle, one CSV row per outer iteration.
    Lowerbound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dprime: usize,
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// `cycle` or `two_cycles`.
        #[arg(long, default_value = "cycle")]
        family: String,
        #[arg(long, value_enum, default_value_t = Solver::Pipeline)]
        solver: Solver,
    },
}

#[derive(Subcommand)]
enum CcCommand {
    /// Label the components of one graph.
    Run {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = mpcc::engine::DEFAULT_ALPHA)]
        alpha: f64,
        /// Skip the union-find cross-check.
        #[arg(long)]
        no_verify: bool,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write `v label` lines here.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Sweep a family over power-of-two sizes.
    Bench {
        #[arg(long)]
        family: String,
        #[arg(long)]
        nmin: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        #[arg(long, default_value_t = mpcc::engine::DEFAULT_ALPHA)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = Mode::Pipeline)]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Pipeline,
    Core,
}

#[derive(Clone, Copy, ValueEnum)]
enum Solver {
    Pipeline,
    UnionFind,
}

#[derive(Serialize)]
struct LowerboundRow {
    seed: u64,
    n: usize,
    d_prime: usize,
    iteration: usize,
    vertices_before: usize,
    edges_before: usize,
    kept_edges: usize,
    deleted_edges: usize,
    max_diameter: u32,
    vertices_after: usize,
    edges_after: usize,
    outer_iterations: usize,
    iteration_bound: Option<usize>,
    final_components: usize,
    expected_components: usize,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::VerificationMismatch => 2,
        Error::TerminationOverflow { .. } | Error::NoProgress { .. } | Error::AuditViolation(_) => 3,
        _ => 4,
    }
}

fn strict_audits() -> bool {
    std::env::var("MPCC_STRICT_AUDITS").is_ok_and(|v| v == "1")
}

fn read_graph(path: &Path) -> mpcc::Result<Graph> {
    mpcc::io::read_edge_list(BufReader::new(File::open(path)?))
}

fn create(path: &Path) -> mpcc::Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn run(cli: Cli) -> mpcc::Result<()> {
    let strict = strict_audits();
    match cli.command {
        Command::Gen { family, n, m, seed, out } => {
            let f = Family::from_name(&family, n, m)?;
            let g = generate(&GenSpec::new(f, seed))?;
            let mut w = create(&out)?;
            mpcc::io::write_edge_list(&g, &mut w)?;
            w.flush()?;
        }
        Command::Cc {
            command:
                CcCommand::Run {
                    input,
                    delta,
                    seed,
                    alpha,
                    no_verify,
                    trace,
                    report,
                    labels,
                },
        } => {
            let g = read_graph(&input)?;
            let mut p = DriverParams::new(delta, seed);
            p.alpha = alpha;
            p.verify = !no_verify && g.n() <= 1_000_000;
            p.strict_audits = strict;
            let out = find_connected_components(&g, &p)?;
            if let Some(path) = trace {
                write_csv(create(&path)?, &trace_records(&out.shrink_trace, &out.trace))?;
            }
            if let Some(path) = report {
                let mut w = create(&path)?;
                serde_json::to_writer_pretty(&mut w, &out.report)?;
                writeln!(w)?;
                w.flush()?;
            }
            if let Some(path) = labels {
                let mut w = create(&path)?;
                out.labels.write_lines(&mut w)?;
                w.flush()?;
            }
            let r = &out.report;
            println!(
                "components={} shrink_rounds={} main_iterations={} rounds_charged={} violations={}",
                r.components,
                r.shrink_rounds,
                r.main_iterations,
                r.rounds_charged,
                r.ledger.violations.len()
            );
            eprintln!("wall_clock={:.3}s", r.wall_clock.as_secs_f64());
        }
        Command::Cc {
            command:
                CcCommand::Bench {
                    family,
                    nmin,
                    nmax,
                    seeds,
                    delta,
                    alpha,
                    mode,
                    out,
                },
        } => {
            let config = BenchConfig {
                family,
                sizes: power_of_two_sizes(nmin, nmax),
                seeds: (0..seeds).collect(),
                delta,
                alpha,
                mode: match mode {
                    Mode::Pipeline => BenchMode::Pipeline,
                    Mode::Core => BenchMode::Core,
                },
            };
            let rows = bench_sweep(&config)?;
            if strict {
                if let Some(r) = rows.iter().find(|r| r.violations > 0) {
                    return Err(Error::AuditViolation(format!(
                        "{} seed {}: {} violations",
                        r.family, r.seed, r.violations
                    )));
                }
            }
            write_csv(create(&out)?, &rows)?;
        }
        Command::Shrink {
            input,
            target,
            seed,
            out,
            map,
            delta,
        } => {
            let g = read_graph(&input)?;
            let n0 = g.live_count().max(2);
            let config = MpcConfig::new(delta, n0, (g.edge_count() + n0) as f64)?;
            let mut config = config;
            config.strict = strict;
            let mut ledger = CostLedger::new();
            let outcome = shrink_phase(g, &ShrinkParams::new(target, seed), &config, &mut ledger)?;
            let mut w = create(&out)?;
            mpcc::io::write_edge_list(&outcome.graph, &mut w)?;
            w.flush()?;
            let mut w = create(&map)?;
            outcome.mapping.write_lines(&mut w)?;
            w.flush()?;
            println!("rounds={} rounds_charged={}", outcome.rounds, ledger.rounds_charged);
        }
        Command::Lowerbound {
            n,
            dprime,
            seeds,
            out,
            delta,
            family,
            solver,
        } => {
            let f = match family.as_str() {
                "cycle" => Family::Cycle { n },
                "two_cycles" => Family::TwoCycles { n },
                other => return Err(Error::InvalidSpec(format!("lowerbound needs cycle or two_cycles, got {other:?}"))),
            };
            let expected = if family == "cycle" { 1 } else { 2 };
            let machine_space = MpcConfig::new(delta, n, n as f64)?.machine_space;
            let bound = iteration_bound(n, dprime);
            let mut rows = Vec::new();
            for seed in 0..seeds {
                let g = generate(&GenSpec::new(f.clone(), seed))?;
                let stats = match solver {
                    Solver::UnionFind => cycle_reduction(&g, dprime, seed, machine_space, union_find_solver)?,
                    Solver::Pipeline => {
                        let mut p = DriverParams::new(delta, seed);
                        p.verify = false;
                        p.strict_audits = strict;
                        cycle_reduction(&g, dprime, seed, machine_space, |h: &Graph| {
                            find_connected_components(h, &p).map(|o| o.labels)
                        })?
                    }
                };
                if stats.final_components != expected {
                    return Err(Error::VerificationMismatch);
                }
                for it in &stats.iterations {
                    rows.push(LowerboundRow {
                        seed,
                        n,
                        d_prime: dprime,
                        iteration: it.iteration,
                        vertices_before: it.vertices_before,
                        edges_before: it.edges_before,
                        kept_edges: it.kept_edges,
                        deleted_edges: it.deleted_edges,
                        max_diameter: it.max_diameter,
                        vertices_after: it.vertices_after,
                        edges_after: it.edges_after,
                        outer_iterations: stats.outer_iterations,
                        iteration_bound: bound,
                        final_components: stats.final_components,
                        expected_components: expected,
                    });
                }
            }
            write_csv(create(&out)?, &rows)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
