mod bench;
mod error;
mod instance;
mod oracle;
mod reduce;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use groupknap::automata::{SaturationMode, SaturationParams};
use groupknap::oracles::Caps;
use groupknap::solve::{Decision, KpBoundConfig, SolverReport, Witness};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Parser)]
#[command(name = "groupknap", version, about = "Knapsack-type problems in groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance file and print a JSON report.
    Solve {
        path: PathBuf,
        #[command(flatten)]
        saturation: SaturationArgs,
        /// Bound polynomial for knapsack problems, highest degree first,
        /// e.g. "1,8,8". Fractions like "1/2" are accepted.
        #[arg(long, value_name = "COEFFS")]
        kp_bound: Option<String>,
        /// Solve knapsack problems as bounded knapsack with m = M copies.
        #[arg(long)]
        kp_expand: bool,
        /// Write the saturated graph, one edge per line.
        #[arg(long, value_name = "PATH")]
        dump_graph: Option<PathBuf>,
        /// Report 0 milliseconds so output is byte-stable.
        #[arg(long)]
        no_timing: bool,
    },
    /// Answer an instance by exhaustive search.
    Oracle {
        path: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_exp: u64,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 50_000_000)]
        max_nodes: u64,
    },
    /// Rewrite an instance into another problem kind.
    Reduce {
        path: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Write here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Random subset-sum instances; one CSV row per instance.
    Bench {
        #[arg(long, value_enum, default_value = "cyclic")]
        suite: bench::Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        saturation: SaturationArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Fixed,
    Adaptive,
}

#[derive(Args)]
struct SaturationArgs {
    #[arg(long, default_value_t = 1.0)]
    c0: f64,
    #[arg(long, default_value_t = 2.0)]
    c1: f64,
    #[arg(long, value_enum, default_value = "adaptive")]
    mode: Mode,
    /// Fixed mode: cap on the computed depth. Adaptive mode: cap on rounds.
    #[arg(long, default_value_t = 32)]
    max_rounds: u32,
    /// A completion depth known to suffice for this presentation.
    #[arg(long)]
    proven_depth: Option<u32>,
    #[arg(long, default_value_t = 200_000)]
    max_states: u32,
}

impl SaturationArgs {
    fn params(&self) -> SaturationParams {
        SaturationParams {
            c0: self.c0,
            c1: self.c1,
            mode: match self.mode {
                Mode::Fixed => SaturationMode::Fixed,
                Mode::Adaptive => SaturationMode::Adaptive,
            },
            max_rounds: self.max_rounds,
            proven_depth: self.proven_depth,
            max_states: self.max_states,
            ..SaturationParams::default()
        }
    }
}

fn parse_kp_bound(text: &str) -> Result<KpBoundConfig, CliError> {
    let coeffs = text
        .split(',')
        .map(|c| BigRational::from_str(c.trim()).map_err(|_| CliError::input(format!("--kp-bound: bad coefficient {c:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(KpBoundConfig::new(coeffs)?)
}

fn exit_for(d: Decision) -> ExitCode {
    ExitCode::from(match d {
        Decision::Yes => 0,
        Decision::No => 1,
        Decision::Unknown => 2,
    })
}

fn report_json(r: &SolverReport, inst: &instance::InstanceFile, millis: u64) -> Value {
    json!({
        "problem": inst.problem.kind.name(),
        "group": inst.group.kind(),
        "decision": r.decision.as_str(),
        "witness": r.witness.as_ref().map(Witness::values),
        "cost": r.cost.as_ref().map(|c| c.to_string()),
        "stats": {
            "states": r.stats.states,
            "edges": r.stats.edges,
            "rounds": r.stats.rounds,
            "rounds_needed": r.stats.rounds_needed,
            "millis": millis,
        },
        "bound_used": r.bound_used,
        "verified": r.verified,
        "note": r.note,
    })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Solve { path, saturation, kp_bound, kp_expand, dump_graph, no_timing } => {
            let inst = instance::load(&path)?;
            let mut bound = match kp_bound {
                Some(t) => parse_kp_bound(&t)?,
                None => KpBoundConfig::default(),
            };
            bound.expand = kp_expand;
            let opts = solve::SolveOptions { params: saturation.params(), bound, dump_graph };
            opts.params.validate()?;
            let started = Instant::now();
            let report = solve::run(&inst, &opts)?;
            let millis = if no_timing { 0 } else { started.elapsed().as_millis() as u64 };
            if report.decision == Decision::Yes && !report.verified {
                return Err(CliError::internal("solver returned an unverified witness"));
            }
            println!("{}", serde_json::to_string(&report_json(&report, &inst, millis)).unwrap());
            Ok(exit_for(report.decision))
        }
        Command::Oracle { path, max_exp, max_len, max_nodes } => {
            let inst = instance::load(&path)?;
            let (decision, value) = oracle::run(&inst, &Caps { max_exp, max_len, max_nodes })?;
            println!("{}", serde_json::to_string(&value).unwrap());
            Ok(exit_for(decision))
        }
        Command::Reduce { path, from, to, output } => {
            let inst = instance::load(&path)?;
            let text = reduce::run(&inst, &from.to_ascii_lowercase(), &to.to_ascii_lowercase())?;
            match output {
                Some(p) => std::fs::write(&p, text)
                    .map_err(|e| CliError::input(format!("cannot write {}: {e}", p.display())))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { suite, seed, count, max_k, max_len, jobs, no_timing, saturation } => {
            let opts = bench::BenchOptions {
                suite,
                seed,
                count,
                max_k,
                max_len,
                jobs,
                timing: !no_timing,
                params: saturation.params(),
            };
            print!("{}", bench::run(&opts)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
