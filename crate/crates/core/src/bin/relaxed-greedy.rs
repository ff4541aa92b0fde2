use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use relaxed_greedy::engines::{AlgorithmConfig, AlgorithmKind, DEFAULT_STOP_EPSILON};
use relaxed_greedy::experiment::{
    cmd_reproduce_simulation, cmd_run, cmd_verify, ExperimentSpec, InstanceSource, OutputFormat,
    VerifyRequest, VerifyTarget,
};

/// Greedy approximation experiments over finite symmetric dictionaries.
///
/// Parallel trials use rayon; set RAYON_NUM_THREADS to limit the worker count.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on one instance and write its trace.
    Run {
        #[arg(long, value_parser = parse_kind)]
        alg: AlgorithmKind,
        /// Relaxation power (PRGA only).
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// counterexample:b=<b> | lowerbound:m=<m> | canonical:<x1>,<x2>,... | file:<path>
        #[arg(long)]
        instance: InstanceSource,
        /// Number of iterations.
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_STOP_EPSILON)]
        stop_epsilon: f64,
        /// Trace output path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// PRGA on f = (1/2, 1/2) for 500 steps at alpha = 1.1, 1.5, 2.0.
    Reproduce {
        /// Write per-step residuals (alpha,m,residual_l2) here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check a convergence bound; exits 0 iff every check passes.
    Verify {
        #[arg(value_enum)]
        bound: Bound,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Fixed dimension for random trials (default cycles 2, 8, 16, 64).
        #[arg(long)]
        dim: Option<usize>,
        /// Iterations, or term count for `lowerbound`.
        #[arg(long, default_value_t = 200)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        /// BoundReport CSV path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON summary path.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Bound {
    Rga,
    Prga,
    Crga,
    DivergenceFloor,
    Lowerbound,
}

fn parse_kind(s: &str) -> Result<AlgorithmKind, String> {
    s.parse().map_err(|e: relaxed_greedy::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    let result = match cli.command {
        Command::Run {
            alg,
            alpha,
            instance,
            m,
            stop_epsilon,
            out,
            format,
        } => {
            let config = AlgorithmConfig {
                kind: alg,
                alpha,
                max_iterations: m,
                stop_epsilon,
            };
            let format = match format {
                Format::Csv => OutputFormat::Csv,
                Format::Json => OutputFormat::Json,
            };
            let spec = ExperimentSpec {
                config,
                instance,
                output: out,
                format,
            };
            cmd_run(&spec, &mut stdout).map(|_| true)
        }
        Command::Reproduce { csv } => {
            cmd_reproduce_simulation(csv.as_deref(), &mut stdout).map(|_| true)
        }
        Command::Verify {
            bound,
            trials,
            dim,
            m,
            seed,
            alpha,
            b,
            out,
            summary,
        } => {
            let target = match bound {
                Bound::Rga => Ok(VerifyTarget::Rga),
                Bound::Prga => Ok(VerifyTarget::Prga {
                    alpha: alpha.unwrap_or(1.0),
                }),
                Bound::Crga => Ok(VerifyTarget::Crga),
                Bound::DivergenceFloor => match (b, alpha) {
                    (Some(b), Some(alpha)) => Ok(VerifyTarget::DivergenceFloor { b, alpha }),
                    _ => Err(relaxed_greedy::Error::InvalidArgument(
                        "divergence-floor needs --b and --alpha".into(),
                    )),
                },
                Bound::Lowerbound => Ok(VerifyTarget::LowerBound),
            };
            target.and_then(|target| {
                let req = VerifyRequest {
                    target,
                    trials,
                    dim,
                    m,
                    seed,
                    report_csv: out,
                    summary_json: summary,
                };
                cmd_verify(&req, &mut stdout).map(|o| o.report.all_satisfied)
            })
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
