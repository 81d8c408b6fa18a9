use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use entrobox::ensemble::EnsembleKind;
use entrobox_cli::eval::{evaluate, parse_shape, Check};
use entrobox_cli::io::{state_to_json, write_json};
use entrobox_cli::{
    generate_ensemble, ingest_state, run_suite, write_report, CliError, Suite, SuiteConfig,
    EXIT_FAIL, EXIT_INPUT, EXIT_PASS,
};

#[derive(Parser)]
#[command(
    name = "entrobox",
    version,
    about = "Entropic inequality suites for single-qudit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run inequality suites over random ensembles (and an optional input state).
    Check(CheckArgs),
    /// Write a seeded random ensemble to a directory, one JSON file per state.
    Gen(GenArgs),
    /// Evaluate one check on one state file.
    Eval(EvalArgs),
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,7")]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tsallis indices.
    #[arg(long, value_delimiter = ',', default_value = "0.5,2,3")]
    q: Vec<f64>,
    /// Gap tolerance for inequality checks.
    #[arg(long, default_value_t = entrobox::GAP_TOLERANCE)]
    tolerance: f64,
    /// Extra state to check (JSON vector or matrix).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Report path, `-` for stdout.
    #[arg(long, default_value = "entrobox-report.json")]
    output: PathBuf,
    /// Per-dimension cap on trials for the entropy minimization.
    #[arg(long, default_value_t = 100)]
    optimizer_trials: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Dirichlet,
    Ginibre,
    Haar,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, value_delimiter = ',', default_value = "4")]
    dims: Vec<usize>,
    /// States per dimension.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    check: Check,
    /// Table layout such as `2x4` or `2x2x2`.
    #[arg(long)]
    shape: Option<String>,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    q: Vec<f64>,
    #[arg(long, default_value_t = entrobox::GAP_TOLERANCE)]
    tolerance: f64,
    #[arg(long, default_value = "-")]
    output: PathBuf,
}

fn check(args: CheckArgs) -> Result<u8, CliError> {
    let cfg = SuiteConfig {
        suite: args.suite,
        trials: args.trials,
        seed: args.seed,
        q_values: args.q,
        tolerance: args.tolerance,
        dims: args.dims,
        input_path: args.input,
        output_path: args.output,
        optimizer_trials: args.optimizer_trials,
    };
    let report = run_suite(&cfg)?;
    write_report(&report, &cfg.output_path)?;
    for c in report.checks.iter().filter(|c| c.failures > 0) {
        eprintln!(
            "FAIL {}/{}: {} of {} (min gap {:e})",
            c.suite.name(),
            c.tag,
            c.failures,
            c.count,
            c.min_gap
        );
    }
    Ok(report.exit_code())
}

fn generate(args: GenArgs) -> Result<u8, CliError> {
    let (kind, prefix) = match args.kind {
        Kind::Dirichlet => (EnsembleKind::DirichletSimplex, "dirichlet"),
        Kind::Ginibre => (EnsembleKind::GinibreDensity, "ginibre"),
        Kind::Haar => (EnsembleKind::HaarUnitary, "haar"),
    };
    std::fs::create_dir_all(&args.output).map_err(|source| CliError::Io {
        path: args.output.clone(),
        source,
    })?;
    for &dim in &args.dims {
        for (i, state) in generate_ensemble(kind, dim, args.trials, args.seed)?
            .iter()
            .enumerate()
        {
            let path = args.output.join(format!("{prefix}-d{dim}-{i:05}.json"));
            write_json(&path, &state_to_json(state))?;
        }
    }
    Ok(EXIT_PASS)
}

fn eval(args: EvalArgs) -> Result<u8, CliError> {
    let state = ingest_state(&args.input)?;
    let shape = args.shape.as_deref().map(parse_shape).transpose()?;
    let report = evaluate(&state, args.check, shape.as_ref(), &args.q, args.tolerance)?;
    write_json(&args.output, &report)?;
    Ok(if report.passed { EXIT_PASS } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(args) => check(args),
        Command::Gen(args) => generate(args),
        Command::Eval(args) => eval(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
