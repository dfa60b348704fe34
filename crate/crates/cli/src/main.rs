use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mabbob::calibration::{
    calibrate, compare_with_published, AggregationSpace, CalibrationConfig, DEFAULT_DIMS, DEFAULT_SAMPLES,
};
use mabbob::performance::harness::{run_suite, write_results_csv, write_sweep_csv, SuiteRunConfig};
use mabbob::performance::{alpha_grid, alpha_sweep, SweepConfig};
use mabbob::sampling::{DEFAULT_INSTANCE_RANGE, DEFAULT_THRESHOLD};
use mabbob::suite::{format_value, parse_points, write_atomic, GenerateConfig, ScaleTableFile};
use mabbob::{Aggregator, Algorithm, Budget, Error, FunctionId, Result, ScaleTable, SuiteDefinition};

/// Relative deviation from the published factors that the report flags.
const REPORT_TOLERANCE: f64 = 0.15;

#[derive(Parser, Debug)]
#[command(name = "mabbob", version, about = "Many-affine BBOB problem generator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a suite of problems and write it as JSON.
    Generate(GenerateArgs),
    /// Evaluate one suite problem on a headerless CSV of points.
    Evaluate(EvaluateArgs),
    /// Recompute the scale factors and compare them with the built-in table.
    Calibrate(CalibrateArgs),
    /// Run a baseline optimizer on every problem of a suite and report AOCC.
    Run(RunArgs),
    /// Mean AOCC over an alpha grid of a pairwise combination.
    Grid(GridArgs),
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,
    #[arg(long, default_value_t = DEFAULT_INSTANCE_RANGE)]
    instance_range: u32,
    /// Scale-table JSON produced by `calibrate`; defaults to the built-in table.
    #[arg(long)]
    scale_table: Option<PathBuf>,
    /// Use 10 for every scale factor.
    #[arg(long, conflicts_with = "scale_table")]
    equal_scaling: bool,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    #[arg(long)]
    suite: PathBuf,
    #[arg(long)]
    problem_id: usize,
    /// Headerless CSV, one point per row.
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CalibrateArgs {
    /// Comma-separated dimensions.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_DIMS.to_vec())]
    dims: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// min, mean, max, mid-range or equal.
    #[arg(long, default_value = "mid-range")]
    aggregator: Aggregator,
    /// precision or log-precision.
    #[arg(long, default_value = "precision")]
    space: AggregationSpace,
    #[arg(long, default_value_t = 1)]
    iid: u32,
    /// Scale-table JSON; stdout when omitted (the report then goes to stderr).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    suite: PathBuf,
    /// random-search, one-plus-one-es or basic-de.
    #[arg(long, default_value = "one-plus-one-es")]
    algo: Algorithm,
    #[arg(long, default_value_t = 2000)]
    budget_multiplier: usize,
    #[arg(long, default_value_t = 50)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for one `evaluation,raw_y,best_so_far` CSV per run.
    #[arg(long)]
    trace_dir: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long, default_value_t = 21)]
    f1: u32,
    #[arg(long, default_value_t = 1)]
    f2: u32,
    #[arg(long, default_value_t = 21)]
    alpha_steps: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 50)]
    runs: usize,
    #[arg(long, default_value_t = 25)]
    instances: u32,
    #[arg(long, default_value = "one-plus-one-es")]
    algo: Algorithm,
    #[arg(long, default_value_t = 2000)]
    budget_multiplier: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, bytes),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn generate(args: GenerateArgs) -> Result<()> {
    let scale_table = match (&args.scale_table, args.equal_scaling) {
        (Some(path), _) => ScaleTableFile::load(path)?.table()?,
        (None, true) => ScaleTable::equal(),
        (None, false) => ScaleTable::paper(),
    };
    let suite = SuiteDefinition::generate(&GenerateConfig {
        count: args.count,
        dim: args.dim,
        seed: args.seed,
        threshold: args.threshold,
        instance_range: args.instance_range,
        scale_table,
    })?;
    emit(args.out.as_deref(), suite.to_json()?.as_bytes())
}

fn evaluate(args: EvaluateArgs) -> Result<()> {
    let suite = SuiteDefinition::load(&args.suite)?;
    let problem = suite.problem(args.problem_id)?;
    let text = fs::read_to_string(&args.points)?;
    let mut output = String::new();
    for point in parse_points(&text, suite.dim)? {
        output.push_str(&format_value(problem.evaluate(&point)?));
        output.push('\n');
    }
    emit(args.out.as_deref(), output.as_bytes())
}

fn calibrate_cmd(args: CalibrateArgs) -> Result<()> {
    let config = CalibrationConfig {
        dims: args.dims,
        n_samples: args.samples,
        seed: args.seed,
        aggregator: args.aggregator,
        space: args.space,
        iid: mabbob::InstanceId::new(args.iid)?,
    };
    if config.n_samples == 0 {
        return Err(Error::InvalidArgument("samples must be >= 1".into()));
    }
    let calibration = calibrate(&config)?;
    let file = ScaleTableFile::from_calibration(&config, &calibration);

    let comparison = compare_with_published(&calibration.table, REPORT_TOLERANCE);
    let mut report = String::from("fid  computed  published  deviation\n");
    for c in &comparison {
        report.push_str(&format!(
            "{:<4} {:>8.1} {:>10.1} {:>9.1}%{}\n",
            c.fid.to_string(),
            c.computed,
            c.published,
            100.0 * c.relative_deviation,
            if c.flagged { "  FLAGGED" } else { "" }
        ));
    }
    let within = comparison.iter().filter(|c| !c.flagged).count();
    report.push_str(&format!(
        "{within}/{} functions within {:.0}% of the published table\n",
        comparison.len(),
        100.0 * REPORT_TOLERANCE
    ));

    match &args.out {
        Some(path) => {
            file.save(path)?;
            print!("{report}");
        }
        None => {
            emit(None, file.to_json()?.as_bytes())?;
            eprint!("{report}");
        }
    }
    Ok(())
}

fn run_cmd(args: RunArgs) -> Result<()> {
    let suite = SuiteDefinition::load(&args.suite)?;
    if args.runs == 0 {
        return Err(Error::InvalidArgument("runs must be >= 1".into()));
    }
    let results = run_suite(
        &suite,
        &SuiteRunConfig {
            algorithm: args.algo,
            budget_multiplier: args.budget_multiplier,
            runs: args.runs,
            seed: args.seed,
        },
        args.trace_dir.as_deref(),
    )?;
    let mut buf = Vec::new();
    write_results_csv(&results, &mut buf)?;
    emit(args.out.as_deref(), &buf)
}

fn grid(args: GridArgs) -> Result<()> {
    let config = SweepConfig {
        f1: FunctionId::new(args.f1)?,
        f2: FunctionId::new(args.f2)?,
        alphas: alpha_grid(args.alpha_steps)?,
        dim: args.dim,
        runs: args.runs,
        instances: args.instances,
        budget: Budget::scaled(args.budget_multiplier, args.dim)?,
        algorithm: args.algo,
        seed: args.seed,
    };
    let cells = alpha_sweep(&config)?;
    let mut buf = Vec::new();
    write_sweep_csv(&cells, &mut buf)?;
    emit(args.out.as_deref(), &buf)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let message: Vec<&str> = rendered
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            eprintln!("error: {}", message.join(" ").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    let outcome = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Calibrate(a) => calibrate_cmd(a),
        Command::Run(a) => run_cmd(a),
        Command::Grid(a) => grid(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
