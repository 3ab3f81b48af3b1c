//! `cgkit` command line: solve built-in problems, run benchmark grids,
//! compute performance profiles, and drive the noise/denoise image
//! pipeline.
//!
//! Exit codes: 0 converged/success, 2 iteration cap, 3 line-search failure,
//! 64 usage errors (unknown problem/method, invalid flags, dimension
//! mismatch), 65 malformed input files (PGM/CSV), 1 anything else.
//! Tuning flags fall back to `CGKIT_*` environment variables before their
//! built-in defaults.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use cgkit::bench::{
    profile, records_from_csv, records_to_csv, profile_to_csv, run_grid, write_atomic,
    GridConfig, ProfileMetric,
};
use cgkit::direction::{MethodKind, MethodSpec};
use cgkit::linesearch::{WolfeMode, WolfeParams};
use cgkit::problems::{self, add_gaussian_noise, denoise_objective, rmse, DenoiseSpec, ImageGray};
use cgkit::solver::{minimize, SolveReport, SolveStatus, SolverConfig};
use cgkit_cli::pgm::{read_pgm, write_pgm, PgmFormat};

#[derive(Parser)]
#[command(
    name = "cgkit",
    version,
    about = "Nonlinear conjugate-gradient toolkit",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize a built-in problem and print a key=value report
    Solve(SolveArgs),
    /// Run a method x problem grid and write run records as CSV
    Bench(BenchArgs),
    /// Compute a performance profile from a run CSV
    Profile(ProfileArgs),
    /// Solve the heat-conduction problem and print the temperatures
    Heat(HeatArgs),
    /// Add seeded Gaussian noise to a PGM image
    Noise(NoiseArgs),
    /// Restore a noisy PGM image by smoothed-TV minimization
    Denoise(DenoiseArgs),
}

#[derive(Args)]
struct TuningFlags {
    /// Sufficient-decrease constant of the Wolfe conditions
    #[arg(long, env = "CGKIT_DELTA", default_value_t = 0.01)]
    delta: f64,
    /// Curvature constant of the Wolfe conditions
    #[arg(long, env = "CGKIT_SIGMA", default_value_t = 0.1)]
    sigma: f64,
    /// Gradient-norm stopping threshold (infinity norm)
    #[arg(long, env = "CGKIT_GTOL", default_value_t = 1e-6)]
    gtol: f64,
    /// Iteration cap
    #[arg(long, env = "CGKIT_MAX_ITER", default_value_t = 50_000)]
    max_iter: usize,
    /// Dai-Liao parameter (dl/dl+ methods)
    #[arg(long, env = "CGKIT_T", default_value_t = 0.1)]
    t: f64,
    /// Hager-Zhang truncation constant
    #[arg(long, env = "CGKIT_ETA", default_value_t = 0.01)]
    eta: f64,
}

#[derive(Args)]
struct SolveArgs {
    /// Catalog problem name (see README for the list)
    #[arg(long)]
    problem: String,
    /// Update-parameter formula
    #[arg(long, env = "CGKIT_METHOD", default_value = "azhs")]
    method: String,
    #[command(flatten)]
    tuning: TuningFlags,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated problem names (default: the whole catalog)
    #[arg(long, value_delimiter = ',')]
    problems: Vec<String>,
    /// Comma-separated method names
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "azhs,azhs3,azprp,hs+,prp+,dl+,hz"
    )]
    methods: Vec<String>,
    /// Output CSV path
    #[arg(long, default_value = "runs.csv")]
    out: PathBuf,
    /// Worker threads (1 keeps timings comparable)
    #[arg(long, env = "CGKIT_JOBS", default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    tuning: TuningFlags,
}

#[derive(Args)]
struct ProfileArgs {
    /// Run CSV produced by `bench`
    #[arg(long)]
    input: PathBuf,
    /// Cost metric: iters | fevals | gevals | time
    #[arg(long, default_value = "iters")]
    metric: String,
    /// Output CSV path
    #[arg(long, default_value = "profile.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct HeatArgs {
    /// Update-parameter formula
    #[arg(long, env = "CGKIT_METHOD", default_value = "azhs")]
    method: String,
    #[command(flatten)]
    tuning: TuningFlags,
}

#[derive(Args)]
struct NoiseArgs {
    /// Input PGM (P2 or P5, maxval 255)
    #[arg(long)]
    input: PathBuf,
    /// Output PGM path
    #[arg(long)]
    output: PathBuf,
    /// Noise standard deviation on the [0, 1] intensity scale
    #[arg(long, env = "CGKIT_SIGMA_FRAC", default_value_t = 0.25)]
    sigma_frac: f64,
    /// Generator seed
    #[arg(long, env = "CGKIT_SEED", default_value_t = 0)]
    seed: u64,
    /// Output sub-format: p2 | p5 (default: same as input)
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct DenoiseArgs {
    /// Noisy input PGM
    #[arg(long)]
    input: PathBuf,
    /// Restored output PGM path
    #[arg(long)]
    output: PathBuf,
    /// Ground-truth PGM; enables RMSE reporting
    #[arg(long = "ref")]
    reference: Option<PathBuf>,
    /// Update-parameter formula
    #[arg(long, env = "CGKIT_METHOD", default_value = "azhs")]
    method: String,
    /// Regularization weight
    #[arg(long, env = "CGKIT_LAMBDA", default_value_t = 0.08)]
    lambda: f64,
    /// Edge-penalty smoothing constant
    #[arg(long, env = "CGKIT_EPS_SMOOTH", default_value_t = 1e-3)]
    eps_smooth: f64,
    /// Relative-step stopping threshold
    #[arg(long, env = "CGKIT_STEP_RTOL", default_value_t = 1e-3)]
    step_rtol: f64,
    /// Output sub-format: p2 | p5 (default: same as input)
    #[arg(long)]
    format: Option<String>,
    #[command(flatten)]
    tuning: TuningFlags,
}

enum CliError {
    Usage(String),
    Data(String),
    Other(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Data(_) => 65,
            CliError::Other(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Other(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

impl From<cgkit::Error> for CliError {
    fn from(e: cgkit::Error) -> Self {
        match e {
            cgkit::Error::CsvFormat { .. } => CliError::Data(e.to_string()),
            cgkit::Error::UnknownMethod(_)
            | cgkit::Error::InvalidConfig(_)
            | cgkit::Error::DimensionMismatch { .. } => CliError::Usage(e.to_string()),
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Profile(args) => cmd_profile(args),
        Command::Heat(args) => cmd_heat(args),
        Command::Noise(args) => cmd_noise(args),
        Command::Denoise(args) => cmd_denoise(args),
    }
}

fn parse_method(name: &str, tuning: &TuningFlags) -> Result<MethodSpec, CliError> {
    let kind: MethodKind = name.parse().map_err(usage)?;
    let spec = MethodSpec::new(kind).with_t(tuning.t).with_eta(tuning.eta);
    spec.validate().map_err(usage)?;
    Ok(spec)
}

fn build_config(method: &str, tuning: &TuningFlags) -> Result<SolverConfig, CliError> {
    let spec = parse_method(method, tuning)?;
    let wolfe =
        WolfeParams::new(tuning.delta, tuning.sigma, WolfeMode::Strong).map_err(usage)?;
    let config = SolverConfig {
        wolfe,
        gtol: tuning.gtol,
        max_iter: tuning.max_iter,
        ..SolverConfig::new(spec)
    };
    config.validate().map_err(usage)?;
    Ok(config)
}

fn exit_code(status: SolveStatus) -> i32 {
    match status {
        SolveStatus::Converged => 0,
        SolveStatus::IterationCap => 2,
        SolveStatus::LineSearchFailure => 3,
    }
}

fn print_report(report: &SolveReport) {
    println!("status={}", report.status);
    println!("iters={}", report.iters);
    println!("fevals={}", report.fevals);
    println!("gevals={}", report.gevals);
    println!("f_final={:?}", report.f_final);
    println!("gnorm_final={:?}", report.gnorm_final);
}

fn cmd_solve(args: SolveArgs) -> Result<i32, CliError> {
    let entry = problems::by_name(&args.problem)
        .ok_or_else(|| CliError::Usage(format!("unknown problem `{}`", args.problem)))?;
    let config = build_config(&args.method, &args.tuning)?;
    let report = minimize(entry.objective.as_ref(), &entry.x0, &config)?;
    print_report(&report);
    Ok(exit_code(report.status))
}

fn cmd_heat(args: HeatArgs) -> Result<i32, CliError> {
    let entry = problems::by_name("heat").expect("heat problem is built in");
    let config = build_config(&args.method, &args.tuning)?;
    let report = minimize(entry.objective.as_ref(), &entry.x0, &config)?;
    for (i, x) in report.x_final.iter().enumerate() {
        println!("x{}={:?}", i + 1, x);
    }
    print_report(&report);
    Ok(exit_code(report.status))
}

fn cmd_bench(args: BenchArgs) -> Result<i32, CliError> {
    let entries = if args.problems.is_empty() {
        problems::catalog()
    } else {
        args.problems
            .iter()
            .map(|name| {
                problems::by_name(name)
                    .ok_or_else(|| CliError::Usage(format!("unknown problem `{name}`")))
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    let methods = args
        .methods
        .iter()
        .map(|name| parse_method(name, &args.tuning))
        .collect::<Result<Vec<_>, _>>()?;
    let wolfe = WolfeParams::new(args.tuning.delta, args.tuning.sigma, WolfeMode::Strong)
        .map_err(usage)?;
    let grid_config = GridConfig {
        gtol: args.tuning.gtol,
        max_iter: args.tuning.max_iter,
        wolfe,
        jobs: args.jobs,
    };
    let records = run_grid(&entries, &methods, &grid_config)?;
    write_atomic(&args.out, records_to_csv(&records).as_bytes())?;
    eprintln!("wrote {} records to {}", records.len(), args.out.display());
    Ok(0)
}

fn cmd_profile(args: ProfileArgs) -> Result<i32, CliError> {
    let metric: ProfileMetric = args.metric.parse().map_err(usage)?;
    let text = std::fs::read_to_string(&args.input)?;
    let records = records_from_csv(&text)?;
    let table = profile(&records, metric).map_err(|e| match e {
        cgkit::Error::EmptyInput(_) | cgkit::Error::DuplicateRecord { .. } => {
            CliError::Data(e.to_string())
        }
        other => other.into(),
    })?;
    for dropped in &table.dropped {
        eprintln!("warning: dropping `{dropped}`: no solver succeeded on it");
    }
    write_atomic(&args.out, profile_to_csv(&table).as_bytes())?;
    eprintln!(
        "wrote profile over {} problems x {} solvers to {}",
        table.problems.len(),
        table.solvers.len(),
        args.out.display()
    );
    Ok(0)
}

fn read_image(path: &Path) -> Result<(ImageGray, PgmFormat), CliError> {
    let bytes = std::fs::read(path)?;
    read_pgm(&bytes).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn output_format(flag: &Option<String>, input: PgmFormat) -> Result<PgmFormat, CliError> {
    match flag.as_deref() {
        None => Ok(input),
        Some("p2") | Some("P2") => Ok(PgmFormat::P2),
        Some("p5") | Some("P5") => Ok(PgmFormat::P5),
        Some(other) => Err(CliError::Usage(format!(
            "unknown format `{other}` (want p2 or p5)"
        ))),
    }
}

fn cmd_noise(args: NoiseArgs) -> Result<i32, CliError> {
    let (image, input_format) = read_image(&args.input)?;
    let format = output_format(&args.format, input_format)?;
    let noisy = if args.sigma_frac == 0.0 {
        image
    } else {
        add_gaussian_noise(&image, args.sigma_frac, args.seed).map_err(usage)?
    };
    write_atomic(&args.output, &write_pgm(&noisy, format))?;
    Ok(0)
}

fn cmd_denoise(args: DenoiseArgs) -> Result<i32, CliError> {
    let (noisy, input_format) = read_image(&args.input)?;
    let format = output_format(&args.format, input_format)?;
    let reference = args
        .reference
        .as_deref()
        .map(read_image)
        .transpose()?
        .map(|(img, _)| img);
    if let Some(truth) = &reference {
        if truth.width() != noisy.width() || truth.height() != noisy.height() {
            return Err(CliError::Usage(format!(
                "reference is {}x{} but input is {}x{}",
                truth.width(),
                truth.height(),
                noisy.width(),
                noisy.height()
            )));
        }
    }

    let spec = DenoiseSpec::new(noisy.clone(), args.lambda, args.eps_smooth).map_err(usage)?;
    let objective = denoise_objective(&spec);
    let mut config = build_config(&args.method, &args.tuning)?;
    let step_rtol_ok = args.step_rtol > 0.0 && args.step_rtol.is_finite();
    if !step_rtol_ok {
        return Err(CliError::Usage(format!(
            "step_rtol must be positive, got {}",
            args.step_rtol
        )));
    }
    config.step_rtol = Some(args.step_rtol);

    let report = minimize(&objective, &noisy.to_vector(), &config)?;
    let restored =
        ImageGray::from_clamped(noisy.width(), noisy.height(), report.x_final.as_slice())?;
    write_atomic(&args.output, &write_pgm(&restored, format))?;

    println!("iters={}", report.iters);
    println!("wall_time={:?}", report.wall_time);
    if let Some(truth) = &reference {
        println!("rmse_noisy={:?}", rmse(truth, &noisy).map_err(usage)?);
        println!("rmse_restored={:?}", rmse(truth, &restored).map_err(usage)?);
    }
    Ok(exit_code(report.status))
}
