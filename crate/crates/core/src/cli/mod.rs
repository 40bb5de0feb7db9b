//! The `parsweep` command line: batch solves from files, Poisson runs and
//! the timing harness.
//!
//! Exit codes: 0 success, 2 usage or input errors, 3 solver errors,
//! 4 failed verification.

mod bench;
mod files;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use crate::dichotomy::Partition;
use crate::error::Error;
use crate::poisson::{model_problem, AdiSolver, AdiStop, FourierSolver, Grid2D, SolverConfig};
use crate::runtime::{prepare, solve_series, Decomposition, ExecMode, Executor, WORKERS_ENV};
use crate::tridiag::{dense_oracle_solve, random_dominant, random_vector, TridiagMatrix};

pub use bench::{parse_bench_csv, run_bench, time_cell, to_markdown, BenchFailure, BenchMethod, BenchPlan, BenchRecord};
pub use files::{parse_series, write_series};

/// Largest accepted relative max-norm deviation from the dense oracle.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "parsweep", version, about = "Batched parallel tridiagonal solves and Poisson solvers")]
pub struct Cli {
    /// Worker threads (implies threaded mode unless --mode is given).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    /// Seed for generated fixtures.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Check every solution against dense elimination.
    #[arg(long, global = true)]
    pub verify: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Simulated,
    Threaded,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a series of right-hand sides for one tridiagonal matrix.
    Solve(SolveArgs),
    /// Solve the model Poisson problem.
    Poisson(PoissonArgs),
    /// Time a method over sizes and worker counts, CSV to stdout.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Matrix file: order, then sub-, main and super-diagonal lines.
    #[arg(long, required_unless_present = "random_order")]
    pub matrix: Option<PathBuf>,
    /// Right-hand sides: header `n m`, then m lines of n values.
    #[arg(long, required_unless_present = "random_order")]
    pub rhs: Option<PathBuf>,
    /// 1-based boundary rows, comma separated (overrides --pes).
    #[arg(long)]
    pub partition: Option<String>,
    /// Logical PEs for an even split.
    #[arg(long)]
    pub pes: Option<usize>,
    /// Solutions file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run statistics JSON (stderr when absent).
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Generate a random dominant system of this order instead of reading files.
    #[arg(long, conflicts_with_all = ["matrix", "rhs"])]
    pub random_order: Option<usize>,
    /// Right-hand sides to generate with --random-order.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PoissonMethod {
    Fourier,
    Adi,
}

#[derive(Debug, Args)]
pub struct PoissonArgs {
    #[arg(long, value_enum, default_value = "fourier")]
    pub method: PoissonMethod,
    /// Cells per direction of the unit-square mesh.
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    /// ADI tolerance.
    #[arg(long, default_value_t = 1e-5)]
    pub eps: f64,
    /// Problems in the series.
    #[arg(long, default_value_t = 1)]
    pub series: usize,
    /// Logical PEs per line system.
    #[arg(long, default_value_t = 4)]
    pub pes: usize,
    /// Write the last solution grid here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "fourier")]
    pub method: BenchMethod,
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',', default_value = "64,128")]
    pub sizes: Vec<usize>,
    /// Comma-separated worker counts.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
    pub np: Vec<usize>,
    /// Problems per timed series (at least 10).
    #[arg(long, default_value_t = 10)]
    pub series: usize,
    #[arg(long, default_value_t = 3)]
    pub repetitions: usize,
    /// ADI tolerance.
    #[arg(long, default_value_t = 1e-5)]
    pub eps: f64,
    /// Also print the table as markdown (to stderr).
    #[arg(long)]
    pub markdown: bool,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Solver(Error),
    #[error("verification failed: relative error {error:e} for right-hand side {index}")]
    Verify { index: usize, error: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input(_) => 2,
            Self::Solver(_) => 3,
            Self::Verify { .. } => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidPartition(_) => Self::Input(e.to_string()),
            other => Self::Solver(other),
        }
    }
}

fn io_err(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn read(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn read_parsed<T>(path: &std::path::Path, parse: impl Fn(&str) -> crate::Result<T>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

impl Cli {
    /// Execution mode from the flags and `SWEEP_WORKERS`. An explicit
    /// `--workers` wins over the environment.
    pub fn exec_mode(&self) -> ExecMode {
        let default = std::thread::available_parallelism().map_or(1, |n| n.get());
        match (self.mode, self.workers) {
            (Some(ModeArg::Simulated), _) => ExecMode::Simulated,
            (_, Some(w)) => ExecMode::Threaded(w.max(1)),
            (Some(ModeArg::Threaded), None) => ExecMode::threaded_from_env(default),
            (None, None) if std::env::var_os(WORKERS_ENV).is_some() => ExecMode::threaded_from_env(default),
            (None, None) => ExecMode::Simulated,
        }
    }
}

/// Runs a parsed command line, writing results to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Solve(args) => cmd_solve(cli, args, out),
        Command::Poisson(args) => cmd_poisson(cli, args, out),
        Command::Bench(args) => cmd_bench(cli, args, out),
    }
}

/// Parses `args`, runs, reports errors on stderr and returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Worst relative max-norm deviation of `xs` from dense elimination, with
/// the index of the offending right-hand side.
pub fn verify_solutions(a: &TridiagMatrix, series: &[Vec<f64>], xs: &[Vec<f64>]) -> crate::Result<(usize, f64)> {
    let mut worst = (0, 0.0f64);
    for (k, (f, x)) in series.iter().zip(xs).enumerate() {
        let r = dense_oracle_solve(a, f)?;
        let scale = r.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
        let err = x.iter().zip(&r).fold(0.0f64, |m, (u, v)| m.max((u - v).abs())) / scale;
        if err > worst.1 || err.is_nan() {
            worst = (k, err);
        }
    }
    Ok(worst)
}

fn cmd_solve(cli: &Cli, args: &SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (a, series) = match args.random_order {
        Some(n) => {
            let mut rng = rand::rngs::StdRng::seed_from_u64(cli.seed);
            let a = random_dominant(n, &mut rng);
            let series = (0..args.count).map(|_| random_vector(n, &mut rng)).collect();
            (a, series)
        }
        None => {
            let a = read_parsed(args.matrix.as_deref().unwrap(), TridiagMatrix::parse)?;
            let series = read_parsed(args.rhs.as_deref().unwrap(), parse_series)?;
            (a, series)
        }
    };
    let n = a.order();
    if let Some(bad) = series.iter().find(|f| f.len() != n) {
        return Err(CliError::Input(format!("right-hand sides have {} values, matrix order is {n}", bad.len())));
    }
    let mode = cli.exec_mode();
    let partition = match (&args.partition, args.pes) {
        (Some(spec), _) => Partition::parse(spec, n)?,
        (None, Some(p)) => Decomposition::new(n, p)?.partition(),
        (None, None) => Decomposition::new(n, mode.workers().min(n / 2).max(1))?.partition(),
    };
    let start = Instant::now();
    let executor = Executor::new(mode);
    let solver = prepare(&executor, &a, partition)?;
    let (xs, mut stats) = solve_series(&executor, &solver, &series)?;
    stats.wall_time = start.elapsed().as_secs_f64();

    let text = write_series(&xs);
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_err(path, e))?,
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::Input(e.to_string()))?,
    }
    let json = stats.to_json();
    match &args.stats {
        Some(path) => std::fs::write(path, json + "\n").map_err(|e| io_err(path, e))?,
        None => eprintln!("{json}"),
    }
    if cli.verify {
        let (index, error) = verify_solutions(&a, &series, &xs)?;
        if !(error <= VERIFY_TOLERANCE) {
            return Err(CliError::Verify { index, error });
        }
        eprintln!("verified: max relative error {error:.3e}");
    }
    Ok(())
}

fn cmd_poisson(cli: &Cli, args: &PoissonArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.series == 0 {
        return Err(CliError::Input("--series must be at least 1".into()));
    }
    let (f, exact) = model_problem(args.n, args.n)?;
    let config = SolverConfig { mode: cli.exec_mode(), pes: args.pes };
    let setup = Instant::now();
    let mut last = None;
    let mut iterations = None;
    let mut error: f64 = 0.0;
    let solve_time;
    match args.method {
        PoissonMethod::Fourier => {
            let solver = FourierSolver::for_grid(&f, config)?;
            let setup_time = setup.elapsed().as_secs_f64();
            let fs = vec![&f; args.series];
            let t = Instant::now();
            solver.solve_each(&fs, |_, u| {
                error = error.max(u.max_abs_diff(&exact));
                last = Some(u);
                Ok(())
            })?;
            solve_time = (setup_time, t.elapsed().as_secs_f64());
        }
        PoissonMethod::Adi => {
            let solver = AdiSolver::for_grid(&f, args.eps, config)?;
            let setup_time = setup.elapsed().as_secs_f64();
            let zero = Grid2D::zeros(args.n, args.n, f.h1(), f.h2())?;
            let stop = AdiStop::SuccessiveDifference(args.eps);
            let t = Instant::now();
            for _ in 0..args.series {
                let r = solver.solve(&f, &zero, &stop)?;
                error = error.max(r.solution.max_abs_diff(&exact));
                iterations = Some(r.iterations);
                last = Some(r.solution);
            }
            solve_time = (setup_time, t.elapsed().as_secs_f64());
        }
    }
    let w = |out: &mut dyn Write, s: String| out.write_all(s.as_bytes()).map_err(|e| CliError::Input(e.to_string()));
    let method = match args.method {
        PoissonMethod::Fourier => "fourier",
        PoissonMethod::Adi => "adi",
    };
    w(out, format!("method: {method}\nn: {}\nseries: {}\n", args.n, args.series))?;
    w(out, format!("max_error: {error:.6e}\n"))?;
    if let Some(it) = iterations {
        w(out, format!("iterations: {it}\n"))?;
    }
    w(out, format!("setup_time: {:.6e}\n", solve_time.0))?;
    w(out, format!("time_per_problem: {:.6e}\n", solve_time.1 / args.series as f64))?;
    if let (Some(path), Some(u)) = (&args.out, last) {
        std::fs::write(path, u.to_text()).map_err(|e| io_err(path, e))?;
    }
    Ok(())
}

fn cmd_bench(cli: &Cli, args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.sizes.is_empty() || args.np.is_empty() || args.np.contains(&0) {
        return Err(CliError::Input("--sizes and --np need nonzero entries".into()));
    }
    if args.series < 10 {
        return Err(CliError::Input(format!("--series must be at least 10, got {}", args.series)));
    }
    let plan = BenchPlan {
        method: args.method,
        sizes: args.sizes.clone(),
        workers: args.np.clone(),
        series: args.series,
        repetitions: args.repetitions.max(1),
        eps: args.eps,
        seed: cli.seed,
    };
    let records = run_bench(&plan, &mut *out).map_err(|e| match e {
        BenchFailure::Solver(e) => CliError::Solver(e),
        BenchFailure::Io(m) => CliError::Input(m),
    })?;
    if args.markdown {
        eprint!("{}", to_markdown(&records));
    }
    Ok(())
}
